#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dke/embedding.hpp"
#include "dke/persistence.hpp"

namespace dke {

/// A unit vector on the sphere in R^k x R^k: u weights real coordinate parts,
/// v imaginary parts.
struct Direction {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    int k() const { return static_cast<int>(u.size()); }
};

enum class TransformKind { IntrinsicPersistence, EmbeddedPersistence, IntrinsicEuler, EmbeddedEuler };
const char* transform_kind_name(TransformKind kind);

/// Per-direction diagrams (persistence kinds) or Euler curves (Euler kinds),
/// one entry per requested direction, plus the parameters that produced them.
struct TransformResult {
    TransformKind kind;
    int k = 0;
    std::vector<Direction> directions;
    std::vector<GradedDiagram> diagrams;
    std::vector<StepFunction> curves;
    double horizon = 0.0;  // Euler kinds: max height over all directions + 1
    std::string complex_summary;
};

/// Height of each point of the embedding in the given direction:
/// f(x_j) = sum_i u_i Re(alpha_i(x_j)) + v_i Im(alpha_i(x_j)), the Euclidean
/// height of (Re Phi_k(x_j), Im Phi_k(x_j)) along (u, v). Intrinsic and
/// embedded transforms share these values and differ only in the complex.
std::vector<double> height_function(const Embedding& emb, const Direction& dir);

/// count seeded i.i.d. directions: normalized Gaussian vectors in R^{2k}.
std::vector<Direction> direction_grid(int k, int count, std::uint64_t seed);

/// The embedded point set (Re Phi_k, Im Phi_k) in R^{2k} with duplicate rows
/// collapsed to their first occurrence, and the Rips complex on the collapsed
/// points under the Euclidean metric.
struct EmbeddedComplex {
    std::shared_ptr<const SimplicialComplex> complex;
    std::vector<int> representatives;  // original row index per collapsed vertex
    Eigen::MatrixXd points;            // collapsed points, one row each, 2k columns
};
EmbeddedComplex embedded_rips_complex(const Embedding& emb, double scale, int maxdim = 2,
                                      double collapse_tol = 0.0);

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b);

/// Per direction, the lower-star persistence of the height function on a
/// complex over the source points.
TransformResult ipkt(const Embedding& emb, std::shared_ptr<const SimplicialComplex> complex,
                     const std::vector<Direction>& dirs);

/// Per direction, the lower-star persistence of the same heights on the Rips
/// complex over the embedded (collapsed) point set.
TransformResult epkt(const Embedding& emb, const std::vector<Direction>& dirs,
                     double rips_scale, int maxdim = 2, double collapse_tol = 0.0);

/// Euler-curve versions of the two transforms above.
TransformResult iekt(const Embedding& emb, std::shared_ptr<const SimplicialComplex> complex,
                     const std::vector<Direction>& dirs);
TransformResult eekt(const Embedding& emb, const std::vector<Direction>& dirs,
                     double rips_scale, int maxdim = 2, double collapse_tol = 0.0);

enum class TransformDistance { Bottleneck, EulerLp };

/// Max over the (shared) direction list of the graded bottleneck distance
/// between diagrams, or of the L^p distance between Euler curves.
double transform_distance(const TransformResult& t1, const TransformResult& t2,
                          TransformDistance mode, double p = 1.0);

}  // namespace dke
