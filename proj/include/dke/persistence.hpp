#pragma once

#include <Eigen/Dense>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "dke/mmspace.hpp"

namespace dke {

/// A finite simplicial complex on vertex set {0, ..., vertices-1}: simplices
/// are sorted vertex tuples, closed under faces, deduplicated, and kept in a
/// canonical (dimension, lexicographic) order. Dimension is capped at 3.
struct SimplicialComplex {
    int vertices = 0;
    std::vector<std::vector<int>> simplices;

    int dim() const;
    std::size_t size() const { return simplices.size(); }
};

/// Canonicalizes and validates: closes under faces, dedupes, checks indices.
SimplicialComplex make_complex(int vertices, std::vector<std::vector<int>> simplices);

/// All simplices of dimension <= maxdim whose vertices lie pairwise within
/// `scale`. Refuses to build more than 1e7 simplices.
SimplicialComplex build_rips(const Eigen::MatrixXd& dist, double scale, int maxdim);
SimplicialComplex build_rips(const MetricMeasureSpace& mms, double scale, int maxdim);

/// A lower-star filtration: each simplex enters at the maximum of its vertex
/// values, ordered by (value, dimension, lexicographic) — every face precedes
/// its cofaces.
struct Filtration {
    std::shared_ptr<const SimplicialComplex> complex;
    std::vector<double> values;  // per simplex, aligned with complex->simplices
    std::vector<int> order;      // simplex indices in filtration order
};

Filtration lower_star(std::shared_ptr<const SimplicialComplex> complex,
                      const std::vector<double>& vertex_values);
Filtration lower_star(const SimplicialComplex& complex, const std::vector<double>& vertex_values);

struct Bar {
    int dim;
    double birth;
    double death;  // +inf for essential classes
    bool is_infinite() const { return death == std::numeric_limits<double>::infinity(); }
    double persistence() const { return is_infinite() ? death : (death - birth) / 2.0; }
};

/// Persistence diagrams across all homological degrees, zero-length bars dropped.
struct GradedDiagram {
    std::vector<Bar> bars;
    int max_dim() const;
    std::vector<Bar> bars_of_dim(int dim) const;
};

/// Boundary-matrix reduction over Z/2 in filtration order. Bars of degree
/// above maxdim are not reported.
GradedDiagram compute_persistence(const Filtration& filtration,
                                  int maxdim = std::numeric_limits<int>::max());

/// l-infinity bottleneck distance with diagonal matching in one degree, by
/// binary search over candidate radii with a bipartite-matching feasibility
/// test. Essential bars match only essential bars; mismatched essential
/// counts give +inf (a value, not an error).
double bottleneck_distance(const GradedDiagram& d1, const GradedDiagram& d2, int dim);

/// Max of bottleneck_distance over all degrees present in either diagram.
double graded_bottleneck(const GradedDiagram& d1, const GradedDiagram& d2);

/// Piecewise-constant, compactly supported: value values[i] on
/// [breakpoints[i], breakpoints[i+1]) and zero elsewhere.
struct StepFunction {
    std::vector<double> breakpoints;  // strictly increasing, size values.size() + 1
    std::vector<double> values;
    double at(double t) const;
    bool empty() const { return values.empty(); }
};

/// Number of degree-dim bars alive at each point; infinite bars are truncated
/// at the horizon, which must not cut a finite bar short.
StepFunction betti_curve(const GradedDiagram& diagram, int dim, double horizon);

/// Alternating sum over degrees of the Betti curves.
StepFunction euler_curve(const GradedDiagram& diagram, double horizon);

/// Exact integral of |s1 - s2|^p over the merged breakpoints, to the 1/p power.
double lp_distance(const StepFunction& s1, const StepFunction& s2, double p);

/// Sum over finite bars with persistence (death-birth)/2 strictly above t of
/// persistence^q, across all degrees. Infinite bars carry no finite
/// persistence and are excluded.
double total_persistence(const GradedDiagram& diagram, double q, double t);

}  // namespace dke
