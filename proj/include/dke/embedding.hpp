#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "dke/spectral.hpp"

namespace dke {

/// The truncated distance kernel embedding: row i holds the k coordinates
/// alpha_j(x_i) = sqrt(lambda_j) e_j(i), taking the square root of a negative
/// eigenvalue with positive imaginary part. Each column is therefore purely
/// real (lambda > 0) or purely imaginary (lambda < 0); eigenvalues at or below
/// the spectrum's zero threshold give zero columns.
struct Embedding {
    int k = 0;
    Eigen::MatrixXcd coords;      // n x k
    Eigen::VectorXd eigenvalues;  // first k, as ordered in the spectrum
    std::shared_ptr<const MetricMeasureSpace> source;

    int n() const { return static_cast<int>(coords.rows()); }
};

/// A = sup over point pairs of the distance reconstruction error,
/// B = max over points of the embedding-vector 2-norm.
struct ErrorSummary {
    double sup_error;
    double max_embed_norm;
};

/// Both printed variants of the per-point embedding-norm bound. The
/// `as_printed` form sqrt(|lambda_1|) / mu(x) fails on small masses (the
/// two-point space with masses (1,4) already exceeds it at the heavy point);
/// the row-norm route sqrt(|lambda_1|) / sqrt(mu(x)) is the variant the
/// property tests assert.
struct EmbedNormBound {
    double as_printed;
    double via_row_norm;
};

/// Per-index eigenvalue-gap and eigenvector-angle bounds under a symmetric
/// perturbation of spectral norm eps.
struct WeylDkBound {
    double eigengap;   // bound on |lambda_i^2 - nu_i^2|
    double sin_theta;  // bound on the sine of the angle between eigenlines
};

/// Analytic worst-case bounds from ball-growth parameters:
/// sup_error_bound dominates the measured A, embed_norm_bound the measured B.
struct AnalyticBounds {
    double sup_error_bound;
    double embed_norm_bound;
};

Embedding embed(const Spectrum& spectrum, int k);

/// Sum of componentwise products, no conjugation. Symmetric, not a dot product.
std::complex<double> bilinear(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);

/// Real part of the bilinear pairing of rows i and j. The imaginary part is
/// asserted to be below 1e-9 (columns are axis-aligned, so products are real
/// up to rounding) and discarded.
double reconstruct_distance(const Embedding& emb, int i, int j);

/// Requires the embedding to carry its source space.
ErrorSummary error_summary(const Embedding& emb);

/// Per-pair reconstruction errors |[Phi(x_i), Phi(x_j)] - d(x_i, x_j)|.
Eigen::MatrixXd error_matrix(const Embedding& emb);

/// |lambda_{k+1}| / sqrt(mu_i mu_j); zero when k >= n.
double trunc_error_bound(const Spectrum& spectrum, int k, int i, int j);

EmbedNormBound embed_norm_bound(const Spectrum& spectrum, int i);

/// Symmetric Hausdorff distance between the two embeddings' row sets under
/// the complex l2 norm, by exhaustive scan (capped at 1e7 row pairs).
double hausdorff_L2(const Embedding& a, const Embedding& b);

/// 2 eps min(B_X, B_Y) + A_X + A_Y + eps^2 with eps = hausdorff_L2(X, Y):
/// an upper bound for the Gromov-Hausdorff distance of the source spaces.
double gh_bound_general(const Embedding& x, const Embedding& y);

/// 2 eps min(sqrt|lambda_1|, sqrt|nu_1|)/theta + eps^2
/// + (|lambda_{k+1}| + |nu_{k+1}|)/theta, with theta the smallest atom mass
/// over both spaces; eigenvalues past the end count as zero.
double gh_bound_finite(const Spectrum& x, const Spectrum& y, int k, double eps);

/// The k-dimensional embedding stability bound at matching distance eps:
///   sqrt(k) (4 sqrt2 (eps+|tau_1|)/Delta_k sqrt|tau_1|) eps
/// + sqrt(k) (2 sqrt2 sqrt((eps+|tau_1|)/|tau_k|)) sqrt(eps),
/// with |tau_1| = min(|lambda_1|, |nu_1|), |tau_k| = max(|lambda_k|, |nu_k|),
/// and Delta_k = min_{i != j <= k} |lambda_i^2 - nu_j^2| (empty set => +inf,
/// so the first term vanishes for k = 1). Requires the first k eigenvalues of
/// both spectra nonzero with distinct absolute values.
double stability_bound(const Spectrum& x, const Spectrum& y, int k, double eps);

/// Per-index perturbation bounds for i = 1..k, where eps is a caller-supplied
/// spectral-norm bound on the difference of the two kernel matrices (twice a
/// point-matching bottleneck distance, for c-uniform measures):
///   eigengap_i  = eps (eps + 2 |lambda_1|)
///   sin_theta_i = eigengap_i / Delta_i, Delta_i = min_{j != i, j <= k} |lambda_i^2 - nu_j^2|
/// (empty set => +inf, so sin_theta_1 = 0 at k = 1).
std::vector<WeylDkBound> weyl_dk_bounds(const Spectrum& x, const Spectrum& y, int k, double eps);

/// Minimum over bijections of the maximum pair distance, given the m x m
/// matrix of cross distances; binary search over the sorted distances with a
/// bipartite-matching feasibility test.
double bottleneck_matching(const Eigen::MatrixXd& cross);

AnalyticBounds analytic_bounds(const Spectrum& spectrum, const AbStandardness& ab, int k);

/// 1/(sqrt(a) r^{b/2}) + (r/|lambda_i|) sqrt(vol): sup-norm bound for the i-th
/// eigenvector when (a, b, r) are valid ball-growth parameters for the space.
double eigenfunction_sup_bound(const Spectrum& spectrum, const AbStandardness& ab, int i);

}  // namespace dke
