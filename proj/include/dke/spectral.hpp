#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "dke/mmspace.hpp"

namespace dke {

/// The finite distance kernel operator: D = A * Q with A the symmetric
/// distance matrix and Q the diagonal of point masses, i.e.
/// D(i, j) = d(x_i, x_j) * measure(j). D is self-adjoint for the Q-weighted
/// inner product <v, w>_Q = sum_i v_i w_i measure(i).
struct KernelMatrix {
    Eigen::MatrixXd D;
    Eigen::VectorXd q;
    std::shared_ptr<const MetricMeasureSpace> source;

    int n() const { return static_cast<int>(q.size()); }
};

/// Which rule fixed the sign of an eigenvector column.
enum class SignRule : unsigned char {
    MassAligned,      // <e, |e|>_Q > 0
    ConstantAligned,  // entry sum > 0 (alignment against the constant function)
    LargestEntry,     // first entry of largest magnitude made positive
};

const char* sign_rule_name(SignRule rule);

/// Full eigendecomposition of a kernel matrix. Eigenvalues are ordered by
/// decreasing absolute value, the positive member of a +/- pair first; the
/// columns of `vectors` are the matching Q-orthonormal eigenvectors with
/// signs fixed deterministically (see fix_signs).
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd vectors;  // column i is the eigenvector of eigenvalues(i)
    Eigen::VectorXd measure;
    std::vector<SignRule> sign_rules;
    /// Positions i where ||lambda_i| - |lambda_{i+1}|| < 1e-10 |lambda_1|:
    /// the eigenvalue ordering and sign conventions assume simple spectra, so
    /// downstream evaluators that need distinct absolute values reject these.
    std::vector<int> tie_warnings;
    std::shared_ptr<const MetricMeasureSpace> source;

    int n() const { return static_cast<int>(eigenvalues.size()); }

    /// Eigenvalues with |lambda| at or below this are treated as zero.
    double zero_threshold() const {
        return n() == 0 ? 0.0 : 1e-12 * std::abs(eigenvalues(0));
    }

    /// True if a near-degenerate |lambda| tie occurs among the first k eigenvalues.
    bool has_tie_within(int k) const {
        for (int i : tie_warnings)
            if (i < k - 1) return true;
        return false;
    }
};

KernelMatrix build_operator(const MetricMeasureSpace& mms);
KernelMatrix build_operator(std::shared_ptr<const MetricMeasureSpace> mms);

/// Eigendecomposes via the symmetric similarity S = Q^{1/2} A Q^{1/2}, whose
/// orthonormal eigenvectors w map to Q-orthonormal eigenvectors e = Q^{-1/2} w
/// of D. Guarantees a real spectrum and Q-orthonormality by construction.
Spectrum eigendecompose(const KernelMatrix& kernel);

/// Deterministic sign convention, applied column by column:
///  1. if <e, |e|>_Q is decisively nonzero (|.| > 1e-9), orient it positive;
///  2. otherwise, if the plain entry sum is decisively nonzero, orient it positive;
///  3. otherwise make the first entry of largest magnitude positive.
/// Records which rule fired per column. Idempotent.
Spectrum fix_signs(Spectrum spectrum);

/// diam(X) * vol(X), an upper bound for |lambda_1|.
double top_eigenvalue_bound(const MetricMeasureSpace& mms);

}  // namespace dke
