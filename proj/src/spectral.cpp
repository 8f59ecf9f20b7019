#include "dke/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dke/errors.hpp"

namespace dke {

const char* sign_rule_name(SignRule rule) {
    switch (rule) {
        case SignRule::MassAligned: return "mass_aligned";
        case SignRule::ConstantAligned: return "constant_aligned";
        case SignRule::LargestEntry: return "largest_entry";
    }
    return "?";
}

KernelMatrix build_operator(const MetricMeasureSpace& mms) {
    return build_operator(std::make_shared<const MetricMeasureSpace>(mms));
}

KernelMatrix build_operator(std::shared_ptr<const MetricMeasureSpace> mms) {
    KernelMatrix k;
    k.q = mms->measure;
    k.D = mms->dist * mms->measure.asDiagonal();
    k.source = std::move(mms);
    return k;
}

Spectrum eigendecompose(const KernelMatrix& kernel) {
    const int n = kernel.n();
    const Eigen::VectorXd sqrt_q = kernel.q.cwiseSqrt();
    const Eigen::VectorXd inv_sqrt_q = sqrt_q.cwiseInverse();

    // D = A Q with A symmetric; S = Q^{1/2} A Q^{1/2} = Q^{1/2} D Q^{-1/2}.
    Eigen::MatrixXd S = sqrt_q.asDiagonal() * kernel.D * inv_sqrt_q.asDiagonal();
    S = 0.5 * (S + S.transpose().eval());  // scrub rounding asymmetry

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigendecompose: symmetric eigensolver failed to converge");

    Spectrum spec;
    spec.measure = kernel.q;
    spec.source = kernel.source;

    // Order by decreasing |lambda|.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const Eigen::VectorXd& raw = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&raw](int a, int b) {
        return std::abs(raw(a)) > std::abs(raw(b));
    });

    spec.eigenvalues.resize(n);
    spec.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        spec.eigenvalues(i) = raw(order[i]);
        spec.vectors.col(i) = inv_sqrt_q.asDiagonal() * solver.eigenvectors().col(order[i]);
    }

    // Within runs of (numerically) tied |lambda|, list positive eigenvalues first.
    const double top = n > 0 ? std::abs(spec.eigenvalues(0)) : 0.0;
    const double tie_tol = 1e-12 * top;
    int run_start = 0;
    while (run_start < n) {
        int run_end = run_start + 1;
        while (run_end < n &&
               std::abs(std::abs(spec.eigenvalues(run_end - 1)) - std::abs(spec.eigenvalues(run_end))) <= tie_tol)
            ++run_end;
        if (run_end - run_start > 1) {
            std::vector<int> idx(run_end - run_start);
            std::iota(idx.begin(), idx.end(), run_start);
            std::stable_partition(idx.begin(), idx.end(),
                                  [&spec](int i) { return spec.eigenvalues(i) >= 0.0; });
            Eigen::VectorXd vals(run_end - run_start);
            Eigen::MatrixXd cols(n, run_end - run_start);
            for (int t = 0; t < run_end - run_start; ++t) {
                vals(t) = spec.eigenvalues(idx[t]);
                cols.col(t) = spec.vectors.col(idx[t]);
            }
            spec.eigenvalues.segment(run_start, run_end - run_start) = vals;
            spec.vectors.middleCols(run_start, run_end - run_start) = cols;
        }
        run_start = run_end;
    }

    // Near-degenerate |lambda| gaps; the sign and ordering conventions assume
    // simple spectra, so these are surfaced as warnings.
    const double warn_tol = 1e-10 * top;
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(std::abs(spec.eigenvalues(i)) - std::abs(spec.eigenvalues(i + 1))) < warn_tol)
            spec.tie_warnings.push_back(i);
    }

    return fix_signs(std::move(spec));
}

Spectrum fix_signs(Spectrum spectrum) {
    const int n = spectrum.n();
    const double tau = 1e-9;
    spectrum.sign_rules.assign(n, SignRule::MassAligned);
    for (int c = 0; c < n; ++c) {
        auto col = spectrum.vectors.col(c);
        const double mass = (spectrum.measure.array() * col.array() * col.array().abs()).sum();
        if (std::abs(mass) > tau) {
            spectrum.sign_rules[c] = SignRule::MassAligned;
            if (mass < 0.0) col = -col;
            continue;
        }
        const double entry_sum = col.sum();
        if (std::abs(entry_sum) > tau) {
            spectrum.sign_rules[c] = SignRule::ConstantAligned;
            if (entry_sum < 0.0) col = -col;
            continue;
        }
        spectrum.sign_rules[c] = SignRule::LargestEntry;
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(col(i)) > std::abs(col(best))) best = i;
        if (col(best) < 0.0) col = -col;
    }
    return spectrum;
}

double top_eigenvalue_bound(const MetricMeasureSpace& mms) {
    return mms.diam() * mms.vol();
}

}  // namespace dke
