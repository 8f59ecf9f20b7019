#include "dke/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dke/errors.hpp"

namespace dke {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_index(int i, int n, const char* who) {
    if (i < 0 || i >= n) throw config_error(std::string(who) + ": index out of range");
}
}  // namespace

Embedding embed(const Spectrum& spectrum, int k) {
    const int n = spectrum.n();
    if (k < 1 || k > n) throw config_error("embed: k must satisfy 1 <= k <= n");
    Embedding emb;
    emb.k = k;
    emb.eigenvalues = spectrum.eigenvalues.head(k);
    emb.source = spectrum.source;
    emb.coords.setZero(n, k);
    const double zero_tol = spectrum.zero_threshold();
    for (int j = 0; j < k; ++j) {
        const double lam = spectrum.eigenvalues(j);
        if (std::abs(lam) <= zero_tol) continue;  // zero column
        if (lam > 0.0) {
            emb.coords.col(j) = (std::sqrt(lam) * spectrum.vectors.col(j)).cast<std::complex<double>>();
        } else {
            emb.coords.col(j) = std::complex<double>(0.0, std::sqrt(-lam)) *
                                spectrum.vectors.col(j).cast<std::complex<double>>();
        }
    }
    return emb;
}

std::complex<double> bilinear(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
    if (v.size() != w.size()) throw config_error("bilinear: length mismatch");
    return v.cwiseProduct(w).sum();
}

double reconstruct_distance(const Embedding& emb, int i, int j) {
    check_index(i, emb.n(), "reconstruct_distance");
    check_index(j, emb.n(), "reconstruct_distance");
    const std::complex<double> val = emb.coords.row(i).cwiseProduct(emb.coords.row(j)).sum();
    if (std::abs(val.imag()) > 1e-9)
        throw numeric_error("reconstruct_distance: non-negligible imaginary residue");
    return val.real();
}

Eigen::MatrixXd error_matrix(const Embedding& emb) {
    if (!emb.source) throw config_error("error_matrix: embedding carries no source space");
    const int n = emb.n();
    // [Phi(x_i), Phi(x_j)] = sum_l lambda_l e_l(i) e_l(j): with axis-aligned
    // columns the unconjugated product matrix is real.
    Eigen::MatrixXcd gram = emb.coords * emb.coords.transpose();
    Eigen::MatrixXd err(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            err(i, j) = std::abs(gram(i, j).real() - emb.source->dist(i, j));
    return err;
}

ErrorSummary error_summary(const Embedding& emb) {
    ErrorSummary s{};
    s.sup_error = error_matrix(emb).maxCoeff();
    s.max_embed_norm = emb.coords.rowwise().norm().maxCoeff();
    return s;
}

double trunc_error_bound(const Spectrum& spectrum, int k, int i, int j) {
    const int n = spectrum.n();
    check_index(i, n, "trunc_error_bound");
    check_index(j, n, "trunc_error_bound");
    if (k < 0) throw config_error("trunc_error_bound: k must be nonnegative");
    if (k >= n) return 0.0;
    return std::abs(spectrum.eigenvalues(k)) /
           std::sqrt(spectrum.measure(i) * spectrum.measure(j));
}

EmbedNormBound embed_norm_bound(const Spectrum& spectrum, int i) {
    check_index(i, spectrum.n(), "embed_norm_bound");
    const double top = spectrum.n() > 0 ? std::sqrt(std::abs(spectrum.eigenvalues(0))) : 0.0;
    const double mu = spectrum.measure(i);
    return EmbedNormBound{top / mu, top / std::sqrt(mu)};
}

double hausdorff_L2(const Embedding& a, const Embedding& b) {
    if (a.k != b.k) throw config_error("hausdorff_L2: embeddings have different k");
    const long pairs = static_cast<long>(a.n()) * b.n();
    if (pairs > 10'000'000L)
        throw config_error("hausdorff_L2: more than 1e7 row pairs; exhaustive scan refused");
    auto directed = [](const Eigen::MatrixXcd& from, const Eigen::MatrixXcd& to) {
        double worst = 0.0;
        for (int i = 0; i < from.rows(); ++i) {
            double best = kInf;
            for (int j = 0; j < to.rows(); ++j)
                best = std::min(best, (from.row(i) - to.row(j)).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a.coords, b.coords), directed(b.coords, a.coords));
}

double gh_bound_general(const Embedding& x, const Embedding& y) {
    const double eps = hausdorff_L2(x, y);
    const ErrorSummary ex = error_summary(x);
    const ErrorSummary ey = error_summary(y);
    return 2.0 * eps * std::min(ex.max_embed_norm, ey.max_embed_norm) +
           ex.sup_error + ey.sup_error + eps * eps;
}

double gh_bound_finite(const Spectrum& x, const Spectrum& y, int k, double eps) {
    if (k < 1 || k > std::min(x.n(), y.n()))
        throw config_error("gh_bound_finite: k must satisfy 1 <= k <= min(n_X, n_Y)");
    if (eps < 0.0) throw config_error("gh_bound_finite: eps must be nonnegative");
    const double theta = std::min(x.measure.minCoeff(), y.measure.minCoeff());
    const double lam1 = std::abs(x.eigenvalues(0));
    const double nu1 = std::abs(y.eigenvalues(0));
    const double lam_tail = k < x.n() ? std::abs(x.eigenvalues(k)) : 0.0;
    const double nu_tail = k < y.n() ? std::abs(y.eigenvalues(k)) : 0.0;
    return 2.0 * eps * std::min(std::sqrt(lam1), std::sqrt(nu1)) / theta + eps * eps +
           (lam_tail + nu_tail) / theta;
}

namespace {

/// Shared hypothesis checks for the stability evaluators: the first k
/// eigenvalues of both spectra must be nonzero with distinct absolute values.
void require_simple_top_k(const Spectrum& x, const Spectrum& y, int k, const char* who) {
    if (k < 1 || k > std::min(x.n(), y.n()))
        throw config_error(std::string(who) + ": k must satisfy 1 <= k <= min(n_X, n_Y)");
    for (const Spectrum* s : {&x, &y}) {
        if (std::abs(s->eigenvalues(k - 1)) <= s->zero_threshold())
            throw hypothesis_error(std::string(who) +
                                   ": requires the first k eigenvalues to be nonzero");
        if (s->has_tie_within(k))
            throw hypothesis_error(std::string(who) +
                                   ": requires the first k eigenvalues to have distinct absolute values "
                                   "(near-degenerate pair flagged by the eigendecomposition)");
    }
}

/// min over {(i, j) : i, j <= k, i != j} of |lambda_i^2 - nu_j^2|; +inf when empty.
double cross_separation(const Spectrum& x, const Spectrum& y, int k) {
    double sep = kInf;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const double li = x.eigenvalues(i), nj = y.eigenvalues(j);
            sep = std::min(sep, std::abs(li * li - nj * nj));
        }
    return sep;
}

}  // namespace

double stability_bound(const Spectrum& x, const Spectrum& y, int k, double eps) {
    require_simple_top_k(x, y, k, "stability_bound");
    if (eps < 0.0) throw config_error("stability_bound: eps must be nonnegative");
    const double tau1 = std::min(std::abs(x.eigenvalues(0)), std::abs(y.eigenvalues(0)));
    const double tauk = std::max(std::abs(x.eigenvalues(k - 1)), std::abs(y.eigenvalues(k - 1)));
    if (tauk == 0.0) throw hypothesis_error("stability_bound: |tau_k| vanishes");
    const double delta = cross_separation(x, y, k);
    if (delta == 0.0) throw hypothesis_error("stability_bound: zero spectral separation Delta_k");
    const double sqrt_k = std::sqrt(static_cast<double>(k));
    const double term1 =
        delta == kInf ? 0.0
                      : sqrt_k * (4.0 * std::sqrt(2.0) * (eps + tau1) / delta * std::sqrt(tau1)) * eps;
    const double term2 =
        sqrt_k * (2.0 * std::sqrt(2.0) * std::sqrt((eps + tau1) / tauk)) * std::sqrt(eps);
    return term1 + term2;
}

std::vector<WeylDkBound> weyl_dk_bounds(const Spectrum& x, const Spectrum& y, int k, double eps) {
    require_simple_top_k(x, y, k, "weyl_dk_bounds");
    if (eps < 0.0) throw config_error("weyl_dk_bounds: eps must be nonnegative");
    const double lam1 = std::abs(x.eigenvalues(0));
    const double gap = eps * (eps + 2.0 * lam1);
    std::vector<WeylDkBound> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
        double delta_i = kInf;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            const double li = x.eigenvalues(i), nj = y.eigenvalues(j);
            delta_i = std::min(delta_i, std::abs(li * li - nj * nj));
        }
        if (delta_i == 0.0)
            throw hypothesis_error("weyl_dk_bounds: zero separation Delta_i at index " + std::to_string(i + 1));
        out.push_back({gap, delta_i == kInf ? 0.0 : gap / delta_i});
    }
    return out;
}

namespace {

/// Kuhn's augmenting-path bipartite matching restricted to edges with
/// cross(i, j) <= r. Returns true iff a perfect matching exists.
bool perfect_matching_under(const Eigen::MatrixXd& cross, double r) {
    const int m = static_cast<int>(cross.rows());
    std::vector<int> match_right(m, -1);
    std::vector<char> visited(m);
    auto augment = [&](auto&& self, int left) -> bool {
        for (int right = 0; right < m; ++right) {
            if (visited[right] || cross(left, right) > r) continue;
            visited[right] = 1;
            if (match_right[right] < 0 || self(self, match_right[right])) {
                match_right[right] = left;
                return true;
            }
        }
        return false;
    };
    for (int left = 0; left < m; ++left) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, left)) return false;
    }
    return true;
}

}  // namespace

double bottleneck_matching(const Eigen::MatrixXd& cross) {
    if (cross.rows() != cross.cols())
        throw config_error("bottleneck_matching: point sets must have equal cardinality");
    const int m = static_cast<int>(cross.rows());
    if (m == 0) return 0.0;
    std::vector<double> candidates(cross.data(), cross.data() + cross.size());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Smallest candidate radius admitting a perfect matching.
    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (perfect_matching_under(cross, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

AnalyticBounds analytic_bounds(const Spectrum& spectrum, const AbStandardness& ab, int k) {
    const int n = spectrum.n();
    if (k < 1 || k > n) throw config_error("analytic_bounds: k must satisfy 1 <= k <= n");
    if (!(ab.a > 0.0 && ab.b >= 0.0 && ab.r > 0.0))
        throw config_error("analytic_bounds: ball-growth parameters must be positive");
    const double vol = spectrum.measure.sum();
    const double root_a_rb2 = std::sqrt(ab.a) * std::pow(ab.r, ab.b / 2.0);
    const double zero_tol = spectrum.zero_threshold();

    double norm_sq = 0.0;
    double lipschitz_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double lam = std::abs(spectrum.eigenvalues(i));
        if (lam <= zero_tol)
            throw hypothesis_error("analytic_bounds: zero eigenvalue among the first k");
        const double term = std::sqrt(lam) / root_a_rb2 + ab.r * std::sqrt(vol) / std::sqrt(lam);
        norm_sq += term * term;
        lipschitz_sum += std::sqrt(2.0) * (std::sqrt(vol) / root_a_rb2 + ab.r * vol / lam);
    }
    const double big_k = std::sqrt(2.0) + lipschitz_sum;

    double tail_sq = 0.0;
    for (int i = k; i < n; ++i) tail_sq += spectrum.eigenvalues(i) * spectrum.eigenvalues(i);

    AnalyticBounds out{};
    out.embed_norm_bound = std::sqrt(norm_sq);
    out.sup_error_bound = std::sqrt(tail_sq) / (ab.a * std::pow(ab.r, ab.b)) + ab.r * big_k;
    return out;
}

double eigenfunction_sup_bound(const Spectrum& spectrum, const AbStandardness& ab, int i) {
    check_index(i, spectrum.n(), "eigenfunction_sup_bound");
    if (!(ab.a > 0.0 && ab.b >= 0.0 && ab.r > 0.0))
        throw config_error("eigenfunction_sup_bound: ball-growth parameters must be positive");
    const double lam = std::abs(spectrum.eigenvalues(i));
    if (lam <= spectrum.zero_threshold())
        throw hypothesis_error("eigenfunction_sup_bound: zero eigenvalue");
    const double vol = spectrum.measure.sum();
    return 1.0 / (std::sqrt(ab.a) * std::pow(ab.r, ab.b / 2.0)) + ab.r / lam * std::sqrt(vol);
}

}  // namespace dke
