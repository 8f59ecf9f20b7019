#include "dke/mmspace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "dke/rng.hpp"

namespace dke {

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << issues.size() << " metric-measure invariant violation(s)";
    for (const auto& is : issues) {
        os << "; ";
        switch (is.kind) {
            case ValidationIssue::Kind::NonSquare: os << "non-square distance matrix"; break;
            case ValidationIssue::Kind::SizeMismatch: os << "measure length does not match matrix size"; break;
            case ValidationIssue::Kind::NegativeEntry: os << "negative distance at (" << is.i << "," << is.j << ")"; break;
            case ValidationIssue::Kind::NonzeroDiagonal: os << "nonzero diagonal at (" << is.i << "," << is.i << ")"; break;
            case ValidationIssue::Kind::Asymmetry: os << "asymmetric entries at (" << is.i << "," << is.j << ")"; break;
            case ValidationIssue::Kind::TriangleViolation:
                os << "triangle inequality fails: d(" << is.i << "," << is.j << ") > d(" << is.i << "," << is.l
                   << ") + d(" << is.l << "," << is.j << ")";
                break;
            case ValidationIssue::Kind::NonpositiveMeasure: os << "nonpositive measure at " << is.i; break;
        }
        if (!is.detail.empty()) os << " [" << is.detail << "]";
    }
    return os.str();
}

ValidationReport validate_metric(const MetricMeasureSpace& mms, TriangleCheck triangle) {
    ValidationReport rep;
    const auto& d = mms.dist;
    const int n = static_cast<int>(d.rows());

    if (d.rows() != d.cols()) {
        rep.issues.push_back({ValidationIssue::Kind::NonSquare, -1, -1, -1,
                              std::to_string(d.rows()) + "x" + std::to_string(d.cols())});
        return rep;
    }
    if (mms.measure.size() != n) {
        rep.issues.push_back({ValidationIssue::Kind::SizeMismatch, -1, -1, -1,
                              "measure " + std::to_string(mms.measure.size()) + ", n " + std::to_string(n)});
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        if (!(mms.measure(i) > 0.0)) {
            rep.issues.push_back({ValidationIssue::Kind::NonpositiveMeasure, i, -1, -1,
                                  std::to_string(mms.measure(i))});
        }
    }
    for (int i = 0; i < n; ++i) {
        if (d(i, i) != 0.0) {
            rep.issues.push_back({ValidationIssue::Kind::NonzeroDiagonal, i, -1, -1, std::to_string(d(i, i))});
        }
        for (int j = i + 1; j < n; ++j) {
            if (d(i, j) < 0.0 || d(j, i) < 0.0) {
                rep.issues.push_back({ValidationIssue::Kind::NegativeEntry, i, j, -1, {}});
            }
            if (d(i, j) != d(j, i)) {
                rep.issues.push_back({ValidationIssue::Kind::Asymmetry, i, j, -1,
                                      std::to_string(d(i, j)) + " vs " + std::to_string(d(j, i))});
            }
        }
    }

    const bool run_triangle = triangle == TriangleCheck::Always ||
                              (triangle == TriangleCheck::Auto && n <= 2000);
    if (run_triangle && rep.ok()) {
        const double tol = 1e-9 * mms.diam();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double dij = d(i, j);
                for (int l = 0; l < n; ++l) {
                    if (dij > d(i, l) + d(l, j) + tol) {
                        rep.issues.push_back({ValidationIssue::Kind::TriangleViolation, i, j, l, {}});
                        break;  // one witness per pair is enough
                    }
                }
            }
        }
    }
    return rep;
}

MetricMeasureSpace make_mms(const Eigen::MatrixXd& dist, const Eigen::VectorXd& measure,
                            std::string label, TriangleCheck triangle) {
    MetricMeasureSpace mms{dist, measure, std::move(label)};
    ValidationReport rep = validate_metric(mms, triangle);
    if (!rep.ok()) throw validation_error(std::move(rep));
    return mms;
}

namespace {

/// n unit vectors in R^d, i.i.d. uniform (normalized Gaussians), rows of the result.
Eigen::MatrixXd unit_vectors(int n, int d, Rng& rng) {
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n; ++i) {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int c = 0; c < d; ++c) {
                pts(i, c) = rng.gaussian();
                norm2 += pts(i, c) * pts(i, c);
            }
        } while (norm2 == 0.0);
        pts.row(i) /= std::sqrt(norm2);
    }
    return pts;
}

MetricMeasureSpace from_dist(Eigen::MatrixXd d, int n, std::string label) {
    MetricMeasureSpace mms;
    mms.dist = std::move(d);
    mms.measure = Eigen::VectorXd::Constant(n, 1.0 / n);
    mms.label = std::move(label);
    return mms;
}

}  // namespace

MetricMeasureSpace sample_sphere(int n, int dim, MetricMode mode, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_sphere: n must be >= 1");
    if (dim != 2 && dim != 3) throw config_error("sample_sphere: dim must be 2 or 3");
    Rng rng(seed);
    const Eigen::MatrixXd pts = unit_vectors(n, dim + 1, rng);
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double v;
            if (mode == MetricMode::Geodesic) {
                const double dot = std::clamp(pts.row(i).dot(pts.row(j)), -1.0, 1.0);
                v = std::acos(dot);
            } else {
                v = (pts.row(i) - pts.row(j)).norm();
            }
            d(i, j) = d(j, i) = v;
        }
    }
    std::string label = "sphere" + std::to_string(dim) +
                        (mode == MetricMode::Geodesic ? "-geodesic" : "-chordal") +
                        "-n" + std::to_string(n) + "-s" + std::to_string(seed);
    return from_dist(std::move(d), n, std::move(label));
}

MetricMeasureSpace sample_torus(int n, double R, double r, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_torus: n must be >= 1");
    if (!(R > r && r > 0.0)) throw config_error("sample_torus: need R > r > 0");
    Rng rng(seed);
    Eigen::MatrixXd pts(n, 3);
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < n; ++i) {
        // Minor angle rejection-sampled with density proportional to R + r cos(theta),
        // the surface-area element of the embedded torus.
        double theta;
        for (;;) {
            theta = rng.uniform(0.0, two_pi);
            if (rng.uniform01() * (R + r) <= R + r * std::cos(theta)) break;
        }
        const double phi = rng.uniform(0.0, two_pi);
        const double ring = R + r * std::cos(theta);
        pts(i, 0) = ring * std::cos(phi);
        pts(i, 1) = ring * std::sin(phi);
        pts(i, 2) = r * std::sin(theta);
    }
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (pts.row(i) - pts.row(j)).norm();
    }
    std::string label = "torus-R" + std::to_string(R) + "-r" + std::to_string(r) +
                        "-n" + std::to_string(n) + "-s" + std::to_string(seed);
    return from_dist(std::move(d), n, std::move(label));
}

Eigen::MatrixXd sample_unit_sphere_points(int n, int d, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_unit_sphere_points: n must be >= 1");
    if (d < 1) throw config_error("sample_unit_sphere_points: dimension must be >= 1");
    Rng rng(seed);
    return unit_vectors(n, d + 1, rng);
}

namespace {

/// Rotations of the cyclic group action on C^2 as unit complex pairs.
void lens_rotations(int p, int q, std::vector<std::complex<double>>& zeta_m,
                    std::vector<std::complex<double>>& zeta_qm) {
    const double two_pi = 6.283185307179586476925286766559;
    zeta_m.resize(p);
    zeta_qm.resize(p);
    for (int m = 0; m < p; ++m) {
        zeta_m[m] = std::polar(1.0, two_pi * m / p);
        zeta_qm[m] = std::polar(1.0, two_pi * ((static_cast<long long>(q) * m) % p) / p);
    }
}

}  // namespace

double lens_quotient_distance(const Eigen::Vector4d& x, const Eigen::Vector4d& y, int p, int q) {
    if (p < 1) throw config_error("lens_quotient_distance: p must be >= 1");
    if (std::gcd(p, q) != 1) throw config_error("lens_quotient_distance: p and q must be coprime");
    using cd = std::complex<double>;
    std::vector<cd> zeta_m, zeta_qm;
    lens_rotations(p, q, zeta_m, zeta_qm);
    const cd zx(x(0), x(1)), wx(x(2), x(3));
    const cd zy(y(0), y(1)), wy(y(2), y(3));
    double best_dot = -1.0;
    for (int m = 0; m < p; ++m) {
        // Re<x, g^m y> equals the R^4 dot product of x with the rotated y.
        const double dot = std::real(zx * std::conj(zeta_m[m] * zy)) +
                           std::real(wx * std::conj(zeta_qm[m] * wy));
        best_dot = std::max(best_dot, dot);
    }
    return std::acos(std::clamp(best_dot, -1.0, 1.0));
}

MetricMeasureSpace sample_lens(int n, int p, int q, std::uint64_t seed) {
    if (n < 1) throw config_error("sample_lens: n must be >= 1");
    if (p < 1) throw config_error("sample_lens: p must be >= 1");
    if (std::gcd(p, q) != 1) throw config_error("sample_lens: p and q must be coprime");
    Rng rng(seed);
    const Eigen::MatrixXd pts = unit_vectors(n, 4, rng);  // same stream as sample_sphere(dim=3)

    using cd = std::complex<double>;
    std::vector<cd> z(n), w(n);
    for (int i = 0; i < n; ++i) {
        z[i] = cd(pts(i, 0), pts(i, 1));
        w[i] = cd(pts(i, 2), pts(i, 3));
    }
    std::vector<cd> zeta_m, zeta_qm;
    lens_rotations(p, q, zeta_m, zeta_qm);

    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double best_dot = -1.0;
            for (int m = 0; m < p; ++m) {
                const double dot = std::real(z[i] * std::conj(zeta_m[m] * z[j])) +
                                   std::real(w[i] * std::conj(zeta_qm[m] * w[j]));
                best_dot = std::max(best_dot, dot);
            }
            d(i, j) = d(j, i) = std::acos(std::clamp(best_dot, -1.0, 1.0));
        }
    }
    std::string label = "lens-" + std::to_string(p) + "-" + std::to_string(q) +
                        "-n" + std::to_string(n) + "-s" + std::to_string(seed);
    return from_dist(std::move(d), n, std::move(label));
}

AbStandardness estimate_ab(const MetricMeasureSpace& mms, const std::vector<double>& radii) {
    if (radii.empty()) throw config_error("estimate_ab: radii must be nonempty");
    const double diam = mms.diam();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw config_error("estimate_ab: radii must be positive");
        if (radii[i] > diam && diam > 0.0) throw config_error("estimate_ab: radius exceeds diameter");
        if (i > 0 && radii[i] <= radii[i - 1]) throw config_error("estimate_ab: radii must be strictly increasing");
    }
    const int n = mms.n();
    const std::size_t m = radii.size();

    std::vector<double> v(m);
    for (std::size_t s = 0; s < m; ++s) {
        double vmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            double ball = 0.0;
            for (int j = 0; j < n; ++j)
                if (mms.dist(i, j) <= radii[s]) ball += mms.measure(j);
            vmin = std::min(vmin, ball);
        }
        if (!(vmin > 0.0)) throw numeric_error("estimate_ab: empty ball despite positive atom masses");
        v[s] = vmin;
    }

    // Exponent from the log-log least-squares slope; v is nondecreasing so the
    // slope is clamped at zero only to absorb rounding.
    double b = 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t s = 0; s < m; ++s) {
        const double x = std::log(radii[s]), y = std::log(v[s]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (m >= 2 && denom > 1e-12 * m * sxx) b = std::max(0.0, (m * sxy - sx * sy) / denom);

    // Largest prefactor valid on all of (0, r]: on (radii[i-1], radii[i]] the
    // ball mass is at least v(radii[i-1]), and below the first radius it is at
    // least the smallest atom mass.
    const double mu_min = mms.measure.minCoeff();
    double a = mu_min / std::pow(radii[0], b);
    for (std::size_t s = 1; s < m; ++s) a = std::min(a, v[s - 1] / std::pow(radii[s], b));
    return AbStandardness{a, b, radii.back()};
}

}  // namespace dke
