#include "dke/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dke/errors.hpp"
#include "dke/rng.hpp"

namespace dke {

const char* transform_kind_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::IntrinsicPersistence: return "ipkt";
        case TransformKind::EmbeddedPersistence: return "epkt";
        case TransformKind::IntrinsicEuler: return "iekt";
        case TransformKind::EmbeddedEuler: return "eekt";
    }
    return "?";
}

std::vector<double> height_function(const Embedding& emb, const Direction& dir) {
    if (dir.k() != emb.k || dir.v.size() != emb.k)
        throw config_error("height_function: direction dimension does not match embedding");
    std::vector<double> f(emb.n());
    for (int j = 0; j < emb.n(); ++j) {
        double h = 0.0;
        for (int i = 0; i < emb.k; ++i) {
            const std::complex<double> c = emb.coords(j, i);
            h += dir.u(i) * c.real() + dir.v(i) * c.imag();
        }
        f[j] = h;
    }
    return f;
}

std::vector<Direction> direction_grid(int k, int count, std::uint64_t seed) {
    if (k < 1) throw config_error("direction_grid: k must be >= 1");
    if (count < 0) throw config_error("direction_grid: count must be nonnegative");
    Rng rng(seed);
    std::vector<Direction> dirs;
    dirs.reserve(count);
    for (int c = 0; c < count; ++c) {
        Eigen::VectorXd full(2 * k);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int i = 0; i < 2 * k; ++i) {
                full(i) = rng.gaussian();
                norm2 += full(i) * full(i);
            }
        } while (norm2 == 0.0);
        full /= std::sqrt(norm2);
        dirs.push_back({full.head(k), full.tail(k)});
    }
    return dirs;
}

EmbeddedComplex embedded_rips_complex(const Embedding& emb, double scale, int maxdim,
                                      double collapse_tol) {
    const int n = emb.n();
    Eigen::MatrixXd pts(n, 2 * emb.k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < emb.k; ++j) {
            pts(i, j) = emb.coords(i, j).real();
            pts(i, emb.k + j) = emb.coords(i, j).imag();
        }

    // Collapse duplicate embedded points (the image is a quotient of the
    // source set); each class keeps its smallest original index.
    std::vector<int> cls(n, -1);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        const int rep = static_cast<int>(reps.size());
        cls[i] = rep;
        for (int j = i + 1; j < n; ++j) {
            if (cls[j] >= 0) continue;
            const double gap = (pts.row(i) - pts.row(j)).norm();
            if (gap <= collapse_tol) cls[j] = rep;
        }
        reps.push_back(i);
    }

    EmbeddedComplex out;
    const int m = static_cast<int>(reps.size());
    out.points.resize(m, 2 * emb.k);
    for (int r = 0; r < m; ++r) out.points.row(r) = pts.row(reps[r]);
    out.representatives = std::move(reps);

    Eigen::MatrixXd dist(m, m);
    for (int i = 0; i < m; ++i) {
        dist(i, i) = 0.0;
        for (int j = i + 1; j < m; ++j)
            dist(i, j) = dist(j, i) = (out.points.row(i) - out.points.row(j)).norm();
    }
    out.complex = std::make_shared<const SimplicialComplex>(build_rips(dist, scale, maxdim));
    return out;
}

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertices == b.vertices && a.simplices == b.simplices;
}

namespace {

TransformResult persistence_transform(const Embedding& emb,
                                      std::shared_ptr<const SimplicialComplex> complex,
                                      const std::vector<int>* reps,
                                      const std::vector<Direction>& dirs, TransformKind kind,
                                      std::string summary) {
    TransformResult out;
    out.kind = kind;
    out.k = emb.k;
    out.directions = dirs;
    out.complex_summary = std::move(summary);
    out.diagrams.reserve(dirs.size());
    for (const auto& dir : dirs) {
        const std::vector<double> full = height_function(emb, dir);
        std::vector<double> f;
        if (reps) {
            f.reserve(reps->size());
            for (int r : *reps) f.push_back(full[r]);
        } else {
            f = full;
        }
        out.diagrams.push_back(compute_persistence(lower_star(complex, f)));
    }
    return out;
}

/// Horizon shared by every direction of a Euler-kind result.
double curve_horizon(const Embedding& emb, const std::vector<Direction>& dirs,
                     const std::vector<int>* reps) {
    double max_height = 0.0;
    bool any = false;
    for (const auto& dir : dirs) {
        const std::vector<double> full = height_function(emb, dir);
        if (reps) {
            for (int r : *reps) {
                max_height = any ? std::max(max_height, full[r]) : full[r];
                any = true;
            }
        } else {
            for (double h : full) {
                max_height = any ? std::max(max_height, h) : h;
                any = true;
            }
        }
    }
    return any ? max_height + 1.0 : 1.0;
}

TransformResult to_euler(TransformResult pers, TransformKind kind, double horizon) {
    TransformResult out;
    out.kind = kind;
    out.k = pers.k;
    out.directions = std::move(pers.directions);
    out.complex_summary = std::move(pers.complex_summary);
    out.horizon = horizon;
    out.curves.reserve(pers.diagrams.size());
    for (const auto& d : pers.diagrams) out.curves.push_back(euler_curve(d, horizon));
    return out;
}

}  // namespace

TransformResult ipkt(const Embedding& emb, std::shared_ptr<const SimplicialComplex> complex,
                     const std::vector<Direction>& dirs) {
    if (complex->vertices != emb.n())
        throw config_error("ipkt: complex vertex count does not match the embedding");
    std::string summary = "intrinsic complex, " + std::to_string(complex->size()) + " simplices";
    return persistence_transform(emb, std::move(complex), nullptr, dirs,
                                 TransformKind::IntrinsicPersistence, std::move(summary));
}

TransformResult epkt(const Embedding& emb, const std::vector<Direction>& dirs,
                     double rips_scale, int maxdim, double collapse_tol) {
    EmbeddedComplex ec = embedded_rips_complex(emb, rips_scale, maxdim, collapse_tol);
    std::string summary = "embedded rips, scale " + std::to_string(rips_scale) + ", " +
                          std::to_string(ec.complex->vertices) + " vertices, " +
                          std::to_string(ec.complex->size()) + " simplices";
    return persistence_transform(emb, ec.complex, &ec.representatives, dirs,
                                 TransformKind::EmbeddedPersistence, std::move(summary));
}

TransformResult iekt(const Embedding& emb, std::shared_ptr<const SimplicialComplex> complex,
                     const std::vector<Direction>& dirs) {
    const double horizon = curve_horizon(emb, dirs, nullptr);
    return to_euler(ipkt(emb, std::move(complex), dirs), TransformKind::IntrinsicEuler, horizon);
}

TransformResult eekt(const Embedding& emb, const std::vector<Direction>& dirs,
                     double rips_scale, int maxdim, double collapse_tol) {
    EmbeddedComplex ec = embedded_rips_complex(emb, rips_scale, maxdim, collapse_tol);
    const double horizon = curve_horizon(emb, dirs, &ec.representatives);
    std::string summary = "embedded rips, scale " + std::to_string(rips_scale) + ", " +
                          std::to_string(ec.complex->vertices) + " vertices, " +
                          std::to_string(ec.complex->size()) + " simplices";
    TransformResult pers = persistence_transform(emb, ec.complex, &ec.representatives, dirs,
                                                 TransformKind::EmbeddedPersistence,
                                                 std::move(summary));
    return to_euler(std::move(pers), TransformKind::EmbeddedEuler, horizon);
}

double transform_distance(const TransformResult& t1, const TransformResult& t2,
                          TransformDistance mode, double p) {
    if (t1.directions.size() != t2.directions.size())
        throw config_error("transform_distance: direction lists differ in length");
    for (std::size_t i = 0; i < t1.directions.size(); ++i) {
        if (t1.directions[i].u != t2.directions[i].u || t1.directions[i].v != t2.directions[i].v)
            throw config_error("transform_distance: direction lists differ (use a shared seed)");
    }
    double worst = 0.0;
    if (mode == TransformDistance::Bottleneck) {
        if (t1.diagrams.size() != t1.directions.size() || t2.diagrams.size() != t2.directions.size())
            throw config_error("transform_distance: bottleneck mode needs persistence transforms");
        for (std::size_t i = 0; i < t1.diagrams.size(); ++i)
            worst = std::max(worst, graded_bottleneck(t1.diagrams[i], t2.diagrams[i]));
    } else {
        if (t1.curves.size() != t1.directions.size() || t2.curves.size() != t2.directions.size())
            throw config_error("transform_distance: euler_lp mode needs Euler transforms");
        for (std::size_t i = 0; i < t1.curves.size(); ++i)
            worst = std::max(worst, lp_distance(t1.curves[i], t2.curves[i], p));
    }
    return worst;
}

}  // namespace dke
