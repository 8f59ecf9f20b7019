#pragma once

// Test-only oracles: independent brute-force implementations used to freeze
// expected values. Nothing here may call into the code paths it checks.

#include <Eigen/Dense>
#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "dke/mmspace.hpp"
#include "dke/persistence.hpp"
#include "dke/rng.hpp"

namespace oracles {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Random metric measure space from a Euclidean point cloud in [0,1]^d.
inline dke::MetricMeasureSpace random_mms(dke::Rng& rng, int n_min, int n_max,
                                          bool uniform_measure) {
    const int n = n_min + static_cast<int>(rng.uniform01() * (n_max - n_min + 1));
    const int d = 1 + static_cast<int>(rng.uniform01() * 3);
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c) pts(i, c) = rng.uniform01();
    Eigen::MatrixXd dist(n, n);
    for (int i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (int j = i + 1; j < n; ++j)
            dist(i, j) = dist(j, i) = (pts.row(i) - pts.row(j)).norm();
    }
    Eigen::VectorXd measure(n);
    if (uniform_measure)
        measure.setConstant(1.0 / n);
    else
        for (int i = 0; i < n; ++i) measure(i) = rng.uniform(0.1, 2.0);
    return dke::make_mms(dist, measure, "random", dke::TriangleCheck::Skip);
}

/// Min over all bijections of the max cross distance (factorial enumeration).
inline double bottleneck_points_bruteforce(const Eigen::MatrixXd& cross) {
    const int m = static_cast<int>(cross.rows());
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double best = kInf;
    do {
        double worst = 0.0;
        for (int i = 0; i < m; ++i) worst = std::max(worst, cross(i, perm[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace detail {

inline double linf(const dke::Bar& a, const dke::Bar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

/// Recursively matches finite bars of one diagram to finite bars of the other
/// or to the diagonal, minimizing the max cost.
inline double match_finite(const std::vector<dke::Bar>& f1, const std::vector<dke::Bar>& f2,
                           std::size_t next, std::vector<char>& used, double current) {
    if (next == f1.size()) {
        double worst = current;
        for (std::size_t j = 0; j < f2.size(); ++j)
            if (!used[j]) worst = std::max(worst, f2[j].persistence());
        return worst;
    }
    double best = kInf;
    // to the diagonal
    best = std::min(best, match_finite(f1, f2, next + 1, used,
                                       std::max(current, f1[next].persistence())));
    for (std::size_t j = 0; j < f2.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        best = std::min(best,
                        match_finite(f1, f2, next + 1, used, std::max(current, linf(f1[next], f2[j]))));
        used[j] = 0;
    }
    return best;
}

inline double match_essential(std::vector<double> b1, std::vector<double> b2) {
    if (b1.size() != b2.size()) return kInf;
    if (b1.empty()) return 0.0;
    std::sort(b2.begin(), b2.end());
    double best = kInf;
    std::sort(b1.begin(), b1.end());
    // enumerate all assignments (sizes are tiny in tests)
    std::vector<int> perm(b2.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < b1.size(); ++i)
            worst = std::max(worst, std::abs(b1[i] - b2[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

/// Exhaustive bottleneck distance for one degree (small diagrams only).
inline double bottleneck_diagram_bruteforce(const dke::GradedDiagram& d1,
                                            const dke::GradedDiagram& d2, int dim) {
    std::vector<dke::Bar> f1, f2;
    std::vector<double> e1, e2;
    for (const auto& b : d1.bars)
        if (b.dim == dim) (b.is_infinite() ? (void)e1.push_back(b.birth) : (void)f1.push_back(b));
    for (const auto& b : d2.bars)
        if (b.dim == dim) (b.is_infinite() ? (void)e2.push_back(b.birth) : (void)f2.push_back(b));
    const double ess = detail::match_essential(e1, e2);
    if (ess == kInf) return kInf;
    std::vector<char> used(f2.size(), 0);
    return std::max(ess, detail::match_finite(f1, f2, 0, used, 0.0));
}

inline double graded_bottleneck_bruteforce(const dke::GradedDiagram& d1,
                                           const dke::GradedDiagram& d2) {
    const int top = std::max(d1.max_dim(), d2.max_dim());
    double worst = 0.0;
    for (int dim = 0; dim <= top; ++dim)
        worst = std::max(worst, bottleneck_diagram_bruteforce(d1, d2, dim));
    return worst;
}

// ---------------------------------------------------------------------------
// Rank-based persistence oracle over Z/2. Chains are bitsets over the global
// simplex indices of one dimension; ranks come from plain Gaussian elimination.

using Chain = std::bitset<256>;

inline int gf2_rank(std::vector<Chain> cols) {
    int rank = 0;
    std::vector<Chain> pivots;
    std::vector<int> pivot_bits;
    for (auto& c : cols) {
        for (std::size_t t = 0; t < pivots.size(); ++t)
            if (c[pivot_bits[t]]) c ^= pivots[t];
        if (c.none()) continue;
        int bit = 255;
        while (!c[bit]) --bit;
        pivots.push_back(c);
        pivot_bits.push_back(bit);
        ++rank;
    }
    return rank;
}

/// Basis of the kernel of the matrix whose columns are `cols`.
inline std::vector<Chain> gf2_kernel(const std::vector<Chain>& cols) {
    const std::size_t m = cols.size();
    std::vector<Chain> work = cols;
    std::vector<Chain> combo(m);  // combo[i] tracks the column combination
    for (std::size_t i = 0; i < m; ++i) combo[i][i] = 1;
    std::vector<int> pivot_of;     // pivot bit per established pivot column
    std::vector<std::size_t> who;  // which work column owns that pivot
    std::vector<Chain> kernel;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t t = 0; t < who.size(); ++t)
            if (work[i][pivot_of[t]]) {
                work[i] ^= work[who[t]];
                combo[i] ^= combo[who[t]];
            }
        if (work[i].none()) {
            kernel.push_back(combo[i]);
        } else {
            int bit = 255;
            while (!work[i][bit]) --bit;
            pivot_of.push_back(bit);
            who.push_back(i);
        }
    }
    return kernel;
}

struct SublevelOracle {
    // Per dimension: the global list of simplex indices of that dimension and
    // their filtration values, in the complex's canonical order.
    std::vector<std::vector<int>> simplices_of_dim;  // indices into complex.simplices
    std::vector<std::vector<Chain>> boundaries;      // boundary chain per simplex (same order)
    std::vector<double> values;                      // per complex simplex
    int top_dim = 0;

    SublevelOracle(const dke::SimplicialComplex& cx, const std::vector<double>& vertex_values) {
        top_dim = std::max(0, cx.dim());
        simplices_of_dim.resize(top_dim + 1);
        boundaries.resize(top_dim + 1);
        values.resize(cx.size());
        std::map<std::vector<int>, int> local;  // simplex -> slot within its dimension
        for (std::size_t s = 0; s < cx.size(); ++s) {
            const auto& simplex = cx.simplices[s];
            const int d = static_cast<int>(simplex.size()) - 1;
            local[simplex] = static_cast<int>(simplices_of_dim[d].size());
            simplices_of_dim[d].push_back(static_cast<int>(s));
            double v = -kInf;
            for (int vert : simplex) v = std::max(v, vertex_values[vert]);
            values[s] = v;
            Chain boundary;
            if (d > 0) {
                for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                    std::vector<int> face;
                    for (std::size_t t = 0; t < simplex.size(); ++t)
                        if (t != drop) face.push_back(simplex[t]);
                    boundary.set(local.at(face));
                }
            }
            boundaries[d].push_back(boundary);
        }
    }

    /// Persistent Betti number: classes of degree d alive from level a to level b.
    int persistent_betti(int d, double a, double b) const {
        if (d > top_dim) return 0;
        // cycles of K_a in degree d
        std::vector<Chain> bd_cols;
        for (std::size_t t = 0; t < simplices_of_dim[d].size(); ++t)
            if (values[simplices_of_dim[d][t]] <= a) bd_cols.push_back(boundaries[d][t]);
        std::vector<Chain> kernel;
        if (d == 0) {
            // every vertex chain is a cycle
            kernel.resize(bd_cols.size());
            std::size_t t = 0, slot = 0;
            for (std::size_t s = 0; s < simplices_of_dim[0].size(); ++s) {
                if (values[simplices_of_dim[0][s]] <= a) kernel[t++].set(slot);
                ++slot;
            }
        } else {
            // kernel vectors are expressed over the K_a columns; re-embed over
            // global slots of dimension d
            std::vector<int> col_slot;
            for (std::size_t t = 0; t < simplices_of_dim[d].size(); ++t)
                if (values[simplices_of_dim[d][t]] <= a) col_slot.push_back(static_cast<int>(t));
            for (const auto& combo : gf2_kernel(bd_cols)) {
                Chain z;
                for (std::size_t c = 0; c < col_slot.size(); ++c)
                    if (combo[c]) z.set(col_slot[c]);
                kernel.push_back(z);
            }
        }
        // boundaries of K_b in degree d
        std::vector<Chain> img_cols;
        if (d + 1 <= top_dim) {
            for (std::size_t t = 0; t < simplices_of_dim[d + 1].size(); ++t)
                if (values[simplices_of_dim[d + 1][t]] <= b) img_cols.push_back(boundaries[d + 1][t]);
        }
        const int rank_b = gf2_rank(img_cols);
        std::vector<Chain> joint = kernel;
        joint.insert(joint.end(), img_cols.begin(), img_cols.end());
        // dim Z - dim(Z cap B) = rank[Z | B] - rank B
        return gf2_rank(joint) - rank_b;
    }
};

/// Diagram of a lower-star filtration recovered from persistent Betti numbers
/// by inclusion-exclusion over the threshold grid.
inline dke::GradedDiagram diagram_from_ranks(const dke::SimplicialComplex& cx,
                                             const std::vector<double>& vertex_values) {
    SublevelOracle oracle(cx, vertex_values);
    std::vector<double> levels = vertex_values;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    const int L = static_cast<int>(levels.size());
    dke::GradedDiagram out;
    for (int d = 0; d <= oracle.top_dim; ++d) {
        auto beta = [&](int ai, int bi) -> int {
            if (ai < 0 || bi < 0 || ai > bi) return 0;
            return oracle.persistent_betti(d, levels[ai], levels[bi]);
        };
        for (int bi = 0; bi < L; ++bi) {
            for (int di = bi + 1; di < L; ++di) {
                const int mult = beta(bi, di - 1) - beta(bi, di) -
                                 (beta(bi - 1, di - 1) - beta(bi - 1, di));
                for (int c = 0; c < mult; ++c)
                    out.bars.push_back({d, levels[bi], levels[di]});
            }
            const int inf_mult = beta(bi, L - 1) - beta(bi - 1, L - 1);
            for (int c = 0; c < inf_mult; ++c) out.bars.push_back({d, levels[bi], kInf});
        }
    }
    return out;
}

/// Multiset equality of graded diagrams.
inline bool diagrams_equal(const dke::GradedDiagram& a, const dke::GradedDiagram& b) {
    auto key = [](const dke::GradedDiagram& d) {
        std::vector<std::tuple<int, double, double>> v;
        for (const auto& bar : d.bars) v.emplace_back(bar.dim, bar.birth, bar.death);
        std::sort(v.begin(), v.end());
        return v;
    };
    return key(a) == key(b);
}

/// Random face-closed complex on up to `max_vertices` vertices.
inline dke::SimplicialComplex random_complex(dke::Rng& rng, int max_vertices) {
    const int n = 2 + static_cast<int>(rng.uniform01() * (max_vertices - 1));
    std::vector<std::vector<int>> simplices;
    for (int i = 0; i < n; ++i) simplices.push_back({i});
    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform01() < 0.45) {
                edge[i][j] = 1;
                simplices.push_back({i, j});
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                if (edge[i][j] && edge[i][l] && edge[j][l] && rng.uniform01() < 0.5)
                    simplices.push_back({i, j, l});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                for (int t = l + 1; t < n; ++t)
                    if (edge[i][j] && edge[i][l] && edge[i][t] && edge[j][l] && edge[j][t] &&
                        edge[l][t] && rng.uniform01() < 0.4)
                        simplices.push_back({i, j, l, t});  // faces closed by make_complex
    return dke::make_complex(n, std::move(simplices));
}

}  // namespace oracles
