#include "dke/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "dke/errors.hpp"

namespace dke {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kSimplexCap = 10'000'000;

/// Simplices have at most 4 vertices, each below 2^16 - 1; pack vertex+1 into
/// 16-bit lanes for exact hashing.
std::uint64_t pack_simplex(const std::vector<int>& s) {
    std::uint64_t key = 0;
    for (int v : s) key = (key << 16) | static_cast<std::uint64_t>(v + 1);
    return key;
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

}  // namespace

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

SimplicialComplex make_complex(int vertices, std::vector<std::vector<int>> simplices) {
    if (vertices < 0 || vertices > 65534)
        throw config_error("make_complex: vertex count out of supported range");
    std::vector<std::vector<int>> closed;
    std::unordered_map<std::uint64_t, char> seen;
    auto push = [&](std::vector<int> s) {
        const std::uint64_t key = pack_simplex(s);
        if (seen.emplace(key, 1).second) closed.push_back(std::move(s));
    };
    for (auto& s : simplices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) continue;
        if (s.size() > 4) throw config_error("make_complex: simplex dimension above 3");
        for (int v : s)
            if (v < 0 || v >= vertices) throw config_error("make_complex: vertex index out of range");
        // insert the simplex and all its proper faces
        const int m = static_cast<int>(s.size());
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> face;
            for (int t = 0; t < m; ++t)
                if (mask & (1u << t)) face.push_back(s[t]);
            push(std::move(face));
        }
    }
    std::sort(closed.begin(), closed.end(), lex_less);
    SimplicialComplex cx;
    cx.vertices = vertices;
    cx.simplices = std::move(closed);
    return cx;
}

SimplicialComplex build_rips(const Eigen::MatrixXd& dist, double scale, int maxdim) {
    const int n = static_cast<int>(dist.rows());
    if (dist.rows() != dist.cols()) throw config_error("build_rips: distance matrix must be square");
    if (n > 65534) throw config_error("build_rips: too many vertices");
    if (scale < 0.0) throw config_error("build_rips: scale must be nonnegative");
    if (maxdim < 0 || maxdim > 3) throw config_error("build_rips: maxdim must be in [0, 3]");

    std::vector<std::vector<int>> nbrs(n);  // strictly larger neighbors within scale
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist(i, j) <= scale) nbrs[i].push_back(j);

    // Count before allocating anything; the cap guards both time and memory.
    std::size_t count = static_cast<std::size_t>(n);
    auto scan = [&](auto&& emit) {
        if (maxdim >= 1) {
            for (int i = 0; i < n; ++i)
                for (int j : nbrs[i]) emit(i, j, -1, -1);
        }
        if (maxdim >= 2) {
            for (int i = 0; i < n; ++i)
                for (int j : nbrs[i])
                    for (int l : nbrs[j])
                        if (dist(i, l) <= scale) emit(i, j, l, -1);
        }
        if (maxdim >= 3) {
            for (int i = 0; i < n; ++i)
                for (int j : nbrs[i])
                    for (int l : nbrs[j]) {
                        if (dist(i, l) > scale) continue;
                        for (int t : nbrs[l])
                            if (dist(i, t) <= scale && dist(j, t) <= scale) emit(i, j, l, t);
                    }
        }
    };
    scan([&count](int, int, int, int) { ++count; });
    if (count > kSimplexCap)
        throw config_error("build_rips: simplex count " + std::to_string(count) +
                           " exceeds the cap of 1e7");

    SimplicialComplex cx;
    cx.vertices = n;
    auto& out = cx.simplices;
    out.reserve(count);
    for (int i = 0; i < n; ++i) out.push_back({i});
    scan([&out](int i, int j, int l, int t) {
        if (l < 0)
            out.push_back({i, j});
        else if (t < 0)
            out.push_back({i, j, l});
        else
            out.push_back({i, j, l, t});
    });
    std::sort(out.begin(), out.end(), lex_less);
    return cx;
}

SimplicialComplex build_rips(const MetricMeasureSpace& mms, double scale, int maxdim) {
    return build_rips(mms.dist, scale, maxdim);
}

Filtration lower_star(std::shared_ptr<const SimplicialComplex> complex,
                      const std::vector<double>& vertex_values) {
    if (static_cast<int>(vertex_values.size()) != complex->vertices)
        throw config_error("lower_star: one value per vertex required");
    Filtration f;
    f.values.resize(complex->size());
    for (std::size_t s = 0; s < complex->size(); ++s) {
        double v = -kInf;
        for (int vert : complex->simplices[s]) v = std::max(v, vertex_values[vert]);
        f.values[s] = v;
    }
    f.order.resize(complex->size());
    std::iota(f.order.begin(), f.order.end(), 0);
    const auto& sims = complex->simplices;
    const auto& vals = f.values;
    std::sort(f.order.begin(), f.order.end(), [&](int a, int b) {
        if (vals[a] != vals[b]) return vals[a] < vals[b];
        return lex_less(sims[a], sims[b]);
    });
    f.complex = std::move(complex);
    return f;
}

Filtration lower_star(const SimplicialComplex& complex, const std::vector<double>& vertex_values) {
    return lower_star(std::make_shared<const SimplicialComplex>(complex), vertex_values);
}

GradedDiagram compute_persistence(const Filtration& filtration, int maxdim) {
    const auto& cx = *filtration.complex;
    const int m = static_cast<int>(cx.size());

    std::vector<int> position(m);
    for (int p = 0; p < m; ++p) position[filtration.order[p]] = p;

    std::unordered_map<std::uint64_t, int> index_of;
    index_of.reserve(m * 2);
    for (int s = 0; s < m; ++s) index_of.emplace(pack_simplex(cx.simplices[s]), s);

    // Boundary columns in filtration order, entries sorted ascending.
    std::vector<std::vector<int>> reduced(m);
    std::vector<int> low_owner(m, -1);  // creator position -> the column that claimed it (its death)
    std::vector<int> scratch, col;
    std::vector<int> face;
    for (int p = 0; p < m; ++p) {
        const auto& simplex = cx.simplices[filtration.order[p]];
        col.clear();
        if (simplex.size() > 1) {
            for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
                face.clear();
                for (std::size_t t = 0; t < simplex.size(); ++t)
                    if (t != drop) face.push_back(simplex[t]);
                const auto it = index_of.find(pack_simplex(face));
                if (it == index_of.end())
                    throw config_error("compute_persistence: complex is not closed under faces");
                const int face_pos = position[it->second];
                if (face_pos >= p)
                    throw config_error("compute_persistence: filtration is not monotone");
                col.push_back(face_pos);
            }
            std::sort(col.begin(), col.end());
        }
        while (!col.empty()) {
            const int low = col.back();
            const int owner = low_owner[low];
            if (owner < 0) break;
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), reduced[owner].begin(),
                                          reduced[owner].end(), std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (!col.empty()) {
            low_owner[col.back()] = p;
            reduced[p] = col;
        }
    }

    // A position with a nonempty reduced column is a death; one with an empty
    // column is a creator, paired if some later column claimed it as its low.
    GradedDiagram diagram;
    for (int p = 0; p < m; ++p) {
        if (!reduced[p].empty()) continue;  // death column, not a creator
        const int simplex_idx = filtration.order[p];
        const int dim = static_cast<int>(cx.simplices[simplex_idx].size()) - 1;
        if (dim > maxdim) continue;
        const double birth = filtration.values[simplex_idx];
        if (low_owner[p] >= 0) {
            const double death = filtration.values[filtration.order[low_owner[p]]];
            if (birth != death) diagram.bars.push_back({dim, birth, death});
        } else {
            diagram.bars.push_back({dim, birth, kInf});
        }
    }
    return diagram;
}

int GradedDiagram::max_dim() const {
    int d = -1;
    for (const auto& b : bars) d = std::max(d, b.dim);
    return d;
}

std::vector<Bar> GradedDiagram::bars_of_dim(int dim) const {
    std::vector<Bar> out;
    for (const auto& b : bars)
        if (b.dim == dim) out.push_back(b);
    return out;
}

namespace {

double linf_cost(const Bar& a, const Bar& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

/// Hopcroft-Karp: true iff a matching saturates every left vertex of the
/// bipartite graph given by explicit adjacency lists.
bool saturates_left(const std::vector<std::vector<int>>& adj, int right_count) {
    const int left_count = static_cast<int>(adj.size());
    if (left_count == 0) return true;
    constexpr int kUnseen = std::numeric_limits<int>::max();
    std::vector<int> match_left(left_count, -1), match_right(right_count, -1);
    std::vector<int> layer(left_count);
    std::vector<int> queue;
    int matched = 0;
    for (;;) {
        // BFS layers from unmatched left vertices
        queue.clear();
        for (int l = 0; l < left_count; ++l) {
            if (match_left[l] < 0) {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = kUnseen;
            }
        }
        bool reachable_free = false;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int l = queue[qi];
            for (int r : adj[l]) {
                const int owner = match_right[r];
                if (owner < 0) {
                    reachable_free = true;
                } else if (layer[owner] == kUnseen) {
                    layer[owner] = layer[l] + 1;
                    queue.push_back(owner);
                }
            }
        }
        if (!reachable_free) break;
        // layered DFS augmentation
        auto augment = [&](auto&& self, int l) -> bool {
            for (int r : adj[l]) {
                const int owner = match_right[r];
                if (owner < 0 || (layer[owner] == layer[l] + 1 && self(self, owner))) {
                    match_left[l] = r;
                    match_right[r] = l;
                    return true;
                }
            }
            layer[l] = kUnseen;
            return false;
        };
        for (int l = 0; l < left_count; ++l)
            if (match_left[l] < 0 && augment(augment, l)) ++matched;
        if (matched == left_count) return true;
    }
    return matched == left_count;
}

/// Feasibility of a partial matching of cost <= r between the finite parts
/// (with diagonal) plus a perfect matching of the essential parts. A diagonal
/// matching exists iff the points too persistent for the diagonal can each be
/// saturated into the other diagram; by the Mendelsohn-Dulmage theorem the two
/// one-sided saturations combine into a single matching covering both.
bool bottleneck_feasible(const std::vector<Bar>& f1, const std::vector<Bar>& f2,
                         const std::vector<Bar>& e1, const std::vector<Bar>& e2, double r) {
    const int n1 = static_cast<int>(f1.size());
    const int n2 = static_cast<int>(f2.size());
    const int e = static_cast<int>(e1.size());

    {
        std::vector<std::vector<int>> adj(e);
        for (int l = 0; l < e; ++l)
            for (int rr = 0; rr < e; ++rr)
                if (std::abs(e1[l].birth - e2[rr].birth) <= r) adj[l].push_back(rr);
        if (!saturates_left(adj, e)) return false;
    }

    auto one_side = [r](const std::vector<Bar>& from, const std::vector<Bar>& to) {
        std::vector<std::vector<int>> adj;
        for (const auto& bar : from) {
            if (bar.persistence() <= r) continue;  // the diagonal absorbs it
            auto& row = adj.emplace_back();
            for (std::size_t rr = 0; rr < to.size(); ++rr)
                if (linf_cost(bar, to[rr]) <= r) row.push_back(static_cast<int>(rr));
        }
        return saturates_left(adj, static_cast<int>(to.size()));
    };
    (void)n1;
    (void)n2;
    return one_side(f1, f2) && one_side(f2, f1);
}

}  // namespace

double bottleneck_distance(const GradedDiagram& d1, const GradedDiagram& d2, int dim) {
    std::vector<Bar> f1, f2, e1, e2;
    for (const auto& b : d1.bars)
        if (b.dim == dim) (b.is_infinite() ? e1 : f1).push_back(b);
    for (const auto& b : d2.bars)
        if (b.dim == dim) (b.is_infinite() ? e2 : f2).push_back(b);
    if (e1.size() != e2.size()) return kInf;

    std::vector<double> candidates{0.0};
    for (const auto& a : f1)
        for (const auto& b : f2) candidates.push_back(linf_cost(a, b));
    for (const auto& a : f1) candidates.push_back(a.persistence());
    for (const auto& b : f2) candidates.push_back(b.persistence());
    for (const auto& a : e1)
        for (const auto& b : e2) candidates.push_back(std::abs(a.birth - b.birth));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (bottleneck_feasible(f1, f2, e1, e2, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double graded_bottleneck(const GradedDiagram& d1, const GradedDiagram& d2) {
    const int top = std::max(d1.max_dim(), d2.max_dim());
    double worst = 0.0;
    for (int dim = 0; dim <= top; ++dim)
        worst = std::max(worst, bottleneck_distance(d1, d2, dim));
    return worst;
}

double StepFunction::at(double t) const {
    if (empty() || t < breakpoints.front() || t >= breakpoints.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

namespace {

/// Builds a canonical step function from +/- weight events. Change points
/// where the accumulated deltas cancel are dropped, so consecutive stored
/// levels always differ; the level returns to zero after the last point
/// because every bar contributes matching +w/-w events.
StepFunction sweep_events(std::vector<std::pair<double, double>> events) {
    std::sort(events.begin(), events.end());
    std::vector<double> points, levels;  // levels[j] holds on [points[j], points[j+1])
    double level = 0.0;
    std::size_t i = 0;
    while (i < events.size()) {
        const double t = events[i].first;
        double delta = 0.0;
        while (i < events.size() && events[i].first == t) delta += events[i++].second;
        if (delta == 0.0) continue;
        level += delta;
        points.push_back(t);
        levels.push_back(level);
    }
    StepFunction out;
    if (points.size() < 2) return out;
    out.breakpoints = points;
    out.values.assign(levels.begin(), levels.end() - 1);
    return out;
}

StepFunction curve_from_bars(const std::vector<Bar>& bars, double horizon, bool alternate) {
    double max_finite_death = -kInf;
    for (const auto& b : bars)
        if (!b.is_infinite()) max_finite_death = std::max(max_finite_death, b.death);
    if (max_finite_death > horizon)
        throw config_error("curve horizon is below the largest finite death");
    std::vector<std::pair<double, double>> events;
    for (const auto& b : bars) {
        const double weight = alternate ? (b.dim % 2 == 0 ? 1.0 : -1.0) : 1.0;
        const double end = b.is_infinite() ? horizon : b.death;
        if (end <= b.birth) continue;
        events.emplace_back(b.birth, weight);
        events.emplace_back(end, -weight);
    }
    return sweep_events(std::move(events));
}

}  // namespace

StepFunction betti_curve(const GradedDiagram& diagram, int dim, double horizon) {
    return curve_from_bars(diagram.bars_of_dim(dim), horizon, /*alternate=*/false);
}

StepFunction euler_curve(const GradedDiagram& diagram, double horizon) {
    return curve_from_bars(diagram.bars, horizon, /*alternate=*/true);
}

double lp_distance(const StepFunction& s1, const StepFunction& s2, double p) {
    if (!(p > 0.0)) throw config_error("lp_distance: p must be positive");
    std::vector<double> grid;
    grid.reserve(s1.breakpoints.size() + s2.breakpoints.size());
    grid.insert(grid.end(), s1.breakpoints.begin(), s1.breakpoints.end());
    grid.insert(grid.end(), s2.breakpoints.begin(), s2.breakpoints.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double mid = grid[i];
        const double gap = std::abs(s1.at(mid) - s2.at(mid));
        if (gap > 0.0) integral += std::pow(gap, p) * (grid[i + 1] - grid[i]);
    }
    return std::pow(integral, 1.0 / p);
}

double total_persistence(const GradedDiagram& diagram, double q, double t) {
    if (!(q > 0.0)) throw config_error("total_persistence: q must be positive");
    if (t < 0.0) throw config_error("total_persistence: t must be nonnegative");
    double sum = 0.0;
    for (const auto& b : diagram.bars) {
        if (b.is_infinite()) continue;
        const double per = b.persistence();
        if (per > t) sum += std::pow(per, q);
    }
    return sum;
}

}  // namespace dke
