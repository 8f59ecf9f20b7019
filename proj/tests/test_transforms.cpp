#include <doctest.h>

#include <cmath>
#include <complex>

#include "dke/transforms.hpp"
#include "oracles.hpp"

using namespace dke;
using cd = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MetricMeasureSpace two_point_example() {
    Eigen::MatrixXd d(2, 2);
    d << 0, 1, 1, 0;
    Eigen::VectorXd mu(2);
    mu << 1, 4;
    return make_mms(d, mu, "two-point");
}

Direction axis_direction(int k, int axis, bool imaginary) {
    Direction dir{Eigen::VectorXd::Zero(k), Eigen::VectorXd::Zero(k)};
    (imaginary ? dir.v : dir.u)(axis) = 1.0;
    return dir;
}

/// Embedding with a single exactly-constant real column.
Embedding constant_embedding(int n, double value) {
    Embedding emb;
    emb.k = 1;
    emb.coords = Eigen::MatrixXcd::Constant(n, 1, cd(value, 0.0));
    emb.eigenvalues = Eigen::VectorXd::Constant(1, value * value);
    return emb;
}

int count_bars(const GradedDiagram& d, int dim, double birth, double death) {
    int c = 0;
    for (const auto& b : d.bars)
        if (b.dim == dim && b.birth == birth && b.death == death) ++c;
    return c;
}

}  // namespace

TEST_CASE("height_function: worked coordinates, axis alignment, linearity") {
    const auto emb = embed(eigendecompose(build_operator(two_point_example())), 2);
    const auto f = height_function(emb, axis_direction(2, 0, false));
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.5).epsilon(1e-12));

    // the first column is purely real, so weighting its imaginary part gives zero
    const auto g = height_function(emb, axis_direction(2, 0, true));
    CHECK(std::abs(g[0]) <= 1e-12);
    CHECK(std::abs(g[1]) <= 1e-12);

    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto dirs = direction_grid(2, 2, 100 + trial);
        Direction neg{-dirs[0].u, -dirs[0].v};
        const auto h = height_function(emb, dirs[0]);
        const auto hn = height_function(emb, neg);
        for (int i = 0; i < emb.n(); ++i) CHECK(hn[i] == doctest::Approx(-h[i]).epsilon(1e-12));

        // linear combinations of directions give the same combination of heights
        const double a = rng.gaussian(), b = rng.gaussian();
        Direction combo{a * dirs[0].u + b * dirs[1].u, a * dirs[0].v + b * dirs[1].v};
        const auto hc = height_function(emb, combo);
        const auto h2 = height_function(emb, dirs[1]);
        for (int i = 0; i < emb.n(); ++i)
            CHECK(hc[i] == doctest::Approx(a * h[i] + b * h2[i]).epsilon(1e-10));
    }

    Direction bad{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)};
    CHECK_THROWS_AS(height_function(emb, bad), config_error);
}

TEST_CASE("direction_grid: unit norm, determinism, count") {
    const auto dirs = direction_grid(4, 16, 7);
    CHECK(dirs.size() == 16);
    for (const auto& d : dirs) {
        const double norm = std::sqrt(d.u.squaredNorm() + d.v.squaredNorm());
        CHECK(std::abs(norm - 1.0) <= 1e-12);
    }
    const auto again = direction_grid(4, 16, 7);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        CHECK((dirs[i].u.array() == again[i].u.array()).all());
        CHECK((dirs[i].v.array() == again[i].v.array()).all());
    }
    CHECK(direction_grid(2, 0, 1).empty());
}

TEST_CASE("ipkt with a constant coordinate: the whole complex appears at once") {
    const int n = 4;
    const auto emb = constant_embedding(n, 0.75);
    const auto cycle = std::make_shared<const SimplicialComplex>(
        make_complex(n, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    const auto result = ipkt(emb, cycle, {axis_direction(1, 0, false)});
    REQUIRE(result.diagrams.size() == 1);
    const auto& diagram = result.diagrams[0];
    CHECK(diagram.bars.size() == 2);
    CHECK(count_bars(diagram, 0, 0.75, kInf) == 1);
    CHECK(count_bars(diagram, 1, 0.75, kInf) == 1);

    // antipodal directions both evaluate cleanly
    const auto anti = ipkt(emb, cycle, {axis_direction(1, 0, false),
                                        Direction{-Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1)}});
    CHECK(anti.diagrams.size() == 2);
}

TEST_CASE("epkt collapses duplicate embedded points to the point diagram") {
    const auto emb = constant_embedding(5, 0.3);
    const auto result = epkt(emb, {axis_direction(1, 0, false)}, 0.5);
    REQUIRE(result.diagrams.size() == 1);
    CHECK(result.diagrams[0].bars.size() == 1);
    CHECK(count_bars(result.diagrams[0], 0, 0.3, kInf) == 1);

    const auto none = epkt(emb, {}, 0.5);
    CHECK(none.diagrams.empty());
}

TEST_CASE("intrinsic and embedded transforms agree when the complexes agree") {
    // uniform two-point space: the embedding is injective
    Eigen::MatrixXd d(2, 2);
    d << 0, 1, 1, 0;
    const auto mms = make_mms(d, Eigen::VectorXd::Constant(2, 0.5));
    const auto spec = eigendecompose(build_operator(mms));
    const auto emb = embed(spec, 2);

    const auto intrinsic_cx =
        std::make_shared<const SimplicialComplex>(build_rips(mms, 1.0, 1));
    const double embedded_gap =
        std::sqrt((emb.coords.row(0) - emb.coords.row(1)).squaredNorm());
    const auto ec = embedded_rips_complex(emb, embedded_gap + 0.1, 1);
    REQUIRE(same_complex(*intrinsic_cx, *ec.complex));

    const auto dirs = direction_grid(2, 6, 5);
    const auto ti = ipkt(emb, intrinsic_cx, dirs);
    const auto te = epkt(emb, dirs, embedded_gap + 0.1, 1);
    CHECK(transform_distance(ti, te, TransformDistance::Bottleneck) == 0.0);

    const auto ei = iekt(emb, intrinsic_cx, dirs);
    const auto ee = eekt(emb, dirs, embedded_gap + 0.1, 1);
    CHECK(transform_distance(ei, ee, TransformDistance::EulerLp, 1.0) == 0.0);
}

TEST_CASE("euler transform of a constant-height cycle is the zero curve") {
    const auto emb = constant_embedding(4, 0.2);
    const auto cycle = std::make_shared<const SimplicialComplex>(
        make_complex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    const auto result = iekt(emb, cycle, {axis_direction(1, 0, false)});
    REQUIRE(result.curves.size() == 1);
    CHECK(result.curves[0].empty());  // beta_0 - beta_1 = 0 everywhere
    CHECK(result.horizon == doctest::Approx(1.2));
}

TEST_CASE("ipkt is Lipschitz in the direction") {
    const auto mms = sample_torus(80, 2.5, 1.0, 13);
    const auto spec = eigendecompose(build_operator(mms));
    const auto emb = embed(spec, 3);
    const auto cx = std::make_shared<const SimplicialComplex>(build_rips(mms, 1.4, 2));

    double coord_sup = 0.0;
    for (int i = 0; i < emb.n(); ++i)
        for (int j = 0; j < emb.k; ++j)
            coord_sup = std::max({coord_sup, std::abs(emb.coords(i, j).real()),
                                  std::abs(emb.coords(i, j).imag())});

    Rng rng(9);
    for (int trial = 0; trial < 8; ++trial) {
        const auto base = direction_grid(3, 1, 1000 + trial)[0];
        Eigen::VectorXd full(6);
        full << base.u, base.v;
        Eigen::VectorXd jitter(6);
        for (int c = 0; c < 6; ++c) jitter(c) = 0.02 * rng.gaussian();
        Eigen::VectorXd other = (full + jitter).normalized();
        const Direction d2{other.head(3), other.tail(3)};
        const double l1_gap = (full - other).lpNorm<1>();

        const auto t1 = ipkt(emb, cx, {base});
        const auto t2 = ipkt(emb, cx, {d2});
        const double db = graded_bottleneck(t1.diagrams[0], t2.diagrams[0]);
        CHECK(db <= coord_sup * l1_gap + 1e-9);
    }
}

TEST_CASE("transform_distance: identity, single direction, validation") {
    const auto mms = sample_sphere(30, 2, MetricMode::Geodesic, 2);
    const auto emb = embed(eigendecompose(build_operator(mms)), 3);
    const auto cx = std::make_shared<const SimplicialComplex>(build_rips(mms, 1.2, 1));
    const auto dirs = direction_grid(3, 4, 11);

    const auto t = ipkt(emb, cx, dirs);
    CHECK(transform_distance(t, t, TransformDistance::Bottleneck) == 0.0);

    // a single direction reduces to the underlying diagram distance
    const auto single1 = ipkt(emb, cx, {dirs[0]});
    auto shifted = single1;
    for (auto& bar : shifted.diagrams[0].bars) {
        bar.birth += 0.125;
        if (!bar.is_infinite()) bar.death += 0.125;
    }
    CHECK(transform_distance(single1, shifted, TransformDistance::Bottleneck) ==
          doctest::Approx(graded_bottleneck(single1.diagrams[0], shifted.diagrams[0])));

    const auto other_dirs = direction_grid(3, 4, 12);
    const auto t2 = ipkt(emb, cx, other_dirs);
    CHECK_THROWS_AS(transform_distance(t, t2, TransformDistance::Bottleneck), config_error);
    CHECK_THROWS_AS(transform_distance(t, t, TransformDistance::EulerLp, 1.0), config_error);
}

TEST_CASE("lens spaces are separated by the euler transform") {
    const int n = 180, k = 4;
    const auto sA = eigendecompose(build_operator(sample_lens(n, 7, 1, 61)));
    const auto sB = eigendecompose(build_operator(sample_lens(n, 7, 1, 62)));
    const auto sC = eigendecompose(build_operator(sample_lens(n, 7, 4, 63)));
    const auto dirs = direction_grid(k, 8, 77);
    const double scale = 1.0;

    auto ekt = [&](const Spectrum& s) {
        const auto emb = embed(s, k);
        const auto cx = std::make_shared<const SimplicialComplex>(build_rips(s.source->dist, scale, 2));
        return iekt(emb, cx, dirs);
    };
    const auto tA = ekt(sA), tB = ekt(sB), tC = ekt(sC);
    const double same = transform_distance(tA, tB, TransformDistance::EulerLp, 1.0);
    const double cross = transform_distance(tA, tC, TransformDistance::EulerLp, 1.0);
    CHECK(cross > same);
}
