#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brownwind/measures.hpp"
#include "brownwind/rng.hpp"
#include "brownwind/sampling.hpp"
#include "oracles.hpp"

using namespace brownwind;

TEST_CASE("test function constants") {
    const auto one = TestFunction::constant(1.0);
    CHECK(one.name == "one");
    CHECK(one({3.0, -4.0}) == 1.0);
    CHECK(one.lipschitz == 0.0);
    CHECK(one.modulus(1.0) == 0.0);
    const auto b = TestFunction::gaussian_bump({0.0, 0.0}, 0.5);
    CHECK(b.name == "gauss_bump");
    CHECK(b.sup_norm == 1.0);
    CHECK(b({0.0, 0.0}) == 1.0);
    CHECK(b.lipschitz == doctest::Approx(std::exp(-0.5) / 0.5));
    CHECK(b.modulus(100.0) == 2.0);
    // numerical Lipschitz estimate stays below the declared constant
    double worst = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double r = 0.005 * k, h = 1e-6;
        worst = std::max(worst, std::abs(b({r + h, 0.0}) - b({r, 0.0})) / h);
    }
    CHECK(worst <= b.lipschitz * (1.0 + 1e-4));
    CHECK(std::isinf(TestFunction::linear({1.0, 2.0}, 0.0).sup_norm));
    CHECK_THROWS_AS(TestFunction::gaussian_bump({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("threshold area of a five-fold circle against polygon area") {
    const auto pts = oracle::multi_turn_polygon(5, 64, 1.0);
    const GridSpec g{-1.5, -1.5, 1.5, 1.5, 512, 512};
    const WindingField f = winding_field(ClosedLoop::close(pts), g);
    const double exact = oracle::ngon_area(64, 1.0);
    for (int N = 1; N <= 6; ++N) {
        const MeasurePair a = threshold_area(ThresholdSet::one_sided(f, N));
        if (N <= 5) {
            CHECK(a.inclusive == doctest::Approx(exact).epsilon(0.01));
            CHECK(a.off_curve <= a.inclusive);
        } else {
            CHECK(a.inclusive == 0.0);
        }
    }
}

TEST_CASE("area of a random loop's winding set agrees with rejection sampling") {
    const PlanarPath p = sample_bm(8, 10);
    const GridSpec g = GridSpec::fitted(p.points(), 400, 400);
    const ClosedLoop loop = ClosedLoop::close(p);
    const WindingField f = winding_field(loop, g, 0.0);
    const MeasurePair a = threshold_area(ThresholdSet::one_sided(f, 1));
    RngStream rng(99);
    const int n = 20000;
    int hits = 0;
    const double box = (g.x1 - g.x0) * (g.y1 - g.y0);
    for (int k = 0; k < n; ++k) {
        const Point2 z{g.x0 + (g.x1 - g.x0) * rng.uniform(), g.y0 + (g.y1 - g.y0) * rng.uniform()};
        if (oracle::angle_sum_winding(loop.vertices(), z) >= 1) ++hits;
    }
    const double q = static_cast<double>(hits) / n;
    const double est = q * box, se = std::sqrt(q * (1 - q) / n) * box;
    // grid discretization adds at most one cell per boundary crossing row
    CHECK(std::abs(a.inclusive - est) < 3.0 * se + 0.01 * est);
}

TEST_CASE("f-measure equals quadrature of f over the disk") {
    const auto pts = oracle::multi_turn_polygon(1, 256, 1.0);
    const GridSpec g{-1.25, -1.25, 1.25, 1.25, 500, 500};
    const WindingField f = winding_field(ClosedLoop::close(pts), g);
    const auto bump = TestFunction::gaussian_bump({0.0, 0.0}, 0.5);
    // integral of exp(-r^2/(2 s^2)) over the unit disk = 2 pi s^2 (1 - exp(-1/(2 s^2)))
    const double exact = 2.0 * std::numbers::pi * 0.25 * (1.0 - std::exp(-2.0));
    const MeasurePair m = f_measure(ThresholdSet::one_sided(f, 1), bump);
    CHECK(m.inclusive == doctest::Approx(exact).epsilon(0.01));
    const MeasurePair mu = mu_N_f(f, 1, bump);
    CHECK(mu.inclusive == doctest::Approx(2.0 * std::numbers::pi * m.inclusive).epsilon(1e-12));
}

TEST_CASE("pair and joint threshold sets") {
    const GridSpec g{-2, -2, 2, 2, 200, 200};
    const WindingField a = winding_field(ClosedLoop::close(oracle::multi_turn_polygon(2, 64, 1.0, {-0.5, 0})), g);
    const WindingField b =
        winding_field(ClosedLoop::close(oracle::multi_turn_polygon(2, 64, 1.0, {0.5, 0})).reversed(), g);
    const double joint = threshold_area(ThresholdSet::joint(a, b, 1)).inclusive;
    const double pair = threshold_area(ThresholdSet::pair_absolute(a, b, 2)).inclusive;
    CHECK(joint == 0.0);  // b winds negatively
    // lens of two unit circles at distance 1: 2 acos(1/2) - sqrt(3)/2
    const double lens = 2.0 * std::acos(0.5) - std::sqrt(3.0) / 2.0;
    CHECK(pair == doctest::Approx(lens).epsilon(0.03));
    const GridSpec other{-2, -2, 2, 2, 100, 100};
    const WindingField c = winding_field(ClosedLoop({{0, 0}, {1, 0}, {0, 1}}), other);
    CHECK_THROWS_AS(ThresholdSet::joint(a, c, 1), std::invalid_argument);
}

TEST_CASE("occupation measure: total mass one and histogram integral equals nu") {
    const PlanarPath p = sample_bm(12, 12);
    const GridSpec g = GridSpec::fitted(p.points(), 64, 64);
    const OccupationHistogram h = occupation_measure(p, g);
    CHECK(h.total() == doctest::Approx(1.0).epsilon(1e-12));
    const auto bump = TestFunction::gaussian_bump({0.2, -0.1}, 0.7);
    // cell-center quadrature of f against the histogram approximates the path integral
    CHECK(histogram_integral(h, bump) == doctest::Approx(nu_f(p, bump)).epsilon(0.02));
    CHECK(nu_f(p, TestFunction::constant(1.0)) == 1.0);
    const GridSpec tiny{0.0, 0.0, 1e-3, 1e-3, 4, 4};
    CHECK_THROWS_AS(occupation_measure(p, tiny), std::invalid_argument);
}

TEST_CASE("nu of a constant-speed circle traversal") {
    // Riemann sum over equally spaced points of cos(x) around the unit circle vanishes.
    std::vector<Point2> pts;
    for (int k = 0; k <= 256; ++k) {
        const double a = 2.0 * std::numbers::pi * k / 256.0;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    const PlanarPath p(8, pts);
    const auto lin = TestFunction::linear({1.0, 0.0}, 0.0);
    CHECK(std::abs(nu_f(p, lin)) < 1e-12);
    CHECK(nu_f(p, TestFunction::linear({0.0, 0.0}, 2.5)) == doctest::Approx(2.5));
}
