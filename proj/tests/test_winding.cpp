#include <doctest.h>

#include <cmath>

#include "brownwind/sampling.hpp"
#include "brownwind/winding.hpp"
#include "oracles.hpp"

using namespace brownwind;

namespace {

GridSpec unit_grid(int n) { return GridSpec{-2.0, -2.0, 2.0, 2.0, n, n}; }

}  // namespace

TEST_CASE("unit square has winding one inside, zero outside") {
    const ClosedLoop sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(winding_number_point(sq, {0.5, 0.5}).value == 1);
    CHECK(winding_number_point(sq.reversed(), {0.5, 0.5}).value == -1);
    CHECK(winding_number_point(sq, {1.5, 0.5}).value == 0);
    CHECK(winding_number_point(sq, {-0.5, 0.5}).value == 0);
    CHECK(winding_number_point(sq, {0.5, 0.0}).on_curve);
    CHECK(winding_number_point(sq, {1.0, 1.0}).on_curve);
    CHECK_FALSE(winding_number_point(sq, {0.5, 0.5}).on_curve);
}

TEST_CASE("crossing abscissa is identical for an edge and its reverse") {
    const Point2 p{0.1234567, -0.3}, q{0.98765, 0.77};
    for (double y : {-0.2, 0.0, 0.1, 0.5, 0.7}) {
        const auto a = edge_crossing(p, q, y);
        const auto b = edge_crossing(q, p, y);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->x == b->x);
        CHECK(a->sign == -b->sign);
    }
    CHECK_FALSE(edge_crossing(p, q, 0.77).has_value());  // half-open: upper endpoint excluded
    CHECK(edge_crossing(p, q, -0.3).has_value());
    CHECK_FALSE(edge_crossing({0, 1}, {2, 1}, 1.0).has_value());
}

TEST_CASE("triple circle has winding three inside") {
    const auto pts = oracle::multi_turn_polygon(3, 64, 1.0);
    const ClosedLoop loop = ClosedLoop::close(pts);
    const WindingField f = winding_field(loop, unit_grid(128));
    CHECK(f.max_theta() == 3);
    CHECK(f.min_theta() == 0);
    CHECK(f.at(64, 64) == 3);
    CHECK(f.at(0, 0) == 0);
    CHECK(winding_field(loop.reversed(), unit_grid(128)).min_theta() == -3);
}

TEST_CASE("scanline field equals the angle-sum oracle off the curve") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PlanarPath p = sample_bm(seed, 10);
        const ClosedLoop loop = ClosedLoop::close(p);
        const GridSpec g = GridSpec::fitted(p.points(), 96, 96);
        const WindingField f = winding_field(loop, g);
        std::size_t mismatches = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                if (f.curve_at(i, j)) continue;
                if (f.at(i, j) != oracle::angle_sum_winding(loop.vertices(), g.center(i, j))) ++mismatches;
            }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("band mask equals brute-force distance test") {
    const PlanarPath p = sample_bm(21, 7);
    const ClosedLoop loop = ClosedLoop::close(p);
    const GridSpec g = GridSpec::fitted(p.points(), 80, 64);
    for (double band : {0.0, default_band(g), 3.0 * g.dx()}) {
        const WindingField f = winding_field(loop, g, band);
        std::size_t mismatches = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                bool near = false;
                for (std::size_t k = 0; k < loop.edge_count() && !near; ++k)
                    near = segment_distance(g.center(i, j), loop.edge_start(k), loop.edge_end(k)) <= band;
                if (near != f.curve_at(i, j)) ++mismatches;
            }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("chord polygon passes through the subdivision points") {
    const PlanarPath p = sample_bm(4, 6);
    const ClosedLoop c = chord_polygon(p, 4);
    REQUIRE(c.vertices().size() == 5);
    for (int i = 0; i <= 4; ++i) CHECK(c.vertices()[static_cast<std::size_t>(i)].x == p[static_cast<std::size_t>(16 * i)].x);
    CHECK_THROWS_AS(chord_polygon(p, 3), std::invalid_argument);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(ClosedLoop(std::vector<Point2>{}), std::invalid_argument);
    const ClosedLoop sq({{0, 0}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(winding_field(sq, unit_grid(8), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(winding_field(sq, GridSpec{0, 0, 1, 1, 0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(winding_field(sq, GridSpec{1, 0, 0, 1, 4, 4}), std::invalid_argument);
}

TEST_CASE("oracle fast_atan2 stays within 2e-5 rad of atan2") {
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double a = -3.2 + 6.4 * k / 100000.0;
        for (double r : {1e-9, 1.0, 1e6}) {
            const double y = r * std::sin(a), x = r * std::cos(a);
            worst = std::max(worst, std::abs(oracle::fast_atan2(y, x) - std::atan2(y, x)));
        }
    }
    CHECK(worst < 2e-5);
}
