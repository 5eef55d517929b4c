#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "brownwind/geometry.hpp"
#include "brownwind/rng.hpp"

namespace brownwind {

inline constexpr int kMaxLevels = 26;

/// Polyline sampled on the dyadic grid k * 2^-levels of [0, 1].
class PlanarPath {
public:
    /// Validates the vertex count (2^levels + 1); does not require a start at the origin
    /// so that deterministic test loops can reuse the type.
    PlanarPath(int levels, std::vector<Point2> points);

    int levels() const noexcept { return levels_; }
    std::size_t steps() const noexcept { return points_.size() - 1; }
    std::span<const Point2> points() const noexcept { return points_; }
    const Point2& operator[](std::size_t k) const noexcept { return points_[k]; }
    double time(std::size_t k) const noexcept { return std::ldexp(static_cast<double>(k), -levels_); }
    double dt() const noexcept { return std::ldexp(1.0, -levels_); }

private:
    int levels_;
    std::vector<Point2> points_;
};

/// Restriction of a path to [(i-1)/T, i/T] (vertices shared at the ends).
struct SubpathView {
    std::span<const Point2> points;
    int index;
    int pieces;

    double t_begin() const noexcept { return static_cast<double>(index - 1) / pieces; }
    double t_end() const noexcept { return static_cast<double>(index) / pieces; }
};

void check_levels(int levels);

/// Levy dyadic-bridge construction driven by an arbitrary standard-normal source.
///
/// X_1 takes the first two draws; the midpoints of level k (k = 1..levels) follow in
/// increasing time order, x before y, each with conditional variance 2^-(k+1) per
/// coordinate. Paths sharing a source prefix therefore agree on shared dyadic times.
template <class NormalSource>
PlanarPath sample_bm_with(int levels, NormalSource&& draw) {
    check_levels(levels);
    const std::size_t n = std::size_t{1} << levels;
    std::vector<Point2> pts(n + 1);
    pts[0] = {0.0, 0.0};
    {
        const double x = draw();
        const double y = draw();
        pts[n] = {x, y};
    }
    for (int k = 1; k <= levels; ++k) {
        const std::size_t h = n >> k;
        const double sd = std::sqrt(std::ldexp(1.0, -(k + 1)));
        for (std::size_t m = h; m < n; m += 2 * h) {
            const double zx = draw();
            const double zy = draw();
            const Point2 mid = 0.5 * (pts[m - h] + pts[m + h]);
            pts[m] = {mid.x + sd * zx, mid.y + sd * zy};
        }
    }
    return PlanarPath(levels, std::move(pts));
}

/// Brownian path from X_0 = 0 drawn from RngStream(seed).
PlanarPath sample_bm(std::uint64_t seed, int levels);

/// Throws std::invalid_argument unless 1 <= i <= T and T divides the step count.
SubpathView subpath(const PlanarPath& path, int i, int T);
SubpathView subpath(std::span<const Point2> polyline, int i, int T);

/// Same polyline with every step cut into `factor` equal sub-steps.
std::vector<Point2> refine_polyline(std::span<const Point2> polyline, int factor);

/// Hölder-norm estimate restricted to dyadic spans 2^-k with every vertex offset.
/// This is a lower bound of the supremum over all time pairs.
double holder_norm(const PlanarPath& path, double alpha);

}  // namespace brownwind
