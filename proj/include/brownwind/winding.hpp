#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "brownwind/geometry.hpp"
#include "brownwind/sampling.hpp"

namespace brownwind {

/// Closed polyline: the edges are v[0]->v[1], ..., v[n-1]->v[0].
class ClosedLoop {
public:
    explicit ClosedLoop(std::vector<Point2> vertices);

    /// Loop obtained by closing an open polyline with the segment from its end to its start.
    static ClosedLoop close(std::span<const Point2> polyline);
    static ClosedLoop close(const PlanarPath& path) { return close(path.points()); }
    static ClosedLoop close(const SubpathView& view) { return close(view.points); }

    std::span<const Point2> vertices() const noexcept { return vertices_; }
    std::size_t edge_count() const noexcept { return vertices_.size(); }
    Point2 edge_start(std::size_t k) const noexcept { return vertices_[k]; }
    Point2 edge_end(std::size_t k) const noexcept { return vertices_[k + 1 == vertices_.size() ? 0 : k + 1]; }

    /// Same geometry traversed backwards.
    ClosedLoop reversed() const;

private:
    std::vector<Point2> vertices_;
};

/// Signed crossing of edge p->q with the horizontal line at ordinate y under the
/// half-open rule: upward edges count when p.y <= y < q.y, downward ones when
/// q.y <= y < p.y. The abscissa is computed from the lower endpoint so that an
/// edge and its reverse produce bit-identical values.
struct EdgeCrossing {
    double x;
    int sign;
};

inline std::optional<EdgeCrossing> edge_crossing(Point2 p, Point2 q, double y) noexcept {
    int sign;
    Point2 lo, hi;
    if (p.y <= y && y < q.y) {
        sign = 1, lo = p, hi = q;
    } else if (q.y <= y && y < p.y) {
        sign = -1, lo = q, hi = p;
    } else {
        return std::nullopt;
    }
    return EdgeCrossing{lo.x + (y - lo.y) * (hi.x - lo.x) / (hi.y - lo.y), sign};
}

struct PointWinding {
    int value;
    bool on_curve;  // z lies exactly on an edge; value is unreliable
};

/// Winding number of `loop` around `z` by signed crossings of the rightward ray from z.
PointWinding winding_number_point(const ClosedLoop& loop, Point2 z);

struct WindingField {
    GridSpec grid;
    std::vector<std::int32_t> theta;
    std::vector<std::uint8_t> on_curve;

    std::int32_t at(int i, int j) const noexcept { return theta[grid.index(i, j)]; }
    bool curve_at(int i, int j) const noexcept { return on_curve[grid.index(i, j)] != 0; }
    std::int32_t max_theta() const noexcept;
    std::int32_t min_theta() const noexcept;
};

/// Default on-curve band: half the cell diagonal.
inline double default_band(const GridSpec& grid) noexcept { return 0.5 * grid.cell_diagonal(); }

/// Scanline winding field evaluated at every cell center. Matches
/// winding_number_point cell by cell. Cells whose center lies within `band` of an
/// edge are flagged in on_curve.
WindingField winding_field(const ClosedLoop& loop, const GridSpec& grid, double band);
inline WindingField winding_field(const ClosedLoop& loop, const GridSpec& grid) {
    return winding_field(loop, grid, default_band(grid));
}

/// Marks cells within `band` of any edge of `loop` (OR-ed into `mask`).
void mark_band(const ClosedLoop& loop, const GridSpec& grid, double band, std::span<std::uint8_t> mask);

/// Polygon through X_0, X_{1/T}, ..., X_1 (closing edge X_1 -> X_0).
ClosedLoop chord_polygon(std::span<const Point2> polyline, int T);
inline ClosedLoop chord_polygon(const PlanarPath& path, int T) { return chord_polygon(path.points(), T); }

}  // namespace brownwind
