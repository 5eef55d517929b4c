#include "brownwind/winding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brownwind {

ClosedLoop::ClosedLoop(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("loop: needs at least one vertex");
}

ClosedLoop ClosedLoop::close(std::span<const Point2> polyline) {
    return ClosedLoop(std::vector<Point2>(polyline.begin(), polyline.end()));
}

ClosedLoop ClosedLoop::reversed() const {
    std::vector<Point2> v(vertices_.rbegin(), vertices_.rend());
    return ClosedLoop(std::move(v));
}

namespace {

bool on_segment(Point2 z, Point2 p, Point2 q) noexcept {
    const double cross = (q.x - p.x) * (z.y - p.y) - (q.y - p.y) * (z.x - p.x);
    if (cross != 0.0) return false;
    return std::min(p.x, q.x) <= z.x && z.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= z.y &&
           z.y <= std::max(p.y, q.y);
}

// Rows j whose center ordinate lies in [lo, hi) (half-open) or [lo, hi] (closed).
std::pair<int, int> row_range(const GridSpec& g, double lo, double hi, bool closed) {
    const double dy = g.dy();
    int j0 = static_cast<int>(std::floor((lo - g.y0) / dy - 0.5));
    int j1 = static_cast<int>(std::ceil((hi - g.y0) / dy - 0.5));
    j0 = std::clamp(j0 - 1, 0, g.ny);
    j1 = std::clamp(j1 + 1, 0, g.ny);
    while (j0 < j1 && g.center_y(j0) < lo) ++j0;
    if (closed) {
        while (j1 > j0 && g.center_y(j1 - 1) > hi) --j1;
    } else {
        while (j1 > j0 && g.center_y(j1 - 1) >= hi) --j1;
    }
    return {j0, j1};
}

}  // namespace

PointWinding winding_number_point(const ClosedLoop& loop, Point2 z) {
    int w = 0;
    bool on = false;
    for (std::size_t k = 0; k < loop.edge_count(); ++k) {
        const Point2 p = loop.edge_start(k);
        const Point2 q = loop.edge_end(k);
        if (on_segment(z, p, q)) on = true;
        if (auto c = edge_crossing(p, q, z.y); c && c->x > z.x) w += c->sign;
    }
    return {w, on};
}

std::int32_t WindingField::max_theta() const noexcept {
    return theta.empty() ? 0 : *std::max_element(theta.begin(), theta.end());
}

std::int32_t WindingField::min_theta() const noexcept {
    return theta.empty() ? 0 : *std::min_element(theta.begin(), theta.end());
}

WindingField winding_field(const ClosedLoop& loop, const GridSpec& grid, double band) {
    grid.validate();
    if (!(band >= 0.0)) throw std::invalid_argument("winding_field: band must be non-negative");

    // Bucket crossings by row (CSR layout), then sweep each row right to left.
    const std::size_t edges = loop.edge_count();
    std::vector<std::size_t> offset(static_cast<std::size_t>(grid.ny) + 1, 0);
    for (std::size_t k = 0; k < edges; ++k) {
        const Point2 p = loop.edge_start(k);
        const Point2 q = loop.edge_end(k);
        if (p.y == q.y) continue;
        const auto [j0, j1] = row_range(grid, std::min(p.y, q.y), std::max(p.y, q.y), false);
        for (int j = j0; j < j1; ++j) ++offset[static_cast<std::size_t>(j) + 1];
    }
    for (std::size_t j = 0; j < static_cast<std::size_t>(grid.ny); ++j) offset[j + 1] += offset[j];

    std::vector<EdgeCrossing> crossings(offset.back());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t k = 0; k < edges; ++k) {
        const Point2 p = loop.edge_start(k);
        const Point2 q = loop.edge_end(k);
        if (p.y == q.y) continue;
        const auto [j0, j1] = row_range(grid, std::min(p.y, q.y), std::max(p.y, q.y), false);
        for (int j = j0; j < j1; ++j) {
            const auto c = edge_crossing(p, q, grid.center_y(j));
            if (!c) throw std::logic_error("winding_field: row range disagrees with crossing rule");
            crossings[fill[static_cast<std::size_t>(j)]++] = *c;
        }
    }

    WindingField field{grid, std::vector<std::int32_t>(grid.cells(), 0),
                       std::vector<std::uint8_t>(grid.cells(), 0)};
    for (int j = 0; j < grid.ny; ++j) {
        auto first = crossings.begin() + static_cast<std::ptrdiff_t>(offset[static_cast<std::size_t>(j)]);
        auto last = crossings.begin() + static_cast<std::ptrdiff_t>(offset[static_cast<std::size_t>(j) + 1]);
        if (first == last) continue;
        std::sort(first, last, [](const EdgeCrossing& a, const EdgeCrossing& b) { return a.x < b.x; });
        std::int32_t sum = 0;
        auto* row = field.theta.data() + grid.index(0, j);
        for (int i = grid.nx - 1; i >= 0; --i) {
            const double cx = grid.center_x(i);
            while (last != first && (last - 1)->x > cx) {
                --last;
                sum += last->sign;
            }
            row[i] = sum;
        }
    }
    mark_band(loop, grid, band, field.on_curve);
    return field;
}

void mark_band(const ClosedLoop& loop, const GridSpec& grid, double band, std::span<std::uint8_t> mask) {
    if (mask.size() != grid.cells()) throw std::invalid_argument("mark_band: mask size does not match grid");
    const double dx = grid.dx();
    for (std::size_t k = 0; k < loop.edge_count(); ++k) {
        const Point2 a = loop.edge_start(k);
        const Point2 b = loop.edge_end(k);
        const auto [j0, j1] = row_range(grid, std::min(a.y, b.y) - band, std::max(a.y, b.y) + band, true);
        for (int j = j0; j < j1; ++j) {
            const double c = grid.center_y(j);
            double xlo, xhi;
            if (a.y == b.y) {
                xlo = std::min(a.x, b.x);
                xhi = std::max(a.x, b.x);
            } else {
                double u1 = std::clamp((c - band - a.y) / (b.y - a.y), 0.0, 1.0);
                double u2 = std::clamp((c + band - a.y) / (b.y - a.y), 0.0, 1.0);
                const double xa = a.x + u1 * (b.x - a.x);
                const double xb = a.x + u2 * (b.x - a.x);
                xlo = std::min(xa, xb);
                xhi = std::max(xa, xb);
            }
            int i0 = static_cast<int>(std::floor((xlo - band - grid.x0) / dx - 0.5)) - 1;
            int i1 = static_cast<int>(std::ceil((xhi + band - grid.x0) / dx - 0.5)) + 2;
            i0 = std::clamp(i0, 0, grid.nx);
            i1 = std::clamp(i1, 0, grid.nx);
            for (int i = i0; i < i1; ++i) {
                auto& cell = mask[grid.index(i, j)];
                if (!cell && segment_distance(grid.center(i, j), a, b) <= band) cell = 1;
            }
        }
    }
}

ClosedLoop chord_polygon(std::span<const Point2> polyline, int T) {
    std::vector<Point2> v;
    v.reserve(static_cast<std::size_t>(T) + 1);
    for (int i = 1; i <= T; ++i) {
        const auto view = subpath(polyline, i, T);
        if (i == 1) v.push_back(view.points.front());
        v.push_back(view.points.back());
    }
    return ClosedLoop(std::move(v));
}

}  // namespace brownwind
