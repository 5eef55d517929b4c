#include "brownwind/geometry.hpp"

#include <algorithm>
#include <string>

namespace brownwind {

double segment_distance(Point2 z, Point2 a, Point2 b) noexcept {
    const Point2 ab = b - a;
    const Point2 az = z - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0) return norm(az);
    const double u = std::clamp((az.x * ab.x + az.y * ab.y) / len2, 0.0, 1.0);
    return norm(z - (a + u * ab));
}

Box bounding_box(std::span<const Point2> pts) {
    if (pts.empty()) throw std::invalid_argument("bounding_box: empty point set");
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const auto& p : pts) {
        b.x0 = std::min(b.x0, p.x);
        b.x1 = std::max(b.x1, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

void GridSpec::validate() const {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("grid: nx and ny must be positive (got " + std::to_string(nx) + "x" +
                                    std::to_string(ny) + ")");
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("grid: empty bounding box");
    if (!std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) || !std::isfinite(y1))
        throw std::invalid_argument("grid: non-finite bounding box");
}

GridSpec GridSpec::fitted(std::span<const Point2> pts, int nx, int ny, int pad_cells) {
    if (pad_cells < 0) throw std::invalid_argument("grid: negative padding");
    if (nx <= 2 * pad_cells || ny <= 2 * pad_cells)
        throw std::invalid_argument("grid: resolution too small for the requested padding");
    const Box b = bounding_box(pts);
    double wx = b.x1 - b.x0;
    double wy = b.y1 - b.y0;
    if (wx == 0.0 && wy == 0.0) {
        wx = wy = 1.0;
    } else if (wx == 0.0) {
        wx = wy;
    } else if (wy == 0.0) {
        wy = wx;
    }
    const double cx = wx / (nx - 2 * pad_cells);
    const double cy = wy / (ny - 2 * pad_cells);
    const double mx = 0.5 * (b.x0 + b.x1);
    const double my = 0.5 * (b.y0 + b.y1);
    GridSpec g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = mx - 0.5 * nx * cx;
    g.x1 = mx + 0.5 * nx * cx;
    g.y0 = my - 0.5 * ny * cy;
    g.y1 = my + 0.5 * ny * cy;
    g.validate();
    return g;
}

}  // namespace brownwind
