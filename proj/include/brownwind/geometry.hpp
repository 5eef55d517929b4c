#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace brownwind {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator*(double s, Point2 a) noexcept { return {s * a.x, s * a.y}; }

inline double norm(Point2 p) noexcept { return std::hypot(p.x, p.y); }

/// Euclidean distance from `z` to the closed segment [a, b].
double segment_distance(Point2 z, Point2 a, Point2 b) noexcept;

struct Box {
    double x0, y0, x1, y1;
};

/// Axis-aligned bounding box; throws on an empty input.
Box bounding_box(std::span<const Point2> pts);

/// Regular grid of nx * ny cells over [x0, x1] x [y0, y1].
/// Cell (i, j) has its center at (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy);
/// cells are stored row-major with j the row index.
struct GridSpec {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    int nx = 1, ny = 1;

    /// Throws std::invalid_argument when the box is empty or a count is < 1.
    void validate() const;

    double dx() const noexcept { return (x1 - x0) / nx; }
    double dy() const noexcept { return (y1 - y0) / ny; }
    double cell_area() const noexcept { return dx() * dy(); }
    double cell_diagonal() const noexcept { return std::hypot(dx(), dy()); }
    double center_x(int i) const noexcept { return x0 + (i + 0.5) * dx(); }
    double center_y(int j) const noexcept { return y0 + (j + 0.5) * dy(); }
    Point2 center(int i, int j) const noexcept { return {center_x(i), center_y(j)}; }
    std::size_t cells() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

    /// Bounding box of `pts` padded by `pad_cells` cells on every side.
    /// A zero extent along one axis borrows the other axis' extent (or 1).
    static GridSpec fitted(std::span<const Point2> pts, int nx, int ny, int pad_cells = 2);
};

}  // namespace brownwind
