#include "brownwind/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace brownwind {

void check_levels(int levels) {
    if (levels < 0 || levels > kMaxLevels)
        throw std::invalid_argument("levels must lie in [0, " + std::to_string(kMaxLevels) + "], got " +
                                    std::to_string(levels));
}

PlanarPath::PlanarPath(int levels, std::vector<Point2> points) : levels_(levels), points_(std::move(points)) {
    check_levels(levels);
    if (points_.size() != (std::size_t{1} << levels) + 1)
        throw std::invalid_argument("path: expected 2^levels + 1 vertices");
}

PlanarPath sample_bm(std::uint64_t seed, int levels) {
    RngStream rng(seed);
    return sample_bm_with(levels, [&rng] { return rng.normal(); });
}

SubpathView subpath(std::span<const Point2> polyline, int i, int T) {
    if (polyline.size() < 2) throw std::invalid_argument("subpath: polyline needs at least one edge");
    const std::size_t steps = polyline.size() - 1;
    if (T < 1 || steps % static_cast<std::size_t>(T) != 0)
        throw std::invalid_argument("subpath: T=" + std::to_string(T) + " does not divide the step count " +
                                    std::to_string(steps));
    if (i < 1 || i > T)
        throw std::invalid_argument("subpath: index " + std::to_string(i) + " outside 1.." + std::to_string(T));
    const std::size_t len = steps / static_cast<std::size_t>(T);
    return {polyline.subspan(static_cast<std::size_t>(i - 1) * len, len + 1), i, T};
}

SubpathView subpath(const PlanarPath& path, int i, int T) { return subpath(path.points(), i, T); }

std::vector<Point2> refine_polyline(std::span<const Point2> polyline, int factor) {
    if (factor < 1) throw std::invalid_argument("refine_polyline: factor must be >= 1");
    if (polyline.empty()) return {};
    std::vector<Point2> out;
    out.reserve((polyline.size() - 1) * static_cast<std::size_t>(factor) + 1);
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
        const Point2 a = polyline[k], b = polyline[k + 1];
        out.push_back(a);
        for (int m = 1; m < factor; ++m) out.push_back(a + (static_cast<double>(m) / factor) * (b - a));
    }
    out.push_back(polyline.back());
    return out;
}

double holder_norm(const PlanarPath& path, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("holder_norm: alpha must lie in (0, 1/2)");
    const auto pts = path.points();
    const std::size_t n = path.steps();
    double best = 0.0;
    for (int k = 0; k <= path.levels(); ++k) {
        const std::size_t span = n >> k;
        const double scale = std::pow(2.0, k * alpha);
        double widest = 0.0;
        for (std::size_t j = 0; j + span <= n; ++j) widest = std::max(widest, norm(pts[j + span] - pts[j]));
        best = std::max(best, widest * scale);
    }
    return best;
}

}  // namespace brownwind
