#include "brownwind/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace brownwind {

double TestFunction::modulus(double t) const noexcept {
    const double cap = 2.0 * sup_norm;
    if (!std::isfinite(lipschitz)) return cap;
    if (lipschitz == 0.0) return 0.0;
    return std::min(cap, lipschitz * t);
}

TestFunction TestFunction::constant(double c) {
    return {c == 1.0 ? "one" : "const", [c](Point2) { return c; }, std::abs(c), 0.0};
}

TestFunction TestFunction::gaussian_bump(Point2 center, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_bump: sigma must be positive");
    const double inv = 1.0 / (2.0 * sigma * sigma);
    return {"gauss_bump",
            [center, inv](Point2 z) {
                const Point2 d = z - center;
                return std::exp(-(d.x * d.x + d.y * d.y) * inv);
            },
            1.0, std::exp(-0.5) / sigma};
}

TestFunction TestFunction::linear(Point2 a, double b) {
    return {"linear", [a, b](Point2 z) { return a.x * z.x + a.y * z.y + b; },
            std::numeric_limits<double>::infinity(), norm(a)};
}

ThresholdSet::ThresholdSet(Mode mode, const WindingField* a, const WindingField* b, int level)
    : mode_(mode), a_(a), b_(b), level_(level) {
    if (b_ && !(a_->grid == b_->grid)) throw std::invalid_argument("threshold set: fields are on different grids");
    if (a_->theta.size() != a_->grid.cells() || (b_ && b_->theta.size() != b_->grid.cells()))
        throw std::invalid_argument("threshold set: field size does not match its grid");
}

ThresholdSet ThresholdSet::one_sided(const WindingField& field, int level) {
    return {Mode::OneSided, &field, nullptr, level};
}

ThresholdSet ThresholdSet::pair_absolute(const WindingField& a, const WindingField& b, int level) {
    return {Mode::PairAbsolute, &a, &b, level};
}

ThresholdSet ThresholdSet::joint(const WindingField& a, const WindingField& b, int level) {
    return {Mode::JointOneSided, &a, &b, level};
}

bool ThresholdSet::member(std::size_t cell) const noexcept {
    switch (mode_) {
        case Mode::OneSided:
            return a_->theta[cell] >= level_;
        case Mode::PairAbsolute:
            return std::abs(a_->theta[cell]) >= level_ && std::abs(b_->theta[cell]) >= level_;
        case Mode::JointOneSided:
            return a_->theta[cell] >= level_ && b_->theta[cell] >= level_;
    }
    return false;
}

bool ThresholdSet::on_curve(std::size_t cell) const noexcept {
    return a_->on_curve[cell] != 0 || (b_ && b_->on_curve[cell] != 0);
}

MeasurePair threshold_area(const ThresholdSet& set) {
    const std::size_t n = set.grid().cells();
    std::size_t off = 0, all = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (!set.member(c)) continue;
        ++all;
        if (!set.on_curve(c)) ++off;
    }
    const double area = set.grid().cell_area();
    return {static_cast<double>(off) * area, static_cast<double>(all) * area};
}

MeasurePair f_measure(const ThresholdSet& set, const TestFunction& f) {
    const GridSpec& g = set.grid();
    double off = 0.0, all = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t c = g.index(i, j);
            if (!set.member(c)) continue;
            const double v = f(g.center(i, j));
            all += v;
            if (!set.on_curve(c)) off += v;
        }
    }
    const double area = g.cell_area();
    return {off * area, all * area};
}

MeasurePair mu_N_f(const WindingField& field, int N, const TestFunction& f) {
    if (N < 1) throw std::invalid_argument("mu_N_f: N must be >= 1");
    const MeasurePair m = f_measure(ThresholdSet::one_sided(field, N), f);
    const double scale = 2.0 * std::numbers::pi * N;
    return {scale * m.off_curve, scale * m.inclusive};
}

double OccupationHistogram::total() const noexcept {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

namespace {

int cell_of(double v, double origin, double step, int n) {
    const int k = static_cast<int>(std::floor((v - origin) / step));
    return std::clamp(k, 0, n - 1);
}

// Parameters in (0, 1) where a -> b crosses the lines origin + k * step.
void line_hits(double a, double b, double origin, double step, std::vector<double>& out) {
    if (a == b) return;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const long k0 = static_cast<long>(std::floor((lo - origin) / step)) + 1;
    const long k1 = static_cast<long>(std::ceil((hi - origin) / step)) - 1;
    for (long k = k0; k <= k1; ++k) {
        const double u = (origin + static_cast<double>(k) * step - a) / (b - a);
        if (u > 0.0 && u < 1.0) out.push_back(u);
    }
}

}  // namespace

OccupationHistogram occupation_measure(const PlanarPath& path, const GridSpec& grid) {
    grid.validate();
    const Box box = bounding_box(path.points());
    if (box.x0 < grid.x0 || box.x1 > grid.x1 || box.y0 < grid.y0 || box.y1 > grid.y1)
        throw std::invalid_argument("occupation_measure: path exits the grid");

    OccupationHistogram hist{grid, std::vector<double>(grid.cells(), 0.0)};
    const double dt = path.dt();
    const double dx = grid.dx(), dy = grid.dy();
    std::vector<double> cuts;
    for (std::size_t k = 0; k < path.steps(); ++k) {
        const Point2 a = path[k];
        const Point2 b = path[k + 1];
        cuts.clear();
        cuts.push_back(0.0);
        line_hits(a.x, b.x, grid.x0, dx, cuts);
        line_hits(a.y, b.y, grid.y0, dy, cuts);
        cuts.push_back(1.0);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double w = cuts[c + 1] - cuts[c];
            if (w <= 0.0) continue;
            const double um = 0.5 * (cuts[c] + cuts[c + 1]);
            const Point2 mid = a + um * (b - a);
            const int i = cell_of(mid.x, grid.x0, dx, grid.nx);
            const int j = cell_of(mid.y, grid.y0, dy, grid.ny);
            hist.mass[grid.index(i, j)] += dt * w;
        }
    }
    return hist;
}

double nu_f(const PlanarPath& path, const TestFunction& f) {
    double s = 0.0;
    for (std::size_t k = 0; k < path.steps(); ++k) s += f(path[k]);
    return s * path.dt();
}

double histogram_integral(const OccupationHistogram& hist, const TestFunction& f) {
    double s = 0.0;
    for (int j = 0; j < hist.grid.ny; ++j)
        for (int i = 0; i < hist.grid.nx; ++i) {
            const double m = hist.mass[hist.grid.index(i, j)];
            if (m != 0.0) s += f(hist.grid.center(i, j)) * m;
        }
    return s;
}

}  // namespace brownwind
