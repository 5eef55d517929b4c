#include "brownwind/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <stdexcept>

namespace brownwind {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::vector<std::string> validate_params(const ParamSet& p) {
    std::vector<std::string> v;
    if (!(0.0 < p.alpha && p.alpha < 0.5)) v.emplace_back("violates 0<α<1/2");
    if (!(0.0 < p.t && p.t < 0.4)) v.emplace_back("violates 0<t<2/5");
    if (!(0.5 + p.t / 4 < p.m && p.m < 1.0 - p.t)) v.emplace_back("violates 1/2+t/4<m<1-t");
    if (!(0.0 < p.zeta && p.zeta < 2 * p.m - 1.0 - p.t / 2)) v.emplace_back("violates 0<ζ<2m-1-t/2");
    if (!(0.0 < p.s && p.s < 0.5 - p.t / 2)) v.emplace_back("violates 0<s<1/2-t/2");
    if (!(p.t / 2 + p.s < p.delta && p.delta < 0.5)) v.emplace_back("violates t/2+s<δ<1/2");
    const double gap = 4 * p.m - p.t - 2.0 - 2 * p.zeta;
    const bool gamma_ok = p.s > 0.0 && gap > 0.0 && p.gamma > std::max(1.0 / (2 * p.s), 1.0 / gap);
    if (!gamma_ok) v.emplace_back("violates γ>max(1/(2s),1/(4m-t-2-2ζ))");
    return v;
}

std::int64_t floor_pow(std::int64_t N, double e) {
    if (N < 0) throw std::invalid_argument("floor_pow: negative base");
    const long double r = std::pow(static_cast<long double>(N), static_cast<long double>(e));
    const long double nearest = std::round(r);
    if (std::fabs(r - nearest) <= 1e-12L * std::max(1.0L, r)) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::floor(r));
}

std::vector<std::int64_t> gamma_grid(double gamma, std::int64_t n_max) {
    if (!(gamma > 1.0)) throw std::invalid_argument("gamma_grid: gamma must exceed 1");
    std::vector<std::int64_t> out;
    for (std::int64_t K = 1;; ++K) {
        const std::int64_t v = floor_pow(K, gamma);
        if (v > n_max) break;
        if (v > 0 && (out.empty() || out.back() != v)) out.push_back(v);
    }
    return out;
}

namespace {

// Largest element of the gamma grid not exceeding cap (cap >= 1).
std::int64_t gamma_floor(double gamma, std::int64_t cap) {
    auto K = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(cap), 1.0 / gamma)));
    K = std::max<std::int64_t>(K, 1);
    while (K > 1 && floor_pow(K, gamma) > cap) --K;
    while (floor_pow(K + 1, gamma) <= cap) ++K;
    return floor_pow(K, gamma);
}

}  // namespace

double eta(const ParamSet& p, EtaVariant variant) {
    const double rate_gamma = variant == EtaVariant::Paper ? 1.0 / p.gamma - 1.0 : 1.0 / p.gamma;
    return std::min({1.0 - p.m - p.t, rate_gamma, p.delta - p.t / 2 - p.s, p.zeta});
}

const char* to_string(EtaVariant v) noexcept { return v == EtaVariant::Paper ? "paper" : "positive"; }

EtaVariant parse_eta_variant(const std::string& s) {
    if (s == "paper") return EtaVariant::Paper;
    if (s == "positive") return EtaVariant::Positive;
    throw std::invalid_argument("unknown eta variant '" + s + "' (expected paper|positive)");
}

Schedule make_schedule(std::int64_t N, const ParamSet& p, EtaVariant variant) {
    if (N < 1) throw std::invalid_argument("make_schedule: N must be >= 1");
    if (!(p.gamma > 1.0)) throw std::invalid_argument("make_schedule: gamma must exceed 1");
    Schedule s;
    s.N = N;
    s.T = floor_pow(N, p.t);
    s.M = floor_pow(N, p.m);
    s.variant = variant;
    s.eta = eta(p, variant);
    const std::int64_t cap = N - s.shift();
    if (cap < 1)
        throw std::invalid_argument("N too small: N - T - M(T-1) = " + std::to_string(cap) + " < 1 for N=" +
                                    std::to_string(N));
    s.N_prime = gamma_floor(p.gamma, cap);
    return s;
}

Decomposition decompose(std::span<const Point2> polyline, int T, const GridSpec& grid, double band) {
    if (T < 1) throw std::invalid_argument("decompose: T must be >= 1");
    if (polyline.size() < 2) throw std::invalid_argument("decompose: polyline needs at least one edge");
    // Split times i/T must land on vertices.
    std::vector<Point2> refined;
    const std::size_t steps = polyline.size() - 1;
    if (steps % static_cast<std::size_t>(T) != 0) {
        const auto factor = static_cast<std::size_t>(T) / std::gcd(steps, static_cast<std::size_t>(T));
        refined = refine_polyline(polyline, static_cast<int>(factor));
        polyline = refined;
    }
    Decomposition d;
    d.T = T;
    d.chords = winding_field(chord_polygon(polyline, T), grid, band);
    d.whole = winding_field(ClosedLoop::close(polyline), grid, band);
    d.pieces.reserve(static_cast<std::size_t>(T));
    for (int i = 1; i <= T; ++i) d.pieces.push_back(winding_field(ClosedLoop::close(subpath(polyline, i, T)), grid, band));

    d.any_curve = d.whole.on_curve;
    auto merge = [&d](const WindingField& f) {
        for (std::size_t c = 0; c < d.any_curve.size(); ++c) d.any_curve[c] |= f.on_curve[c];
    };
    merge(d.chords);
    for (const auto& f : d.pieces) merge(f);
    return d;
}

AdditivityReport check_additivity(const Decomposition& d) {
    AdditivityReport r;
    const int chord_cap = (d.T + 2) / 2;  // ceil((T+1)/2)
    for (std::size_t c = 0; c < d.any_curve.size(); ++c) {
        if (d.any_curve[c]) continue;
        ++r.checked;
        std::int64_t sum = d.chords.theta[c];
        for (const auto& f : d.pieces) sum += f.theta[c];
        if (sum != d.whole.theta[c]) ++r.violations;
        if (std::abs(d.chords.theta[c]) > chord_cap) ++r.chord_bound_violations;
    }
    return r;
}

SandwichReport verify_decomposition(const Decomposition& d, int N, int M, const TestFunction& f) {
    const std::int64_t T = d.T;
    if (N < 1 || M < 1) throw std::invalid_argument("verify_decomposition: N and M must be positive");
    if (!(T * (M + 1) < N))
        throw std::invalid_argument("verify_decomposition: requires T(M+1) < N (T=" + std::to_string(T) +
                                    ", M=" + std::to_string(M) + ", N=" + std::to_string(N) + ")");
    const GridSpec& g = d.grid();
    const std::int64_t shift = T + static_cast<std::int64_t>(M) * (T - 1);
    const std::int64_t upper_level = N - shift;
    const std::int64_t lower_level = N + shift;

    SandwichReport r;
    double sum_center = 0.0, sum_upper_pieces = 0.0, sum_lower_pieces = 0.0, sum_pairs = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t c = g.index(i, j);
            const double w = f(g.center(i, j));
            if (w < 0.0) throw std::invalid_argument("verify_decomposition: f must be non-negative");
            if (d.any_curve[c]) continue;
            ++r.cells_checked;
            std::int64_t up = 0, down = 0, big = 0;
            for (const auto& piece : d.pieces) {
                const std::int64_t v = piece.theta[c];
                if (v >= upper_level) ++up;
                if (v >= lower_level) ++down;
                if (std::abs(v) >= M) ++big;
            }
            const std::int64_t pairs = big * (big - 1) / 2;
            const std::int64_t in = d.whole.theta[c] >= N ? 1 : 0;
            if (in > up + pairs || down - pairs > in) ++r.pointwise_violations;
            if (w == 0.0) continue;
            sum_center += static_cast<double>(in) * w;
            sum_upper_pieces += static_cast<double>(up) * w;
            sum_lower_pieces += static_cast<double>(down) * w;
            sum_pairs += static_cast<double>(pairs) * w;
        }
    }
    const double area = g.cell_area();
    r.center = sum_center * area;
    r.upper = (sum_upper_pieces + sum_pairs) * area;
    r.lower = (sum_lower_pieces - sum_pairs) * area;
    return r;
}

SandwichReport verify_decomposition(std::span<const Point2> polyline, int N, int T, int M, const GridSpec& grid,
                                    const TestFunction& f) {
    if (static_cast<std::int64_t>(T) * (M + 1) >= N)
        throw std::invalid_argument("verify_decomposition: requires T(M+1) < N");
    return verify_decomposition(decompose(polyline, T, grid, default_band(grid)), N, M, f);
}

MeasurePair werner_statistic(const WindingField& field, int N) {
    if (N < 1) throw std::invalid_argument("werner_statistic: N must be >= 1");
    const MeasurePair a = threshold_area(ThresholdSet::one_sided(field, N));
    const double scale = kTwoPi * N;
    return {scale * a.off_curve, scale * a.inclusive};
}

MeasurePair theorem_discrepancy(const PlanarPath& path, const WindingField& field, const TestFunction& f, int N) {
    const MeasurePair mu = mu_N_f(field, N, f);
    const double nu = nu_f(path, f);
    return {std::abs(mu.off_curve - nu), std::abs(mu.inclusive - nu)};
}

double rate_bound_value(double holder, const TestFunction& f, int N, const ParamSet& p, EtaVariant variant) {
    if (!std::isfinite(f.sup_norm)) throw std::invalid_argument("rate_bound: f must be bounded");
    if (N < 1) throw std::invalid_argument("rate_bound: N must be >= 1");
    const double nn = static_cast<double>(N);
    return f.modulus(2.0 * holder * std::pow(nn, -p.alpha * p.t)) + f.sup_norm * std::pow(nn, -eta(p, variant));
}

RateReport rate_bound(const PlanarPath& path, const WindingField& field, const TestFunction& f, int N,
                      const ParamSet& p, EtaVariant variant) {
    if (auto v = validate_params(p); !v.empty()) throw std::invalid_argument("rate_bound: invalid params: " + v.front());
    RateReport r;
    r.bound = rate_bound_value(holder_norm(path, p.alpha), f, N, p, variant);
    r.discrepancy = theorem_discrepancy(path, field, f, N);
    r.ratio = {r.discrepancy.off_curve / r.bound, r.discrepancy.inclusive / r.bound};
    return r;
}

EventFlags event_flags(std::span<const WindingField> pieces, const Schedule& sched, const ParamSet& p,
                       bool include_band) {
    if (static_cast<std::int64_t>(pieces.size()) != sched.T)
        throw std::invalid_argument("event_flags: expected one field per sub-loop");
    EventFlags ev;
    ev.schedule = sched;
    const double T = static_cast<double>(sched.T);
    const double Np = static_cast<double>(sched.N_prime);
    const double N = static_cast<double>(sched.N);
    ev.e_limit = std::pow(T, -0.5 + p.s / p.t);
    ev.f_limit = std::pow(N, -1.0 - p.zeta);
    ev.g_limit = 2.0 / T;

    for (const auto& piece : pieces) {
        const double area = threshold_area(ThresholdSet::one_sided(piece, static_cast<int>(sched.N_prime))).get(include_band);
        ev.e_worst = std::max(ev.e_worst, std::pow(Np, p.delta) * std::abs(kTwoPi * Np * area - 1.0 / T));
        ev.g_worst = std::max(ev.g_worst, kTwoPi * N * area);
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            ev.pair_sum += threshold_area(ThresholdSet::pair_absolute(pieces[i], pieces[j], static_cast<int>(sched.M)))
                               .get(include_band);
    ev.E = ev.e_worst <= ev.e_limit;
    ev.F = ev.pair_sum <= ev.f_limit;
    ev.G = ev.g_worst <= ev.g_limit;
    return ev;
}

EventFlags event_flags(const PlanarPath& path, std::int64_t N, const ParamSet& p, const GridSpec& grid,
                       bool include_band) {
    const Schedule sched = make_schedule(N, p, EtaVariant::Positive);
    std::vector<WindingField> pieces;
    const int T = static_cast<int>(sched.T);
    for (int i = 1; i <= T; ++i) pieces.push_back(winding_field(ClosedLoop::close(subpath(path, i, T)), grid));
    return event_flags(pieces, sched, p, include_band);
}

MeasurePair conjecture_statistic(const WindingField& a, const WindingField& b, int N) {
    if (N < 1) throw std::invalid_argument("conjecture_statistic: N must be >= 1");
    const MeasurePair area = threshold_area(ThresholdSet::joint(a, b, N));
    const double scale = static_cast<double>(N) * N;
    return {scale * area.off_curve, scale * area.inclusive};
}

MeasurePair conjecture_statistic(const PlanarPath& a, const PlanarPath& b, int N, const GridSpec& grid) {
    return conjecture_statistic(winding_field(ClosedLoop::close(a), grid), winding_field(ClosedLoop::close(b), grid), N);
}

}  // namespace brownwind
