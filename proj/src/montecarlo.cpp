#include "brownwind/montecarlo.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace brownwind {

void McConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    check_levels(levels);
    if (grid < 5) throw std::invalid_argument("grid must have at least 5 cells per axis");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (N_list.empty()) throw std::invalid_argument("N list must be non-empty");
    for (std::size_t k = 0; k < N_list.size(); ++k) {
        if (N_list[k] < 1) throw std::invalid_argument("N values must be >= 1");
        if (k > 0 && N_list[k] <= N_list[k - 1]) throw std::invalid_argument("N list must be strictly ascending");
    }
    if (auto v = validate_params(params); !v.empty()) throw std::invalid_argument("params: " + v.front());
    if (!(bump_sigma > 0.0)) throw std::invalid_argument("bump sigma must be positive");
    if (!(tail_delta < 0.5)) throw std::invalid_argument("tail delta must be < 1/2");
    for (int T : pair_T)
        if (T < 1) throw std::invalid_argument("pair T values must be >= 1");
    for (int M : pair_M)
        if (M < 1) throw std::invalid_argument("pair M values must be >= 1");
}

PlanarPath replicate_path(const McConfig& cfg, int r, int levels) {
    RngStream rng(replicate_seed(cfg.master_seed, static_cast<std::uint64_t>(r)), static_cast<std::uint64_t>(r));
    return sample_bm_with(levels, [&rng] { return rng.normal(); });
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] > 0.0 && y[k] > 0.0) {
            lx.push_back(std::log(x[k]));
            ly.push_back(std::log(y[k]));
        }
    if (lx.size() < 2) throw std::invalid_argument("loglog_slope: need two positive points");
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_slope: x values coincide");
    return sxy / sxx;
}

namespace {

struct ReplicateOut {
    std::vector<MeasurePair> werner;  // per N
    std::vector<double> discrepancy;  // per (N, f), selected variant
    std::vector<double> bound;
};

std::vector<TestFunction> study_functions(const McConfig& cfg) {
    return {TestFunction::constant(1.0), TestFunction::gaussian_bump({0.0, 0.0}, cfg.bump_sigma)};
}

ReplicateOut run_one(const McConfig& cfg, int r) {
    const PlanarPath path = replicate_path(cfg, r);
    const GridSpec grid = GridSpec::fitted(path.points(), cfg.grid, cfg.grid);
    const WindingField field = winding_field(ClosedLoop::close(path), grid);
    const double holder = holder_norm(path, cfg.params.alpha);
    const auto fns = study_functions(cfg);
    std::vector<double> nu;
    for (const auto& f : fns) nu.push_back(nu_f(path, f));

    ReplicateOut out;
    for (int N : cfg.N_list) {
        out.werner.push_back(werner_statistic(field, N));
        for (std::size_t k = 0; k < fns.size(); ++k) {
            const double mu = mu_N_f(field, N, fns[k]).get(cfg.include_band);
            out.discrepancy.push_back(std::abs(mu - nu[k]));
            out.bound.push_back(rate_bound_value(holder, fns[k], N, cfg.params, cfg.eta_variant));
        }
    }
    return out;
}

}  // namespace

std::vector<TailRow> tail_from_samples(int N, double delta, const std::vector<double>& stats,
                                       const std::vector<double>& R_values) {
    if (!(delta < 0.5)) throw std::invalid_argument("tail table: delta must be < 1/2");
    std::vector<double> dev;
    dev.reserve(stats.size());
    const double scale = std::pow(static_cast<double>(N), delta);
    for (double s : stats) dev.push_back(scale * std::abs(s - 1.0));
    std::vector<TailRow> rows;
    for (double R : R_values) {
        const auto hits = std::count_if(dev.begin(), dev.end(), [R](double d) { return d >= R; });
        rows.push_back({N, R, dev.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(dev.size())});
    }
    return rows;
}

McSummary run_replicates(const McConfig& cfg) {
    cfg.validate();
    const auto results = run_indexed<ReplicateOut>(cfg.replicates, cfg.threads,
                                                   [&cfg](int r) { return run_one(cfg, r); });
    McSummary s;
    if (!results.all_ok()) {
        s.valid = false;
        s.error = results.error;
    }
    const auto fns = study_functions(cfg);
    const std::size_t nf = fns.size();
    for (std::size_t n = 0; n < cfg.N_list.size(); ++n) {
        const int N = cfg.N_list[n];
        std::vector<double> stats;
        for (int r = 0; r < cfg.replicates; ++r) {
            const auto slot = static_cast<std::size_t>(r);
            if (!results.ok[slot]) continue;
            const MeasurePair w = results.values[slot].werner[n];
            s.werner.push_back({N, r, w.off_curve, w.inclusive});
            stats.push_back(w.get(cfg.include_band));
        }
        PerNSummary p;
        p.N = N;
        const double R = static_cast<double>(stats.size());
        if (!stats.empty()) {
            p.mean = std::accumulate(stats.begin(), stats.end(), 0.0) / R;
            double ss = 0.0, l2 = 0.0;
            for (double x : stats) {
                ss += (x - p.mean) * (x - p.mean);
                l2 += (x - 1.0) * (x - 1.0);
            }
            p.variance = stats.size() > 1 ? ss / (R - 1.0) : 0.0;
            p.l2_error = l2 / R;
            p.ci_half = 1.96 * std::sqrt(p.variance / R);
            p.median = median(stats);
        }
        s.per_n.push_back(p);
        auto tail = tail_from_samples(N, cfg.tail_delta, stats, cfg.tail_R);
        s.tail.insert(s.tail.end(), tail.begin(), tail.end());

        for (std::size_t k = 0; k < nf; ++k) {
            ReplicateTheorem t{N, fns[k].name, {}, {}, {}};
            for (int r = 0; r < cfg.replicates; ++r) {
                const auto slot = static_cast<std::size_t>(r);
                if (!results.ok[slot]) continue;
                const double d = results.values[slot].discrepancy[n * nf + k];
                const double b = results.values[slot].bound[n * nf + k];
                t.discrepancy.push_back(d);
                t.bound.push_back(b);
                t.ratio.push_back(d / b);
            }
            s.theorem.push_back({N, t.f_name, median(t.discrepancy), median(t.bound), median(t.ratio)});
            s.theorem_samples.push_back(std::move(t));
        }
    }
    s.completed = static_cast<int>(std::count(results.ok.begin(), results.ok.end(), 1));
    return s;
}

std::vector<TailRow> tail_table(const McConfig& cfg, int N, double delta, const std::vector<double>& R_values) {
    if (!(delta < 0.5)) throw std::invalid_argument("tail table: delta must be < 1/2");
    McConfig sub = cfg;
    sub.N_list = {N};
    sub.tail_delta = delta;
    sub.tail_R = R_values;
    const McSummary s = run_replicates(sub);
    if (!s.valid) throw std::runtime_error("tail table: " + s.error);
    return s.tail;
}

std::vector<PairMomentRow> pair_moment_table(const McConfig& cfg, const std::vector<int>& T_values,
                                             const std::vector<int>& M_values) {
    cfg.validate();
    const std::size_t steps = std::size_t{1} << cfg.levels;
    for (int T : T_values)
        if (T < 1 || steps % static_cast<std::size_t>(T) != 0)
            throw std::invalid_argument("pair moment: T=" + std::to_string(T) + " does not divide the step count");
    for (int M : M_values)
        if (M < 1) throw std::invalid_argument("pair moment: M must be >= 1");

    using Sums = std::vector<double>;  // (T, M) row-major
    const auto results = run_indexed<Sums>(cfg.replicates, cfg.threads, [&](int r) {
        const PlanarPath path = replicate_path(cfg, r);
        const GridSpec grid = GridSpec::fitted(path.points(), cfg.grid, cfg.grid);
        Sums sums;
        for (int T : T_values) {
            std::vector<WindingField> pieces;
            if (T > 1)
                for (int i = 1; i <= T; ++i)
                    pieces.push_back(winding_field(ClosedLoop::close(subpath(path, i, T)), grid));
            for (int M : M_values) {
                double s = 0.0;
                for (std::size_t i = 0; i < pieces.size(); ++i)
                    for (std::size_t j = i + 1; j < pieces.size(); ++j)
                        s += threshold_area(ThresholdSet::pair_absolute(pieces[i], pieces[j], M)).get(cfg.include_band);
                sums.push_back(s);
            }
        }
        return sums;
    });
    if (!results.all_ok()) throw std::runtime_error("pair moment: " + results.error);

    std::vector<PairMomentRow> rows;
    const double R = cfg.replicates;
    for (std::size_t t = 0; t < T_values.size(); ++t)
        for (std::size_t m = 0; m < M_values.size(); ++m) {
            const std::size_t k = t * M_values.size() + m;
            double mean = 0.0;
            for (const auto& sums : results.values) mean += sums[k] * sums[k];
            mean /= R;
            double ss = 0.0;
            for (const auto& sums : results.values) ss += (sums[k] * sums[k] - mean) * (sums[k] * sums[k] - mean);
            const double se = cfg.replicates > 1 ? std::sqrt(ss / (R - 1.0) / R) : 0.0;
            rows.push_back({T_values[t], M_values[m], mean, se});
        }
    return rows;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    KsResult r;
    r.n = a.size();
    r.m = b.size();
    const double n = static_cast<double>(r.n), m = static_cast<double>(r.m);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        r.statistic = std::max(r.statistic, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double ne = n * m / (n + m);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * r.statistic;
    if (lambda < 1e-3) {
        r.p_value = 1.0;
    } else {
        double q = 0.0, sign = 1.0;
        for (int k = 1; k <= 100; ++k) {
            q += sign * std::exp(-2.0 * k * k * lambda * lambda);
            sign = -sign;
        }
        r.p_value = std::clamp(2.0 * q, 0.0, 1.0);
    }
    r.critical_1pct = std::sqrt(-std::log(0.005) / 2.0) * std::sqrt((n + m) / (n * m));
    return r;
}

ScalingResult scaling_check(const McConfig& cfg, int T, int N) {
    cfg.validate();
    const int log2T = T < 1 ? 0 : static_cast<int>(std::bit_width(static_cast<unsigned>(T))) - 1;
    if (T < 1 || !std::has_single_bit(static_cast<unsigned>(T)) || log2T > cfg.levels)
        throw std::invalid_argument("scaling check: T=" + std::to_string(T) + " does not divide the step count");
    if (N < 1) throw std::invalid_argument("scaling check: N must be >= 1");
    const int coarse = cfg.levels - log2T;
    const int R = cfg.replicates;

    const auto results = run_indexed<double>(2 * R, cfg.threads, [&](int k) {
        if (k < R) {
            const PlanarPath path = replicate_path(cfg, k);
            const auto piece = subpath(path, 1, T);
            const GridSpec grid = GridSpec::fitted(piece.points, cfg.grid, cfg.grid);
            const WindingField f = winding_field(ClosedLoop::close(piece), grid);
            return T * threshold_area(ThresholdSet::one_sided(f, N)).get(cfg.include_band);
        }
        const PlanarPath path = replicate_path(cfg, k, coarse);
        const GridSpec grid = GridSpec::fitted(path.points(), cfg.grid, cfg.grid);
        const WindingField f = winding_field(ClosedLoop::close(path), grid);
        return threshold_area(ThresholdSet::one_sided(f, N)).get(cfg.include_band);
    });
    if (!results.all_ok()) throw std::runtime_error("scaling check: " + results.error);

    ScalingResult out;
    out.scaled_piece.assign(results.values.begin(), results.values.begin() + R);
    out.whole.assign(results.values.begin() + R, results.values.end());
    out.ks = ks_two_sample(out.scaled_piece, out.whole);
    return out;
}

}  // namespace brownwind
