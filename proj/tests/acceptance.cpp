// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "brownwind/cli.hpp"
#include "brownwind/io.hpp"
#include "brownwind/montecarlo.hpp"
#include "oracles.hpp"

using namespace brownwind;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Outcome oracle_equivalence() {
    const Clock clock;
    std::size_t mismatches = 0, compared = 0, max_segments = 0;
    for (int r = 0; r < 50; ++r) {
        // 2^4 .. 2^13 segments, plus one loop at the 2^14 cap
        const int levels = r == 49 ? 14 : 4 + r % 10;
        const PlanarPath p = sample_bm(5000 + static_cast<std::uint64_t>(r), levels);
        const ClosedLoop loop = ClosedLoop::close(p);
        max_segments = std::max(max_segments, p.steps());
        const GridSpec g = GridSpec::fitted(p.points(), 256, 256);
        const WindingField f = winding_field(loop, g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                if (f.curve_at(i, j)) continue;
                ++compared;
                if (f.at(i, j) != oracle::angle_sum_winding(loop.vertices(), g.center(i, j))) ++mismatches;
            }
    }
    const double t = clock.seconds();
    return {mismatches == 0 && t < 120.0,
            fmt::format("mismatches={} cells={} max_segments={} time={:.1f}s (limit 120s)", mismatches, compared,
                        max_segments, t)};
}

Outcome additivity() {
    const Clock clock;
    std::size_t violations = 0, checked = 0, chord = 0;
    for (int r = 0; r < 10; ++r) {
        const PlanarPath p = sample_bm(6000 + static_cast<std::uint64_t>(r), 14);
        const GridSpec g = GridSpec::fitted(p.points(), 512, 512);
        for (int T : {2, 5, 10}) {
            const AdditivityReport a = check_additivity(decompose(p.points(), T, g, default_band(g)));
            violations += a.violations;
            checked += a.checked;
            chord += a.chord_bound_violations;
        }
    }
    const double t = clock.seconds();
    return {violations == 0 && t < 120.0,
            fmt::format("violations={} cells={} chord_bound_violations={} time={:.1f}s (limit 120s)", violations,
                        checked, chord, t)};
}

Outcome sandwich() {
    const Clock clock;
    std::size_t measure_failures = 0, pointwise = 0, runs = 0;
    const std::vector<TestFunction> fns{TestFunction::constant(1.0), TestFunction::gaussian_bump({0.0, 0.0}, 0.5)};
    auto check_polyline = [&](std::span<const Point2> poly) {
        const GridSpec g = GridSpec::fitted(poly, 1024, 1024);
        for (int T : {2, 4}) {
            const Decomposition d = decompose(poly, T, g, default_band(g));
            for (int N : {8, 12})
                for (int M : {1, 2}) {
                    if (T * (M + 1) >= N) continue;
                    for (const auto& f : fns) {
                        const SandwichReport s = verify_decomposition(d, N, M, f);
                        ++runs;
                        measure_failures += !s.measure_holds();
                        pointwise += s.pointwise_violations;
                    }
                }
        }
    };
    for (const auto& poly : oracle::multi_winding_corpus()) check_polyline(poly);
    for (int r = 0; r < 10; ++r) check_polyline(sample_bm(7000 + static_cast<std::uint64_t>(r), 16).points());
    const double t = clock.seconds();
    return {measure_failures == 0 && pointwise == 0 && t < 300.0,
            fmt::format("checks={} measure_failures={} pointwise_violations={} time={:.1f}s (limit 300s)", runs,
                        measure_failures, pointwise, t)};
}

Outcome deterministic_werner() {
    const auto poly = oracle::multi_turn_polygon(5, 64, 1.0);
    const GridSpec g{-1.25, -1.25, 1.25, 1.25, 1024, 1024};
    const WindingField f = winding_field(ClosedLoop::close(poly), g);
    double worst = 0.0;
    std::string areas;
    for (int N = 1; N <= 6; ++N) {
        const MeasurePair a = threshold_area(ThresholdSet::one_sided(f, N));
        const double expect = N <= 5 ? kPi : 0.0;
        for (double v : {a.inclusive, a.off_curve})
            worst = std::max(worst, expect > 0 ? std::abs(v - expect) / expect : (v == 0.0 ? 0.0 : INFINITY));
        areas += fmt::format(" N={}:{:.5f}/{:.5f}", N, a.inclusive, a.off_curve);
    }
    return {worst <= 0.02, fmt::format("worst_rel_error={:.4g} (limit 0.02); inclusive/off-curve{}", worst, areas)};
}

McConfig eq1_config() {
    McConfig c;
    c.replicates = 32;
    c.levels = 20;
    c.grid = 2048;
    c.N_list = {4, 8, 16};
    return c;
}

Outcome werner_trend(const McSummary& s, double seconds) {
    bool ok = s.valid && s.per_n.size() == 3;
    std::string detail;
    double prev_l2 = INFINITY;
    for (const auto& p : s.per_n) {
        const bool in_range = p.mean >= 0.75 && p.mean <= 1.25;
        const bool decreasing = p.l2_error < prev_l2;
        ok = ok && in_range && decreasing;
        prev_l2 = p.l2_error;
        detail += fmt::format(" N={}: mean={:.4f} l2={:.4f}", p.N, p.mean, p.l2_error);
    }
    std::vector<double> off(3, 0.0);
    for (const auto& w : s.werner) off[w.N == 4 ? 0 : w.N == 8 ? 1 : 2] += w.stat_offcurve / 32.0;
    detail += fmt::format(" | off-curve means {:.4f} {:.4f} {:.4f}", off[0], off[1], off[2]);
    ok = ok && seconds < 3600.0;
    return {ok, "mean in [0.75,1.25], L2 strictly decreasing;" + detail + fmt::format(" time={:.0f}s", seconds)};
}

Outcome theorem_trend(const McSummary& s) {
    std::vector<double> med;
    for (int N : {4, 8, 16})
        for (const auto& t : s.theorem_samples)
            if (t.N == N && t.f_name == "gauss_bump") med.push_back(median(t.discrepancy));
    if (med.size() != 3) return {false, "missing samples"};
    const bool ok = med[1] < med[0] && med[2] < med[1] && med[2] < 0.15;
    return {ok, fmt::format("median |mu_N(f)-nu(f)| N=4:{:.4f} N=8:{:.4f} N=16:{:.4f} (decreasing, N=16 < 0.15)",
                            med[0], med[1], med[2])};
}

Outcome schedule_algebra() {
    const ParamSet ref{0.2, 0.25, 0.7, 0.2, 0.1, 0.3, 6.0};
    bool ok = validate_params(ref).empty();
    // one out-of-range value per coordinate
    const std::vector<std::pair<const char*, std::function<void(ParamSet&)>>> breaks{
        {"t", [](ParamSet& p) { p.t = 0.45; }},       {"alpha", [](ParamSet& p) { p.alpha = 0.5; }},
        {"m", [](ParamSet& p) { p.m = 0.85; }},       {"zeta", [](ParamSet& p) { p.zeta = 0.35; }},
        {"s", [](ParamSet& p) { p.s = 0.45; }},       {"delta", [](ParamSet& p) { p.delta = 0.15; }},
        {"gamma", [](ParamSet& p) { p.gamma = 4.0; }}};
    int rejected = 0;
    for (const auto& [name, edit] : breaks) {
        ParamSet p = ref;
        edit(p);
        rejected += !validate_params(p).empty();
    }
    ok = ok && rejected == 7;
    const auto grid = gamma_grid(2.0, 20);
    const bool grid_ok = grid == std::vector<std::int64_t>{1, 4, 9, 16};
    const Schedule s = make_schedule(10000, ref, EtaVariant::Positive);
    ok = ok && grid_ok && s.T == 6 && s.M == 630;
    return {ok, fmt::format("rejected {}/7 single violations, gamma_grid(2,20) {}, schedule(10^4): T={} M={}", rejected,
                            grid_ok ? "ok" : "wrong", s.T, s.M)};
}

Outcome pair_moment() {
    const Clock clock;
    McConfig c;
    c.replicates = 32;
    c.levels = 18;
    const auto rows = pair_moment_table(c, {4}, {1, 2, 4});
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(r.M);
        y.push_back(r.estimate);
    }
    double slope = NAN;
    bool ok = false;
    try {
        slope = loglog_slope(x, y);
        ok = slope <= -2.0;
    } catch (const std::exception&) {
    }
    const double t = clock.seconds();
    ok = ok && t < 1800.0;
    return {ok, fmt::format("estimates M=1:{:.4g} M=2:{:.4g} M=4:{:.4g} slope={:.3f} (limit -2) time={:.0f}s", y[0],
                            y[1], y[2], slope, t)};
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / "brownwind_acceptance";
    fs::remove_all(base);
    const std::vector<std::string> args{"mc", "--study", "all", "--levels", "14", "--grid", "512", "--replicates", "16"};
    std::vector<fs::path> dirs;
    for (const char* threads : {"1", "8"})
        for (int run = 0; run < 2; ++run) {
            const fs::path d = base / fmt::format("t{}_{}", threads, run);
            auto a = args;
            a.insert(a.end(), {"--threads", threads, "--out", d.string()});
            std::ostringstream out, err;
            if (run_cli(a, out, err) != kExitOk) return {false, "mc run failed: " + err.str()};
            dirs.push_back(d);
        }
    const std::vector<std::string> files{"werner.csv",   "theorem.csv",  "tail.csv",
                                         "pairmoment.csv", "field_r0.pgm", "summary.json"};
    std::size_t differing = 0;
    for (const auto& f : files)
        for (std::size_t k = 1; k < dirs.size(); ++k) differing += slurp(dirs[0] / f) != slurp(dirs[k] / f);
    return {differing == 0, fmt::format("4 runs (threads 1,1,8,8), {} files, differing comparisons={}", files.size(),
                                        differing)};
}

Outcome scaling() {
    const Clock clock;
    McConfig c;
    c.replicates = 64;
    const ScalingResult r = scaling_check(c, 4, 8);
    const double t = clock.seconds();
    return {r.ks.statistic < r.ks.critical_1pct && t < 1800.0,
            fmt::format("KS={:.4f} critical_1%={:.4f} p={:.3g} time={:.0f}s", r.ks.statistic, r.ks.critical_1pct,
                        r.ks.p_value, t)};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const Outcome& o) {
        std::cout << fmt::format("criterion {:2d} {}: {} | {}", id, o.pass ? "PASS" : "FAIL", name, o.detail)
                  << std::endl;
        failures += !o.pass;
    };
    auto guarded = [](const std::function<Outcome()>& f) -> Outcome {
        try {
            return f();
        } catch (const std::exception& e) {
            return {false, std::string("exception: ") + e.what()};
        }
    };

    report(1, "scanline field equals angle-sum oracle", guarded(oracle_equivalence));
    report(2, "additivity identity", guarded(additivity));
    report(3, "decomposition sandwich", guarded(sandwich));
    report(4, "deterministic k-fold circle area", guarded(deterministic_werner));

    const Clock clock;
    McSummary eq1;
    try {
        eq1 = run_replicates(eq1_config());
    } catch (const std::exception& e) {
        eq1.valid = false;
        eq1.error = e.what();
    }
    const double eq1_seconds = clock.seconds();
    report(5, "Werner statistic trend", guarded([&] { return werner_trend(eq1, eq1_seconds); }));
    report(6, "test-function discrepancy trend", guarded([&] { return theorem_trend(eq1); }));
    report(7, "schedule and parameter algebra", guarded(schedule_algebra));
    report(8, "pair-moment decay in M", guarded(pair_moment));
    report(9, "determinism across thread budgets", guarded(determinism));
    report(10, "scaling identity (two-sample KS)", guarded(scaling));

    std::cout << fmt::format("{} of 10 criteria passed", 10 - failures) << std::endl;
    return failures == 0 ? 0 : 1;
}
