#include "brownwind/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "brownwind/io.hpp"
#include "brownwind/montecarlo.hpp"
#include "brownwind/verify.hpp"

namespace brownwind {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Flags shared by every subcommand. Values left unset keep the config-file/default value.
struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> levels, grid, replicates, threads;
    std::vector<int> N_list;
    std::optional<double> t, alpha, m, zeta, s, delta, gamma, bump_sigma;
    std::optional<std::string> eta_variant;
    std::optional<bool> include_band;

    void attach(CLI::App& app, bool threshold_list = true) {
        app.add_option("--config", config_path, "JSON config file (flags override its fields)")->check(CLI::ExistingFile);
        app.add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./out)");
        app.add_option("--seed", seed, "Seed (master seed for mc)");
        app.add_option("--levels", levels, "Dyadic levels of the path (0..26)");
        app.add_option("--grid", grid, "Grid cells per axis");
        app.add_option("--replicates", replicates, "Monte Carlo replicates");
        app.add_option("--threads", threads, "Worker threads (never changes results)");
        if (threshold_list) app.add_option("--N", N_list, "Winding thresholds, ascending")->delimiter(',');
        app.add_option("--t", t);
        app.add_option("--alpha", alpha);
        app.add_option("--m", m);
        app.add_option("--zeta", zeta);
        app.add_option("--s", s);
        app.add_option("--delta", delta);
        app.add_option("--gamma", gamma);
        app.add_option("--eta-variant", eta_variant, "paper | positive");
        app.add_option("--bump-sigma", bump_sigma, "Width of the Gaussian test function");
        app.add_option("--include-band", include_band, "Use the band-inclusive area variant in summaries");
    }

    McConfig build(McConfig c) const {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            json j;
            try {
                j = json::parse(is);
            } catch (const json::exception& e) {
                throw std::invalid_argument(std::string("config: ") + e.what());
            }
            c = config_from_json(j, c);
        }
        if (seed) c.master_seed = *seed;
        if (levels) c.levels = *levels;
        if (grid) c.grid = *grid;
        if (replicates) c.replicates = *replicates;
        if (threads) c.threads = *threads;
        if (!N_list.empty()) c.N_list = N_list;
        if (t) c.params.t = *t;
        if (alpha) c.params.alpha = *alpha;
        if (m) c.params.m = *m;
        if (zeta) c.params.zeta = *zeta;
        if (s) c.params.s = *s;
        if (delta) c.params.delta = *delta;
        if (gamma) c.params.gamma = *gamma;
        if (eta_variant) c.eta_variant = parse_eta_variant(*eta_variant);
        if (bump_sigma) c.bump_sigma = *bump_sigma;
        if (include_band) c.include_band = *include_band;
        return c;
    }

    fs::path output_dir() const {
        fs::path dir = out_dir;
        if (dir.empty()) {
            const char* env = std::getenv(kOutDirEnv);
            dir = env && *env ? fs::path(env) : fs::path("out");
        }
        fs::create_directories(dir);
        return dir;
    }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<TheoremRow> single_path_theorem(const PlanarPath& path, const WindingField& field, const McConfig& cfg) {
    const std::vector<TestFunction> fns{TestFunction::constant(1.0),
                                        TestFunction::gaussian_bump({0.0, 0.0}, cfg.bump_sigma)};
    const double holder = holder_norm(path, cfg.params.alpha);
    std::vector<TheoremRow> rows;
    for (int N : cfg.N_list)
        for (const auto& f : fns) {
            const double d = theorem_discrepancy(path, field, f, N).get(cfg.include_band);
            const double b = rate_bound_value(holder, f, N, cfg.params, cfg.eta_variant);
            rows.push_back({N, f.name, d, b, d / b});
        }
    return rows;
}

int cmd_simulate(const CommonFlags& flags, int scale, bool mark_curve, std::ostream& out) {
    McConfig base;
    base.levels = 16;
    base.grid = 1024;
    base.replicates = 1;
    const McConfig cfg = flags.build(base);
    cfg.validate();
    const fs::path dir = flags.output_dir();

    const PlanarPath path = sample_bm(cfg.master_seed, cfg.levels);
    const GridSpec grid = GridSpec::fitted(path.points(), cfg.grid, cfg.grid);
    const WindingField field = winding_field(ClosedLoop::close(path), grid);

    McSummary summary;
    summary.completed = 1;
    for (int N : cfg.N_list) {
        const MeasurePair w = werner_statistic(field, N);
        summary.werner.push_back({N, 0, w.off_curve, w.inclusive});
    }
    summary.theorem = single_path_theorem(path, field, cfg);

    export_field_pgm(field, dir / "theta.pgm", scale, mark_curve);
    write_text(dir / "werner.csv", werner_csv(summary.werner));
    write_text(dir / "theorem.csv", theorem_csv(summary.theorem));
    const std::vector<std::string> files{"theta.pgm", "werner.csv", "theorem.csv"};

    json j = summary_json(summary, {});
    j["grid"] = {{"x0", grid.x0}, {"y0", grid.y0}, {"x1", grid.x1}, {"y1", grid.y1}, {"nx", grid.nx}, {"ny", grid.ny}};
    j["theta_range"] = {field.min_theta(), field.max_theta()};
    j["holder_norm"] = holder_norm(path, cfg.params.alpha);
    j["manifest"] = make_manifest(config_to_json(cfg), cfg.master_seed, dir, files).to_json();
    write_json(dir / "summary.json", j);

    for (const auto& r : summary.werner)
        fmt::print(out, "N={} werner_offcurve={} werner_inclusive={}\n", r.N, format_double(r.stat_offcurve),
                   format_double(r.stat_inclusive));
    return kExitOk;
}

int cmd_verify(const CommonFlags& flags, int T, int N, int M, std::ostream& out) {
    McConfig base;
    base.levels = 14;
    base.grid = 512;
    base.replicates = 1;
    const McConfig cfg = flags.build(base);
    cfg.validate();
    if (T < 1 || M < 1 || N < 1) throw ConfigError("verify: T, N and M must be positive");
    if (static_cast<long long>(T) * (M + 1) >= N)
        throw ConfigError(fmt::format("verify: requires T(M+1) < N, got T={} M={} N={}", T, M, N));
    const fs::path dir = flags.output_dir();

    const PlanarPath path = sample_bm(cfg.master_seed, cfg.levels);
    const GridSpec grid = GridSpec::fitted(path.points(), cfg.grid, cfg.grid);
    const Decomposition d = decompose(path.points(), T, grid, default_band(grid));
    const AdditivityReport add = check_additivity(d);
    const SandwichReport one = verify_decomposition(d, N, M, TestFunction::constant(1.0));
    const SandwichReport bump = verify_decomposition(d, N, M, TestFunction::gaussian_bump({0.0, 0.0}, cfg.bump_sigma));
    const auto theorem = single_path_theorem(path, d.whole, cfg);

    const bool ok = add.violations == 0 && add.chord_bound_violations == 0 && one.holds() && bump.holds();
    auto sandwich_json = [](const SandwichReport& r) {
        return json{{"lower", r.lower},
                    {"center", r.center},
                    {"upper", r.upper},
                    {"cells_checked", r.cells_checked},
                    {"pointwise_violations", r.pointwise_violations},
                    {"holds", r.holds()}};
    };
    json j;
    j["T"] = T;
    j["N"] = N;
    j["M"] = M;
    j["additivity"] = {{"cells_checked", add.checked},
                       {"violations", add.violations},
                       {"chord_bound_violations", add.chord_bound_violations}};
    j["sandwich"] = {{"one", sandwich_json(one)}, {"gauss_bump", sandwich_json(bump)}};
    j["passed"] = ok;
    write_text(dir / "theorem.csv", theorem_csv(theorem));
    j["manifest"] = make_manifest(config_to_json(cfg), cfg.master_seed, dir, {"theorem.csv"}).to_json();
    write_json(dir / "verify.json", j);

    fmt::print(out, "additivity: {} cells, {} violations\n", add.checked, add.violations);
    fmt::print(out, "sandwich (f=1): {} <= {} <= {}, pointwise violations {}\n", format_double(one.lower),
               format_double(one.center), format_double(one.upper), one.pointwise_violations);
    fmt::print(out, "sandwich (bump): {} <= {} <= {}, pointwise violations {}\n", format_double(bump.lower),
               format_double(bump.center), format_double(bump.upper), bump.pointwise_violations);
    fmt::print(out, "{}\n", ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_mc(const CommonFlags& flags, const std::string& study, std::ostream& out) {
    const McConfig cfg = flags.build(McConfig{});
    cfg.validate();
    const bool all = study == "all";
    if (!all && study != "werner" && study != "tail" && study != "pairmoment" && study != "scaling")
        throw ConfigError("mc: unknown study '" + study + "'");
    const fs::path dir = flags.output_dir();

    McSummary summary;
    if (all || study == "werner" || study == "tail") {
        summary = run_replicates(cfg);
        if (study == "tail") summary.theorem.clear();
    }
    std::vector<PairMomentRow> pairs;
    if (all || study == "pairmoment") pairs = pair_moment_table(cfg, cfg.pair_T, cfg.pair_M);

    std::vector<std::string> files = export_tables(summary, pairs, dir);
    {
        const PlanarPath p0 = replicate_path(cfg, 0);
        const WindingField f0 = winding_field(ClosedLoop::close(p0), GridSpec::fitted(p0.points(), cfg.grid, cfg.grid));
        export_field_pgm(f0, dir / "field_r0.pgm", 8);
        files.push_back("field_r0.pgm");
    }

    json j = summary_json(summary, pairs);
    if (all || study == "scaling") {
        const ScalingResult sc = scaling_check(cfg, cfg.scaling_T, cfg.scaling_N);
        j["scaling"] = {{"T", cfg.scaling_T},
                        {"N", cfg.scaling_N},
                        {"ks_statistic", sc.ks.statistic},
                        {"n", sc.ks.n},
                        {"m", sc.ks.m},
                        {"p_value", sc.ks.p_value},
                        {"critical_1pct", sc.ks.critical_1pct},
                        {"scaled_piece", sc.scaled_piece},
                        {"whole", sc.whole}};
        fmt::print(out, "scaling: KS={} critical(1%)={}\n", format_double(sc.ks.statistic),
                   format_double(sc.ks.critical_1pct));
    }
    j["study"] = study;
    j["manifest"] = make_manifest(config_to_json(cfg), cfg.master_seed, dir, files).to_json();
    write_json(dir / "summary.json", j);

    for (const auto& p : summary.per_n)
        fmt::print(out, "N={} mean={} l2={} median={}\n", p.N, format_double(p.mean), format_double(p.l2_error),
                   format_double(p.median));
    if (!summary.valid) {
        fmt::print(out, "run incomplete: {}\n", summary.error);
        return kExitVerifyFailed;
    }
    return kExitOk;
}

int cmd_schedule(const CommonFlags& flags, std::int64_t N, std::ostream& out) {
    const McConfig cfg = flags.build(McConfig{});
    if (auto v = validate_params(cfg.params); !v.empty()) {
        std::string msg = "invalid parameters:";
        for (const auto& s : v) msg += "\n  " + s;
        throw ConfigError(msg);
    }
    const Schedule s = make_schedule(N, cfg.params, cfg.eta_variant);
    const Schedule other = make_schedule(N, cfg.params,
                                         cfg.eta_variant == EtaVariant::Paper ? EtaVariant::Positive : EtaVariant::Paper);
    fmt::print(out, "N={}\nT={}\nM={}\nN'={}\neta={} ({})\neta_{}={}\nT(M+1)<N: {}\n", s.N, s.T, s.M, s.N_prime,
               format_double(s.eta), to_string(s.variant), to_string(other.variant), format_double(other.eta),
               s.decomposition_applies() ? "yes" : "no");
    return kExitOk;
}

int cmd_conjecture(const CommonFlags& flags, std::uint64_t seed2, double offset_x, std::ostream& out) {
    McConfig base;
    base.levels = 16;
    base.grid = 1024;
    base.replicates = 1;
    base.N_list = {2, 4, 8, 16};
    const McConfig cfg = flags.build(base);
    cfg.validate();
    const fs::path dir = flags.output_dir();

    const PlanarPath a = sample_bm(cfg.master_seed, cfg.levels);
    PlanarPath b0 = sample_bm(seed2, cfg.levels);
    std::vector<Point2> shifted(b0.points().begin(), b0.points().end());
    for (auto& p : shifted) p.x += offset_x;
    const PlanarPath b(cfg.levels, std::move(shifted));
    std::vector<Point2> both(a.points().begin(), a.points().end());
    both.insert(both.end(), b.points().begin(), b.points().end());
    const GridSpec grid = GridSpec::fitted(both, cfg.grid, cfg.grid);
    const WindingField fa = winding_field(ClosedLoop::close(a), grid);
    const WindingField fb = winding_field(ClosedLoop::close(b), grid);

    std::string csv = "N,stat_offcurve,stat_inclusive\n";
    json rows = json::array();
    for (int N : cfg.N_list) {
        const MeasurePair c = conjecture_statistic(fa, fb, N);
        csv += fmt::format("{},{},{}\n", N, format_double(c.off_curve), format_double(c.inclusive));
        rows.push_back({{"N", N}, {"stat_offcurve", c.off_curve}, {"stat_inclusive", c.inclusive}});
        fmt::print(out, "N={} N^2|D2_N| offcurve={} inclusive={}\n", N, format_double(c.off_curve),
                   format_double(c.inclusive));
    }
    write_text(dir / "conjecture.csv", csv);
    json j{{"rows", rows}, {"seed2", seed2}, {"offset_x", offset_x}};
    j["manifest"] = make_manifest(config_to_json(cfg), cfg.master_seed, dir, {"conjecture.csv"}).to_json();
    write_json(dir / "summary.json", j);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Winding fields of planar Brownian loops and numerical checks of their occupation-measure limit",
                 "brownwind"};
    app.require_subcommand(1);

    CommonFlags sim_flags, ver_flags, mc_flags, sched_flags, conj_flags;
    int scale = 8;
    bool mark_curve = false;
    int T = 2, N = 5, M = 1;
    std::string study = "werner";
    std::int64_t sched_N = 10000;
    std::uint64_t seed2 = 2;
    double offset_x = 0.0;

    auto* sim = app.add_subcommand("simulate", "One path: winding field, PGM image and statistics");
    sim_flags.attach(*sim);
    sim->add_option("--scale", scale, "PGM gray levels per winding unit")->check(CLI::PositiveNumber);
    sim->add_flag("--mark-curve", mark_curve, "Paint on-curve cells white");

    auto* ver = app.add_subcommand("verify", "Additivity and decomposition sandwich on one path");
    ver_flags.attach(*ver, false);
    ver->add_option("--T", T, "Number of sub-loops");
    ver->add_option("--N", N, "Threshold N of the sandwich");
    ver->add_option("--M", M, "Pair threshold M");

    auto* mc = app.add_subcommand("mc", "Replicate studies");
    mc_flags.attach(*mc);
    mc->add_option("--study", study, "werner | tail | pairmoment | scaling | all");

    auto* sched = app.add_subcommand("schedule", "Print T, M, N' and eta for a parameter set");
    sched_flags.attach(*sched, false);
    sched->add_option("--N", sched_N, "N");

    auto* conj = app.add_subcommand("conjecture", "Joint winding set of two independent paths");
    conj_flags.attach(*conj);
    conj->add_option("--seed2", seed2, "Seed of the second path");
    conj->add_option("--offset-x", offset_x, "Horizontal start offset of the second path");

    std::vector<std::string> argv_store{"brownwind"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (*sim) return cmd_simulate(sim_flags, scale, mark_curve, out);
        if (*ver) return cmd_verify(ver_flags, T, N, M, out);
        if (*mc) return cmd_mc(mc_flags, study, out);
        if (*sched) return cmd_schedule(sched_flags, sched_N, out);
        if (*conj) return cmd_conjecture(conj_flags, seed2, offset_x, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}

}  // namespace brownwind
