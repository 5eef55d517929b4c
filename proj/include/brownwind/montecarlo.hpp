#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <new>
#include <thread>
#include <string>
#include <vector>

#include "brownwind/measures.hpp"
#include "brownwind/verify.hpp"

namespace brownwind {

struct McConfig {
    std::uint64_t master_seed = 1;
    int replicates = 32;
    int levels = 20;
    int grid = 2048;  // cells per axis
    std::vector<int> N_list{4, 8, 16};
    ParamSet params;
    EtaVariant eta_variant = EtaVariant::Positive;
    int threads = 1;  // does not affect any output

    double bump_sigma = 0.5;         // Gaussian bump centered at the origin
    bool include_band = true;        // area variant used for summaries and tables
    double tail_delta = 0.25;
    std::vector<double> tail_R{0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<int> pair_T{1, 2, 4};
    std::vector<int> pair_M{1, 2, 4};
    int scaling_T = 4;
    int scaling_N = 8;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

/// Path of replicate r: RngStream(replicate_seed(master_seed, r), r).
PlanarPath replicate_path(const McConfig& cfg, int r, int levels);
inline PlanarPath replicate_path(const McConfig& cfg, int r) { return replicate_path(cfg, r, cfg.levels); }

template <class R>
struct IndexedResults {
    std::vector<R> values;
    std::vector<std::uint8_t> ok;
    std::string error;

    bool all_ok() const noexcept { return error.empty(); }
};

/// Runs job(0..count-1) on up to `threads` workers. Results land in index order;
/// the first exception (lowest index) is reported through `error` and the failed
/// slots stay default-constructed.
template <class R>
IndexedResults<R> run_indexed(int count, int threads, const std::function<R(int)>& job) {
    IndexedResults<R> out;
    out.values.resize(static_cast<std::size_t>(count));
    out.ok.assign(static_cast<std::size_t>(count), 0);
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < count; k = next++) {
            const auto slot = static_cast<std::size_t>(k);
            try {
                out.values[slot] = job(k);
                out.ok[slot] = 1;
            } catch (const std::bad_alloc&) {
                errors[slot] = "replicate " + std::to_string(k) + ": out of memory";
            } catch (const std::exception& e) {
                errors[slot] = "replicate " + std::to_string(k) + ": " + e.what();
            }
        }
    };
    const int workers = std::clamp(threads, 1, std::max(count, 1));
    {
        std::vector<std::jthread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors)
        if (!e.empty()) {
            out.error = e;
            break;
        }
    return out;
}

struct WernerRow {
    int N;
    int replicate;
    double stat_offcurve;
    double stat_inclusive;
};

struct TheoremRow {
    int N;
    std::string f_name;
    double discrepancy;  // median over replicates
    double bound;        // median over replicates
    double ratio;        // median over replicates
};

struct TailRow {
    int N;
    double R;
    double ccdf;
};

struct PerNSummary {
    int N = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased; 0 for a single replicate
    double l2_error = 0.0;   // mean of (stat - 1)^2
    double ci_half = 0.0;    // 1.96 sqrt(variance / R)
    double median = 0.0;
};

struct ReplicateTheorem {
    int N;
    std::string f_name;
    std::vector<double> discrepancy;  // per replicate
    std::vector<double> bound;
    std::vector<double> ratio;
};

struct McSummary {
    bool valid = true;
    std::string error;
    int completed = 0;

    std::vector<WernerRow> werner;           // ordered by N, then replicate
    std::vector<PerNSummary> per_n;
    std::vector<ReplicateTheorem> theorem_samples;
    std::vector<TheoremRow> theorem;
    std::vector<TailRow> tail;
};

/// Werner statistic, theorem discrepancy and rate bound (constant and Gaussian-bump
/// test functions) for every replicate and N, plus the per-N tail table.
McSummary run_replicates(const McConfig& cfg);

/// Empirical P(N^delta |2 pi N |D_N| - 1| >= R) over the configured replicates.
std::vector<TailRow> tail_table(const McConfig& cfg, int N, double delta, const std::vector<double>& R_values);
std::vector<TailRow> tail_from_samples(int N, double delta, const std::vector<double>& stats,
                                       const std::vector<double>& R_values);

struct PairMomentRow {
    int T;
    int M;
    double estimate;  // mean over replicates of (sum_{i<j} |D^{i,j}_M|)^2
    double stderr_;
};

std::vector<PairMomentRow> pair_moment_table(const McConfig& cfg, const std::vector<int>& T_values,
                                             const std::vector<int>& M_values);

struct KsResult {
    double statistic = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double p_value = 1.0;         // asymptotic
    double critical_1pct = 0.0;   // c(0.01) sqrt((n+m)/(nm))
};

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct ScalingResult {
    KsResult ks;
    std::vector<double> scaled_piece;  // T |D^1_N| from replicates 0..R-1
    std::vector<double> whole;         // |D_N| from replicates R..2R-1
};

/// Compares T |D^1_N| (sub-loop 1 of the replicate paths, gridded on its own bounding
/// box) with |D_N| of independent full paths sampled at levels - log2(T), which is
/// the same polyline law after Brownian rescaling.
ScalingResult scaling_check(const McConfig& cfg, int T, int N);

double median(std::vector<double> v);

/// Least-squares slope of log(y) against log(x). Requires at least two points with
/// positive coordinates; non-positive entries are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace brownwind
