#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brownwind/measures.hpp"
#include "brownwind/sampling.hpp"
#include "brownwind/winding.hpp"

namespace brownwind {

// ---------------------------------------------------------------------------
// Parameter algebra
// ---------------------------------------------------------------------------

/// Exponents of the rate argument. All seven constraints must hold jointly:
///   0 < alpha < 1/2,  0 < t < 2/5,  1/2 + t/4 < m < 1 - t,
///   0 < zeta < 2m - 1 - t/2,  0 < s < 1/2 - t/2,  t/2 + s < delta < 1/2,
///   gamma > max(1/(2s), 1/(4m - t - 2 - 2 zeta)).
struct ParamSet {
    double t = 0.2;
    double alpha = 0.25;
    double m = 0.7;
    double zeta = 0.2;
    double s = 0.1;
    double delta = 0.3;
    double gamma = 6.0;
};

/// One message per violated constraint group; empty when valid.
std::vector<std::string> validate_params(const ParamSet& p);

/// Distinct values floor(K^gamma) <= n_max for K >= 1, ascending.
std::vector<std::int64_t> gamma_grid(double gamma, std::int64_t n_max);

/// floor(N^e), snapping to the nearest integer when the power lands within
/// a few ulps of it (so floor(32^0.2) is 2, not 1).
std::int64_t floor_pow(std::int64_t N, double e);

/// Paper:    min(1-m-t, 1/gamma - 1, delta - t/2 - s, zeta)  (negative whenever gamma > 1)
/// Positive: min(1-m-t, 1/gamma,     delta - t/2 - s, zeta)
enum class EtaVariant { Paper, Positive };

double eta(const ParamSet& p, EtaVariant variant);
const char* to_string(EtaVariant v) noexcept;
EtaVariant parse_eta_variant(const std::string& s);

struct Schedule {
    std::int64_t N = 0;
    std::int64_t T = 0;
    std::int64_t M = 0;
    std::int64_t N_prime = 0;  // max of the gamma grid below N - T - M(T-1)
    double eta = 0.0;
    EtaVariant variant = EtaVariant::Positive;

    std::int64_t shift() const noexcept { return T + M * (T - 1); }
    bool decomposition_applies() const noexcept { return T * (M + 1) < N; }
};

/// Throws std::invalid_argument("N too small ...") when N - T - M(T-1) < 1.
Schedule make_schedule(std::int64_t N, const ParamSet& p, EtaVariant variant);

// ---------------------------------------------------------------------------
// Decomposition of a loop into T sub-loops plus the chord polygon
// ---------------------------------------------------------------------------

struct Decomposition {
    int T = 1;
    WindingField whole;                 // closed polyline
    std::vector<WindingField> pieces;   // closed sub-polylines, i = 1..T
    WindingField chords;                // chord polygon
    std::vector<std::uint8_t> any_curve;  // cell is within the band of any of the above

    const GridSpec& grid() const noexcept { return whole.grid; }
};

/// When T does not divide the step count every step is cut into equal sub-steps first,
/// so sub-loop i always covers the times [(i-1)/T, i/T].
Decomposition decompose(std::span<const Point2> polyline, int T, const GridSpec& grid, double band);

struct AdditivityReport {
    std::size_t checked = 0;     // off-curve cells compared
    std::size_t violations = 0;  // theta != sum theta^i + theta_P
    std::size_t chord_bound_violations = 0;  // |theta_P| > ceil((T+1)/2)
};

AdditivityReport check_additivity(const Decomposition& d);

struct SandwichReport {
    double lower = 0.0;
    double center = 0.0;
    double upper = 0.0;
    std::size_t cells_checked = 0;
    std::size_t pointwise_violations = 0;

    bool measure_holds() const noexcept { return lower <= center && center <= upper; }
    bool holds() const noexcept { return measure_holds() && pointwise_violations == 0; }
};

/// Both sides of the decomposition sandwich for the measure f(z) dz together with the
/// cell-wise inclusion check. Cells within the band of any involved curve are skipped.
/// Requires T(M+1) < N and f >= 0 at every cell center.
SandwichReport verify_decomposition(const Decomposition& d, int N, int M, const TestFunction& f);
SandwichReport verify_decomposition(std::span<const Point2> polyline, int N, int T, int M, const GridSpec& grid,
                                    const TestFunction& f);

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// 2 pi N |D_N|.
MeasurePair werner_statistic(const WindingField& field, int N);

/// |mu_N(f) - nu(f)|.
MeasurePair theorem_discrepancy(const PlanarPath& path, const WindingField& field, const TestFunction& f, int N);

struct RateReport {
    double bound = 0.0;
    MeasurePair discrepancy;
    MeasurePair ratio;
};

/// omega_f(2 holder N^{-alpha t}) + |f|_inf N^{-eta} for a precomputed Hölder estimate.
double rate_bound_value(double holder, const TestFunction& f, int N, const ParamSet& p, EtaVariant variant);

/// bound = omega_f(2 |X|_alpha N^{-alpha t}) + |f|_inf N^{-eta}; ratio = discrepancy / bound.
RateReport rate_bound(const PlanarPath& path, const WindingField& field, const TestFunction& f, int N,
                      const ParamSet& p, EtaVariant variant);

struct EventFlags {
    bool E = false;
    bool F = false;
    bool G = false;

    Schedule schedule;
    double e_worst = 0.0;   // max_i N'^delta |2 pi N' |D^i_N'| - 1/T|
    double e_limit = 0.0;   // T^{-1/2 + s/t}
    double pair_sum = 0.0;  // sum_{i<j} |D^{i,j}_M|
    double f_limit = 0.0;   // N^{-1-zeta}
    double g_worst = 0.0;   // max_i 2 pi N |D^i_N'|
    double g_limit = 0.0;   // 2/T
};

/// Events from precomputed sub-loop fields (one per i = 1..T, common grid).
EventFlags event_flags(std::span<const WindingField> pieces, const Schedule& sched, const ParamSet& p,
                       bool include_band = false);
/// Builds the sub-loop fields on `grid`; T must divide the step count.
EventFlags event_flags(const PlanarPath& path, std::int64_t N, const ParamSet& p, const GridSpec& grid,
                       bool include_band = false);

/// N^2 |{theta_X >= N and theta_X' >= N}|.
MeasurePair conjecture_statistic(const WindingField& a, const WindingField& b, int N);
MeasurePair conjecture_statistic(const PlanarPath& a, const PlanarPath& b, int N, const GridSpec& grid);

}  // namespace brownwind
