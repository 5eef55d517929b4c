#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "brownwind/geometry.hpp"
#include "brownwind/sampling.hpp"
#include "brownwind/winding.hpp"

namespace brownwind {

/// Bounded test function with optional Lipschitz constant (infinity when unknown).
struct TestFunction {
    std::string name;
    std::function<double(Point2)> eval;
    double sup_norm = std::numeric_limits<double>::infinity();
    double lipschitz = std::numeric_limits<double>::infinity();

    double operator()(Point2 z) const { return eval(z); }

    /// Modulus-of-continuity bound min(2 ||f||_inf, L t).
    double modulus(double t) const noexcept;

    static TestFunction constant(double c);
    /// exp(-|z - center|^2 / (2 sigma^2)); sup 1, Lipschitz e^{-1/2} / sigma.
    static TestFunction gaussian_bump(Point2 center, double sigma);
    /// a.x * z.x + a.y * z.y + b (unbounded).
    static TestFunction linear(Point2 a, double b);
};

/// Off-curve value together with the variant that keeps the on-curve band.
struct MeasurePair {
    double off_curve = 0.0;
    double inclusive = 0.0;

    double get(bool include_band) const noexcept { return include_band ? inclusive : off_curve; }
};

/// Cell-wise threshold set over one or two winding fields on a common grid.
///   OneSided:      theta_a >= level                       (D_N, D^i_N)
///   PairAbsolute:  |theta_a| >= level and |theta_b| >= level (D^{i,j}_M)
///   JointOneSided: theta_a >= level and theta_b >= level   (two-path set)
/// Cells flagged on-curve in any participating field are excluded from the off-curve variant.
class ThresholdSet {
public:
    enum class Mode { OneSided, PairAbsolute, JointOneSided };

    static ThresholdSet one_sided(const WindingField& field, int level);
    static ThresholdSet pair_absolute(const WindingField& a, const WindingField& b, int level);
    static ThresholdSet joint(const WindingField& a, const WindingField& b, int level);

    const GridSpec& grid() const noexcept { return a_->grid; }
    Mode mode() const noexcept { return mode_; }
    int level() const noexcept { return level_; }

    bool member(std::size_t cell) const noexcept;
    bool on_curve(std::size_t cell) const noexcept;

private:
    ThresholdSet(Mode mode, const WindingField* a, const WindingField* b, int level);

    Mode mode_;
    const WindingField* a_;
    const WindingField* b_;
    int level_;
};

/// Member-cell count times cell area.
MeasurePair threshold_area(const ThresholdSet& set);

/// Midpoint quadrature of f over the set: (sum of f at member centers) * cell area.
MeasurePair f_measure(const ThresholdSet& set, const TestFunction& f);

/// 2 pi N f(D_N).
MeasurePair mu_N_f(const WindingField& field, int N, const TestFunction& f);

struct OccupationHistogram {
    GridSpec grid;
    std::vector<double> mass;

    double total() const noexcept;
};

/// Time spent per cell: every step's 2^-L is split across the cells it crosses in
/// proportion to the clipped length. Throws when the path leaves the grid.
OccupationHistogram occupation_measure(const PlanarPath& path, const GridSpec& grid);

/// Left-endpoint Riemann sum of f along the path's time grid.
double nu_f(const PlanarPath& path, const TestFunction& f);

/// sum over cells of f(center) * mass.
double histogram_integral(const OccupationHistogram& hist, const TestFunction& f);

}  // namespace brownwind
