#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "isoperimetrix/errors.hpp"

namespace isx {

using RealFn = std::function<double(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::size_t max_subdivisions = 4000;
    double tail_cutoff_mass = 1e-12;

    void validate() const;
};

enum class Extrapolation { none, linear_tail };

// Piecewise-linear function on strictly increasing knots. With `none` the end
// values are held constant outside the knot range.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> knots, std::vector<double> values,
                 Extrapolation extrapolation = Extrapolation::none);

    double operator()(double x) const;
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    Extrapolation extrapolation() const { return extrapolation_; }
    // f - c
    GridFunction shifted(double c) const;
    std::size_t size() const { return knots_.size(); }

private:
    std::vector<double> knots_;
    std::vector<double> values_;
    Extrapolation extrapolation_ = Extrapolation::none;
};

// Adaptive Gauss-Kronrod 7/15 on [a,b]; b may be +inf.
//
// For b = +inf an optional envelope E(x) >= |integral of f over [x, inf)| lets
// the range be truncated where E drops below cfg.tail_cutoff_mass. Without an
// envelope the tail is mapped onto a finite interval.
double integrate(const RealFn& f, double a, double b, const QuadratureConfig& cfg = {},
                 const RealFn& tail_envelope = nullptr);

// Integral of (s-a)^(-beta) * g(s) over [a,b], 0 <= beta < 1, b may be +inf.
// The algebraic weight is removed by substitution so g only needs to be smooth.
double integrate_algebraic(const RealFn& g, double a, double b, double beta,
                           const QuadratureConfig& cfg = {});

// out[i] = integral of f over [grid[i], grid.back()], accumulated segment by segment.
std::vector<double> cumulative_from_right(const RealFn& f, const std::vector<double>& grid,
                                          const QuadratureConfig& cfg = {});

struct Bracket {
    double lo;
    double hi;
};

// Solves f(x) = y for continuous strictly monotone f on the bracket.
double invert_monotone(const RealFn& f, double y, Bracket bracket, double abs_tol = 1e-14);

// Like invert_monotone but grows the bracket geometrically (hi *= 2, lo /= 2 for
// positive brackets) until it encloses y. Meant for increasing maps of (0, inf).
double invert_increasing_positive(const RealFn& f, double y, double start = 1.0);

struct ScanResult {
    double argmin;
    double min;
};

// Log-spaced grid over [lo, hi]; lo <= 0 is replaced by 1e-8 (scaled to hi).
std::vector<double> log_grid(double lo, double hi, std::size_t points_per_decade);

// Minimum of f over a log-spaced grid followed by golden-section refinement
// between the neighbours of the best grid point. Non-finite values are skipped.
ScanResult inf_scan(const RealFn& f, double lo, double hi, std::size_t points_per_decade = 512);

// Same, but on a caller-supplied grid (must be increasing).
ScanResult inf_scan_on(const RealFn& f, const std::vector<double>& grid);

}  // namespace isx
