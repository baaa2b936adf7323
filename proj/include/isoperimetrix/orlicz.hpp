#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/numerics.hpp"

namespace isx {

class OrliczModel {
public:
    virtual ~OrliczModel() = default;
    virtual double eval(double t) const = 0;
    virtual double inverse(double y) const = 0;
    virtual std::string tag() const = 0;
};

// An increasing continuous bijection of [0, inf) with N(0) = 0.
class OrliczFunction {
public:
    OrliczFunction() = default;
    explicit OrliczFunction(std::shared_ptr<const OrliczModel> model) : model_(std::move(model)) {}

    double operator()(double t) const;
    double inverse(double y) const;
    // 1 / N^{-1}(1/t): the norm of an indicator of a set of mass t.
    double wedge(double t) const;
    std::string tag() const { return model_->tag(); }
    bool valid() const { return static_cast<bool>(model_); }

private:
    std::shared_ptr<const OrliczModel> model_;
};

OrliczFunction power_function(double p);
// t^q log(1 + t^q)
OrliczFunction phi_function(double q);
// Piecewise linear through (t_i, N_i), N(0) = 0, linear continuation past the last knot.
OrliczFunction grid_function(const std::vector<double>& t, const std::vector<double>& n,
                             const std::string& tag = "grid");
// Monotone interpolation of log N against log t on the knots; power-law ends.
OrliczFunction log_log_table(const std::vector<double>& t, const std::vector<double>& n,
                             const std::string& tag);
// Wraps arbitrary callables (used for profiles extended to the half-line).
OrliczFunction functional(RealFn eval, RealFn inverse, const std::string& tag);
OrliczFunction adjoint(const OrliczFunction& n);
// t -> N(t^alpha)
OrliczFunction compose_power(const OrliczFunction& n, double alpha);

// power:p | phi:q | grid:file (CSV "t,N")
OrliczFunction parse_orlicz(const std::string& text);

enum class Tri { holds, fails, unchecked };

struct TriState {
    Tri state = Tri::unchecked;
    double witness = 0.0;
    bool holds() const { return state == Tri::holds; }
};

const char* tri_name(Tri t);

struct PredicateReport {
    TriState is_young;
    TriState ratio_nondecreasing;   // N(t)^{1/q}/t
    TriState power_nonincreasing;   // N(t^alpha)/t
    double q = 0.0;
    double alpha = 0.0;
    std::vector<double> checked_grid;
};

// Default grid [1e-8, 1e8], 64 points per decade, tolerance 1e-9.
std::vector<double> predicate_grid();
TriState check_young(const OrliczFunction& n, const std::vector<double>& grid);
// N(t)^exponent / t non-decreasing.
TriState check_ratio_nondecreasing(const OrliczFunction& n, double exponent,
                                   const std::vector<double>& grid);
TriState check_power_nonincreasing(const OrliczFunction& n, double alpha,
                                   const std::vector<double>& grid);
PredicateReport check_predicates(const OrliczFunction& n, double q, double alpha);

// Cor N-at-0 truncation: 2 (t/N^{-1}(2))^q below N^{-1}(2), N above.
OrliczFunction truncate_at_zero(const OrliczFunction& n, double q);

// sup_{t>0} (s t - N(t)); returns +inf when the supremum diverges.
double legendre(const OrliczFunction& n, double s);

// Quadrature rule in quantile coordinates for integrating functions of x against mu.
// Panels are split at the given x breakpoints and graded toward u = 0 and u = 1.
class QuantileRule {
public:
    QuantileRule(const Measure1D& m, const std::vector<double>& breakpoints);
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& w() const { return w_; }
    double integrate(const RealFn& g) const;

private:
    std::vector<double> x_, w_;
};

// Distribution queries for a piecewise-linear f under mu.
double level_mass_abs(const GridFunction& f, const Measure1D& m, double t);  // mu{|f| >= t}
double level_mass_le(const GridFunction& f, const Measure1D& m, double s);   // mu{f <= s}
double expectation(const GridFunction& f, const Measure1D& m);
// A median: the smallest s with mu{f <= s} >= 1/2.
double median_of(const GridFunction& f, const Measure1D& m);

// Luxemburg norm inf{v > 0 : integral of N(|f|/v) dmu <= 1}.
double orlicz_norm(const GridFunction& f, const Measure1D& m, const OrliczFunction& n);
// Luxemburg norm of precomputed |f| samples on a rule (weights sum to <= 1).
double luxemburg(const std::vector<double>& abs_values, const std::vector<double>& weights,
                 const OrliczFunction& n);
// sup_{t>0} N^wedge(mu{|f| >= t}) t
double weak_orlicz_norm(const GridFunction& f, const Measure1D& m, const OrliczFunction& n);

// mu(A) N^{-1}(1/mu(A)); requires a Young function.
double dual_norm_indicator(const Measure1D& m, double a_mass, const OrliczFunction& n,
                           const PredicateReport* predicates = nullptr);

struct DualSandwich {
    double lower;    // best integral of g over A found with ||g||_N <= 1
    double upper;    // Jensen bound a N^{-1}(integral of N(g) over A / a) at the maximizer
    double formula;  // mu(A) N^{-1}(1/mu(A))
    int iterations;
};

// Discretized maximization of the integral of g over A = (-inf, Q(a)] over
// piecewise-constant g on `cells` cells of A with ||g||_{N(mu)} <= 1.
DualSandwich dual_norm_sandwich(const Measure1D& m, double a_mass, const OrliczFunction& n,
                                int cells = 16, unsigned seed = 7);

// Indicator of (-inf, Q(a)] as a grid function with a ramp of width `ramp`.
GridFunction indicator_of_lower_set(const Measure1D& m, double a_mass, double ramp = 1e-9);

}  // namespace isx
