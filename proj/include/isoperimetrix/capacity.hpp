#pragma once

#include <string>
#include <vector>

#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/numerics.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"

namespace isx {

enum class CapacityKind { exact_config, lower_bound, oracle };
const char* capacity_kind_name(CapacityKind k);

// t -> L(t) <= Cap_q(t, 1/2) on (0, 1/2].
struct CapacityBound {
    double q = 1.0;
    RealFn bound;
    CapacityKind kind = CapacityKind::lower_bound;
    std::string note;

    double operator()(double t) const { return bound(t); }
};

// Conjugate exponent q/(q-1); +inf for q = 1.
double conjugate(double q);

struct IntervalCapacity {
    double value;
    bool divergent;  // the weight integral diverged; value is 0
};

// (integral of rho^{-1/(q-1)} over [a,b])^{-(q-1)/q}: the minimal ||Phi'||_q with
// Phi(a) = 1, Phi(b) = 0.
IntervalCapacity interval_capacity(const Measure1D& m, double a, double b, double q,
                                   const QuadratureConfig& cfg = {});

struct CapqDetail {
    double value;
    double left;       // A = (-inf, Q(t)], B = [Q(1/2), inf)
    double right;      // mirror image
    double two_tail;   // A = both tails of mass t/2, B = [Q(1/4), Q(3/4)]; inf if not even
};

// Configuration value of Cap_q(t, 1/2). q = 1 uses the profile infimum on [t, 1/2].
CapqDetail capq_detail(const Measure1D& m, double q, double t, const QuadratureConfig& cfg = {});
double capq(const Measure1D& m, double q, double t, const QuadratureConfig& cfg = {});

// Cap_1(t,1/2) >= J(t) for J non-decreasing on [0,1/2]; throws NotMonotone otherwise.
CapacityBound cap1_profile_bridge(const Profile& j);
// The converse reading: a Cap_1 lower bound is a lower bound on tilde I.
Profile profile_bound_from_cap1(const CapacityBound& bound);

// (p0/p - 1)^{1/p0} / (1 - p/p0)^{1/p}; 1 when p0 = inf.
double gamma_factor(double p, double p0);

// Raises a q0-capacity bound to exponent q >= q0.
CapacityBound lift(const CapacityBound& bound, double q, const QuadratureConfig& cfg = {});

struct SmoothingCheck {
    double lhs;    // (integral over [t,inf) of (s-t)^{-p/p0} N^wedge(s)^{-p})^{1/p}
    double rhs;    // same with s^{-p/p0}
    double delta;  // explicit constant with lhs <= delta rhs
    bool holds;
    bool divergent;
};

// max(2^{p/p0}, 2^{p/alpha} / (2^{1-p/p0} - 1))^{1/p}, and 1 when p/p0 = 0.
double smoothing_delta(double p, double p0, double alpha);

SmoothingCheck singularity_smooth(const OrliczFunction& n, double q, double q0, double alpha, double t,
                                  const QuadratureConfig& cfg = {});

struct OracleResult {
    double value;
    double monotone_value;  // best over the monotone (half-line) plateau layouts
    double best_split;      // best over layouts where a plateau is split in two
    bool nonmonotone_wins;  // a split layout beat the monotone ones by more than 2%
    std::string layout;
};

// Discretized minimization of the q-energy over piecewise-linear Phi on a
// quantile-spaced grid, sweeping plateau boundaries.
OracleResult cap_oracle(const Measure1D& m, double q, double t, int grid_size = 512);

std::string capacity_csv(const CapacityBound& b, int points = 256);

}  // namespace isx
