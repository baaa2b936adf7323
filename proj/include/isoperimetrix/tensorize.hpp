#pragma once

#include <string>
#include <vector>

#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/numerics.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"

namespace isx {

// Ratios above this are reported as an infinite control rate.
inline constexpr double kControlRateCap = 1e6;

// sup over grid pairs t <= s in (0,1/2] of [J(t)/I0(t)] / [J(s)/I0(s)]; +inf past the cap.
double control_rate(const Profile& j);

// Smallest C with v[i] <= C v[k] for all i <= k (non-decreasing direction) or all
// i >= k (non-increasing direction). 1 means exactly monotone.
double essential_nondecreasing(const std::vector<double>& v);
double essential_nonincreasing(const std::vector<double>& v);

struct Certificate {
    std::string name;
    bool essential;          // only an essential constant is claimed
    std::size_t violations;  // grid descents against the claimed direction (slack 1e-9)
    double constant;         // essential constant in the claimed direction
    bool holds;
};

struct TensorMachinery {
    Profile j;
    double control;     // D
    double half_value;  // J(1/2)
    double limsup_ratio;  // J/I_gamma near t = 1e-12, the limsup-form obstruction

    std::vector<double> t;  // log grid on [1e-15, 1/2]
    std::vector<double> g, j0, j1, wedge;
    std::vector<double> x, tx;  // T on [log 3, x_max]
    double x_max;

    std::vector<Certificate> facts;
    double t2x_essential;  // essential non-increasing constant of T(x)^2/x

    double g_at(double t) const;
    double j0_at(double t) const;
    double j1_at(double t) const;
    // (integral over [t, inf) of J1^{-2})^{-1/2}
    double wedge_at(double t) const;
    // T(x) = N^(t)/sqrt(t) with t = 1/(e^x - 1); NaN past x_max.
    double t_at(double x) const;

    // J1 as an element of the class N.
    OrliczFunction j1_function() const;

    std::vector<double> cumulative;  // integral of J^{-2} over [t_i, 1/2]
};

TensorMachinery build_machinery(const Profile& j);

struct LastThing {
    double lower;
    double upper;
    double upper_over_d;
    double argmax;
};
// inf and sup over t in (0,1] of J1(t) / (sqrt(t) N^(t)).
LastThing last_thing_check(const TensorMachinery& m);

// sup over 64 log-spaced y = 1/(2-p) in [1+1e-6, 1e6] of
// (integral f^2 - (integral |f|^p)^{2/p})^{1/2} T(y). Nodes where T is not finite are skipped.
double beckner_functional(const GridFunction& f, const Measure1D& m, const RealFn& t_fn);

// ||f'||_{L2(mu)} for piecewise-linear f, exact from slopes and masses.
double gradient_l2(const GridFunction& f, const Measure1D& m);

// I_nu(t): a ceiling for the k-fold product profile.
double coordinate_halfspace_upper(const Measure1D& m, int k, double t);

std::string machinery_json(const TensorMachinery& m, int samples = 256);

}  // namespace isx
