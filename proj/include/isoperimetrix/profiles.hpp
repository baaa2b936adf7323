#pragma once

#include <string>
#include <vector>

#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/numerics.hpp"

namespace isx {

enum class Provenance { measure_derived, analytic, user_supplied };
enum class ProfileKind { exact, half_line_upper_bound, lower_bound };

const char* provenance_name(Provenance p);
const char* profile_kind_name(ProfileKind k);

// A function J on [0,1], stored as two branches on (0,1/2]:
//   lower(t) = J(t) and upper(t) = J(1-t).
// Keeping the upper branch in terms of 1-t avoids forming 1-t near t = 0.
class Profile {
public:
    Profile() = default;
    Profile(RealFn lower, RealFn upper, Provenance provenance, ProfileKind kind, std::string name);
    static Profile symmetric(RealFn lower, Provenance provenance, ProfileKind kind, std::string name);

    // J(t); zero at t = 0 and t = 1.
    double operator()(double t) const;
    double lower(double t) const;
    double upper(double t) const;
    // min(J(t), J(1-t)) for t in (0, 1/2].
    double tilde(double t) const;

    Profile scaled(double c) const;
    bool is_symmetric() const { return symmetric_; }
    Provenance provenance() const { return provenance_; }
    ProfileKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

private:
    RealFn lower_, upper_;
    bool symmetric_ = false;
    Provenance provenance_ = Provenance::analytic;
    ProfileKind kind_ = ProfileKind::exact;
    std::string name_;
};

// Half-line profile min(rho(Q(t)), rho(Q(1-t))); exact for log-concave measures.
Profile profile_of(const Measure1D& m);

// phi(Phi^{-1}(t)) and t sqrt(log(1 + 1/t)).
Profile gaussian_profile();
Profile comparator_I0();
double gaussian_isoperimetric(double t);
double comparator_I0_value(double t);

struct ComparatorRatio {
    double lo;
    double hi;
};
// Range of I_gamma / I_0 on [lo_t, 1/2].
ComparatorRatio gaussian_to_I0_ratio(double lo_t = 1e-6);

// inf over (0,1/2] of tilde(t)/t.
ScanResult cheeger_constant(const Profile& p);

struct GaussianConstant {
    double value;
    double argmin;
    // True when the infimum sits at the left edge of the scan grid and the
    // ratio is still falling there, i.e. the true value is a t -> 0 limit.
    bool decaying_at_edge;
    // Ratio at the edge divided by the ratio one decade to the right.
    double edge_decay;
};
GaussianConstant gaussian_constant(const Profile& p, double lo_t = 1e-8);

// Throws NotVanishing, NotSymmetric or NotConcave unless J is positive on (0,1),
// symmetric, concave and vanishing at 0 and 1 (checked on a grid).
void require_bobkov_shape(const Profile& j);

// Even measure whose half-line profile is J (symmetric, concave, vanishing at 0 and 1).
Measure1D measure_from_profile(const Profile& j);

// Minimal boundary measure over unions of at most `components` intervals,
// endpoints on a uniform u-grid of `grid` cells; an upper bound on I(t).
double union_refined_profile(const Measure1D& m, double t, int components = 3, int grid = 400);

// CSV "t,J(t)" on `points` log-spaced values in (0,1/2] mirrored into [1/2,1).
std::string profile_csv(const Profile& p, int points = 1024);
std::vector<double> profile_grid(int points);

}  // namespace isx
