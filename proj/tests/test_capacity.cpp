#include "doctest.h"

#include <cmath>

#include "isoperimetrix/capacity.hpp"
#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"

using namespace isx;

TEST_CASE("interval capacity closed forms") {
    Measure1D e = build("exponential");
    IntervalCapacity c = interval_capacity(e, -std::log(2.0), 0.0, 2.0);
    CHECK_FALSE(c.divergent);
    CHECK(c.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(interval_capacity(build("uniform:0,1"), 0.25, 0.5, 2.0).value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_THROWS_AS(interval_capacity(e, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("capq examples") {
    Measure1D e = build("exponential");
    for (double t : {1e-4, 0.05, 0.3, 0.5}) CHECK(capq(e, 1.0, t) == doctest::Approx(t).epsilon(1e-9));
    CapqDetail d = capq_detail(e, 2.0, 0.25);
    CHECK(d.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(d.left == doctest::Approx(d.right).epsilon(1e-8));
    CHECK_THROWS_AS(capq(e, 0.5, 0.25), Error);
}

TEST_CASE("property: Cap_2(t,1/2) >= 0.9 sqrt(t) on the exponential measure") {
    Measure1D e = build("exponential");
    for (double t : log_grid(1e-4, 0.45, 8)) {
        INFO("t=" << t);
        CHECK(capq(e, 2.0, t) / std::sqrt(t) >= 0.9);
    }
}

TEST_CASE("cap_oracle agrees with the closed forms") {
    OracleResult e = cap_oracle(build("exponential"), 2.0, 0.25);
    CHECK(std::fabs(e.value / (1.0 / std::sqrt(2.0)) - 1.0) <= 0.02);
    OracleResult u = cap_oracle(build("uniform:0,1"), 2.0, 0.25);
    CHECK(std::fabs(u.value / 2.0 - 1.0) <= 0.02);
}

// The oracle grid must resolve the plateau at small t; 512 cells overshoot by ~10% at t = 0.02.
TEST_CASE("property: q = 1 oracle sits between inf I and inf I + 2%") {
    for (const char* spec : {"gaussian", "exponential", "exp_alpha:1.5", "uniform:0,1"}) {
        Measure1D m = build(spec);
        Profile p = profile_of(m);
        for (double t : {0.02, 0.1, 0.2, 0.3, 0.45}) {
            double inf_i = inf_scan([&](double s) { return p.tilde(s); }, t, 0.5, 64).min;
            double orc = cap_oracle(m, 1.0, t, 4096).value;
            INFO(spec << " t=" << t);
            CHECK(orc >= inf_i * (1.0 - 1e-9));
            CHECK(orc <= inf_i * 1.02);
        }
    }
}

TEST_CASE("lift") {
    CapacityBound c{1.0, [](double) { return 0.7; }, CapacityKind::lower_bound, "const"};
    CapacityBound l2 = lift(c, 2.0);
    for (double a : {1e-3, 0.1, 0.4}) CHECK(l2(a) == doctest::Approx(0.7 / std::sqrt(0.5 - a)).epsilon(1e-8));
    CHECK(gamma_factor(2.0, kInf) == 1.0);

    // identity at q = q0
    CapacityBound same = lift(l2, 2.0);
    CHECK(same(0.2) == l2(0.2));

    // monotone in the input bound
    CapacityBound small{1.0, [](double t) { return t; }, CapacityKind::lower_bound, "t"};
    CapacityBound big{1.0, [](double t) { return 2.0 * t + 0.01; }, CapacityKind::lower_bound, "2t"};
    CapacityBound ls = lift(small, 1.5), lb = lift(big, 1.5);
    for (double a : {1e-4, 0.01, 0.2, 0.45}) CHECK(ls(a) <= lb(a));
    CHECK_THROWS_AS(lift(l2, 1.5), Error);
}

TEST_CASE("cap1_profile_bridge") {
    Profile zero = Profile::symmetric([](double) { return 0.0; }, Provenance::analytic, ProfileKind::exact, "zero");
    CapacityBound b = cap1_profile_bridge(zero);
    CHECK(b(0.1) == 0.0);
    Profile bump = Profile::symmetric([](double t) { return std::sin(20.0 * t) + 1.0; }, Provenance::analytic,
                                      ProfileKind::exact, "bump");
    CHECK_THROWS_AS(cap1_profile_bridge(bump), Error);
}

TEST_CASE("singularity smoothing") {
    // N(t) = t^2 from q0 = 1 to q = 2: the weight s^{-1} is not integrable at infinity
    SmoothingCheck sq = singularity_smooth(power_function(2.0), 2.0, 1.0, 2.0, 0.1);
    CHECK(sq.divergent);
    // N(t) = t^3 from q0 = 1.5 to q = 2 converges and satisfies the bound
    SmoothingCheck cube = singularity_smooth(power_function(3.0), 2.0, 1.5, 3.0, 0.1);
    CHECK_FALSE(cube.divergent);
    CHECK(cube.lhs <= cube.delta * cube.rhs * (1.0 + 1e-9));
    CHECK(cube.lhs >= cube.rhs);
    CHECK_THROWS_AS(singularity_smooth(power_function(1.5), 2.0, 1.0, 3.0, 0.1), Error);
}
