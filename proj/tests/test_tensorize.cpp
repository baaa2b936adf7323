#include "doctest.h"

#include <cmath>
#include <functional>

#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"
#include "isoperimetrix/tensorize.hpp"

using namespace isx;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

struct Named {
    const char* label;
    Profile j;
};

std::vector<Named> inputs() {
    return {{"I_gamma", gaussian_profile()},
            {"exponential", profile_of(build("exponential"))},
            {"exp_alpha:1.5", profile_of(build("exp_alpha:1.5"))}};
}

}  // namespace

TEST_CASE("essential monotonicity constants") {
    CHECK(essential_nondecreasing({1.0, 2.0, 3.0}) == 1.0);
    CHECK(essential_nondecreasing({2.0, 1.0, 3.0}) == doctest::Approx(2.0));
    CHECK(essential_nonincreasing({3.0, 2.0, 1.0}) == 1.0);
    CHECK(essential_nonincreasing({1.0, 2.0, 0.5, 1.5}) == doctest::Approx(3.0));
}

TEST_CASE("control_rate examples") {
    CHECK(control_rate(comparator_I0()) == doctest::Approx(1.0).epsilon(1e-12));
    double ex = control_rate(profile_of(build("exponential")));
    CHECK(std::isfinite(ex));
    CHECK(ex >= 1.0);
    Profile spike = Profile::symmetric([](double t) { return comparator_I0_value(t) / std::sqrt(t); },
                                       Provenance::user_supplied, ProfileKind::exact, "I0/sqrt(t)");
    CHECK(std::isinf(control_rate(spike)));
    CHECK(throws_kind(ErrorKind::InfiniteControlRate, [&] { build_machinery(spike); }));
}

TEST_CASE("property: J0 <= J1 <= D J0 on the node grid") {
    for (const auto& in : inputs()) {
        TensorMachinery m = build_machinery(in.j);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < m.t.size(); ++i) {
            if (m.j0[i] > m.j1[i] * (1.0 + 1e-9)) ++bad;
            if (m.j1[i] > m.control * m.j0[i] * (1.0 + 1e-9)) ++bad;
        }
        INFO(in.label << " D=" << m.control);
        CHECK(m.t.size() >= 1024);
        CHECK(bad == 0);
    }
}

TEST_CASE("property: T is non-decreasing and T^2/x has a finite essential constant") {
    for (const auto& in : inputs()) {
        TensorMachinery m = build_machinery(in.j);
        std::size_t descents = 0;
        for (std::size_t k = 0; k + 1 < m.tx.size(); ++k)
            if (m.tx[k + 1] < m.tx[k] * (1.0 - 1e-9)) ++descents;
        INFO(in.label);
        CHECK(descents == 0);
        CHECK(std::isfinite(m.t2x_essential));
    }
}

TEST_CASE("property: last-thing comparability") {
    for (const auto& in : inputs()) {
        TensorMachinery m = build_machinery(in.j);
        LastThing lt = last_thing_check(m);
        INFO(in.label);
        CHECK(lt.lower >= 1.0 - 1e-6);
        CHECK(std::isfinite(lt.upper));
        for (double t : {1e-10, 1e-4, 0.1, 0.5, 0.9, 1.0}) {
            double r = m.wedge_at(t) * std::sqrt(t) / m.j1_at(t);
            CHECK(r <= 1.0 + 1e-9);
            CHECK(r >= 1.0 / lt.upper - 1e-9);
        }
    }
}

TEST_CASE("property: scaling J by c leaves the control rate and last-thing ratios unchanged") {
    Profile j = profile_of(build("exp_alpha:1.5"));
    TensorMachinery a = build_machinery(j);
    TensorMachinery b = build_machinery(j.scaled(3.0));
    CHECK(b.control == doctest::Approx(a.control).epsilon(1e-12));
    for (double t : {1e-8, 1e-3, 0.3}) CHECK(b.wedge_at(t) == doctest::Approx(3.0 * a.wedge_at(t)).epsilon(1e-9));
    LastThing la = last_thing_check(a), lb = last_thing_check(b);
    CHECK(lb.lower == doctest::Approx(la.lower).epsilon(1e-9));
    CHECK(lb.upper == doctest::Approx(la.upper).epsilon(1e-9));
}

TEST_CASE("property: Bobkov round trip preserves N^") {
    Profile j = profile_of(build("exponential"));
    TensorMachinery direct = build_machinery(j);
    TensorMachinery trip = build_machinery(profile_of(measure_from_profile(j)));
    for (double t : log_grid(1e-4, 0.5, 8))
        CHECK(std::fabs(trip.wedge_at(t) / direct.wedge_at(t) - 1.0) <= 1e-3);
}

TEST_CASE("beckner_functional") {
    Measure1D g = build("gaussian");
    RealFn unit = [](double) { return 1.0; };
    GridFunction c({-5.0, 5.0}, {2.0, 2.0});
    CHECK(beckner_functional(c, g, unit) <= 1e-7);
    for (double a : {0.1, 0.3, 0.5}) {
        GridFunction ind = indicator_of_lower_set(g, a);
        double p = 2.0 - 1.0 / (1.0 + 1e-6);  // first sweep node maximizes a - a^{2/p}
        double expect = std::sqrt(a - std::pow(a, 2.0 / p));
        INFO("a=" << a);
        CHECK(beckner_functional(ind, g, unit) == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("coordinate half-space ceiling") {
    Measure1D e = build("exponential");
    CHECK(coordinate_halfspace_upper(e, 5, 0.5) == doctest::Approx(0.5));
    Measure1D m = build("exp_alpha:1.5");
    CHECK(coordinate_halfspace_upper(m, 1, 0.2) == profile_of(m)(0.2));
    for (int k : {1, 3, 50}) CHECK(coordinate_halfspace_upper(build("gaussian"), k, 0.1) == doctest::Approx(gaussian_isoperimetric(0.1)));
}

TEST_CASE("big-lemma transform of J1 passes its certificates") {
    TensorMachinery m = build_machinery(gaussian_profile());
    bool any = false;
    for (const auto& f : m.facts) {
        INFO(f.name);
        CHECK(f.holds);
        any = true;
    }
    CHECK(any);
}
