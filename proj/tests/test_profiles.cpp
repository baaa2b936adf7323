#include "doctest.h"

#include <cmath>
#include <functional>

#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/profiles.hpp"

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

const char* kLogConcave[] = {"gaussian", "exponential", "exp_alpha:1.5", "exp_alpha:3", "uniform:0,1"};

}  // namespace

TEST_CASE("profile_of examples") {
    Profile e = profile_of(build("exponential"));
    for (double t : {1e-6, 0.1, 0.3, 0.5, 0.8, 0.99}) CHECK(e(t) == doctest::Approx(std::min(t, 1.0 - t)).epsilon(1e-12));
    CHECK(profile_of(build("gaussian"))(0.5) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
    CHECK(std::fabs(profile_of(build("cusp:0.5"))(0.5)) <= 1e-12);
}

TEST_CASE("cheeger and gaussian constants") {
    CHECK(std::fabs(cheeger_constant(profile_of(build("exponential"))).min - 1.0) <= 1e-6);
    CHECK(std::fabs(cheeger_constant(profile_of(build("uniform:0,1"))).min - 2.0) <= 1e-6);
    CHECK(cheeger_constant(profile_of(build("cusp:0.5"))).min <= 1e-12);
    CHECK(std::fabs(gaussian_constant(gaussian_profile()).value - 1.0) <= 1e-6);
    CHECK(std::fabs(gaussian_constant(profile_of(build("uniform:0,1"))).value - std::sqrt(2.0 * M_PI)) <= 1e-6);
    GaussianConstant ex = gaussian_constant(profile_of(build("exponential")));
    CHECK(ex.decaying_at_edge);
    CHECK(ex.value < 0.5);
}

TEST_CASE("property: tilde uses the smaller of the two sides") {
    for (const char* spec : {"gaussian", "exponential", "exp_alpha:1.5", "cusp:0.5", "uniform:-1,2"}) {
        Profile p = profile_of(build(spec));
        for (double t : log_grid(1e-8, 0.5, 16)) {
            INFO(spec << " t=" << t);
            CHECK(p.tilde(t) == std::min(p.lower(t), p.upper(t)));
            // through operator() the mirror point is 1 - (1 - t), which can differ from t by rounding
            CHECK(p.tilde(t) == doctest::Approx(std::min(p(t), p(1.0 - t))).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: tilde I / t is non-increasing for log-concave measures") {
    for (const char* spec : kLogConcave) {
        Profile p = profile_of(build(spec));
        std::vector<double> grid = log_grid(1e-8, 0.5, 32);
        std::size_t bad = 0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double a = p.tilde(grid[i]) / grid[i], b = p.tilde(grid[i + 1]) / grid[i + 1];
            if (b > a + 1e-9 * std::max(1.0, a)) ++bad;
        }
        INFO(spec);
        CHECK(bad == 0);
    }
}

TEST_CASE("property: Cheeger's inequality against the Poincare bracket") {
    for (const char* spec : kLogConcave) {
        Measure1D m = build(spec);
        double che = cheeger_constant(profile_of(m)).min;
        PoincareBracket b = poincare_bracket(m);
        INFO(spec);
        CHECK(b.ledger.hi >= che / 2.0 * (1.0 - 1e-9));
    }
}

TEST_CASE("Gaussian profile against an independent erfc-based oracle") {
    // phi(Phi^{-1}(t)) via Newton on erfc
    auto oracle = [](double t) {
        double x = -1.0;
        for (int i = 0; i < 100; ++i) {
            double f = 0.5 * std::erfc(-x / std::sqrt(2.0)) - t;
            double d = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
            double step = f / d;
            x -= step;
            if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
        }
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    };
    for (double t : {1e-6, 1e-3, 0.05, 0.2, 0.5}) CHECK(std::fabs(gaussian_isoperimetric(t) - oracle(t)) <= 1e-9);
}

TEST_CASE("measure_from_profile") {
    Measure1D g = measure_from_profile(gaussian_profile());
    for (double x = -4.0; x <= 4.0; x += 0.5)
        CHECK(std::fabs(g.density(x) - std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI)) <= 1e-6);
    Measure1D e = measure_from_profile(profile_of(build("exponential")));
    for (double t : {1e-4, 0.1, 0.4}) CHECK(std::fabs(e.quantile(t) - std::log(2.0 * t)) <= 1e-6);

    RealFn half = [](double t) { return t; };
    CHECK(throws_kind(ErrorKind::NotSymmetric, [&] {
        measure_from_profile(Profile(half, [](double t) { return 2.0 * t; }, Provenance::user_supplied,
                                     ProfileKind::exact, "lopsided"));
    }));
    CHECK(throws_kind(ErrorKind::NotVanishing, [] {
        measure_from_profile(Profile::symmetric([](double t) { return 0.1 + t; }, Provenance::user_supplied,
                                                ProfileKind::exact, "offset"));
    }));
    CHECK(throws_kind(ErrorKind::NotConcave, [] {
        measure_from_profile(Profile::symmetric([](double t) { return t * t; }, Provenance::user_supplied,
                                                ProfileKind::exact, "convex"));
    }));
}

TEST_CASE("union refinement never exceeds the half-line profile") {
    Measure1D m = build("exp_alpha:1.5");
    Profile p = profile_of(m);
    for (double t : {0.05, 0.2, 0.45}) CHECK(union_refined_profile(m, t) <= p.tilde(t) * (1.0 + 1e-9));
}

TEST_CASE("comparator ratio window") {
    ComparatorRatio r = gaussian_to_I0_ratio();
    CHECK(r.lo > 0.5);
    CHECK(r.hi < 1.5);
}
