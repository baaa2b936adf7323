#include "doctest.h"

#include <cmath>
#include <random>

#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"

using namespace isx;

namespace {

double bisect_phi(double q, double y) {
    double lo = 0.0, hi = 100.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double v = std::pow(mid, q) * std::log1p(std::pow(mid, q));
        (v < y ? lo : hi) = mid;
    }
    return lo;
}

// Random piecewise-linear function on [-3, 3] with ~linear extension.
GridFunction random_pl(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> x, y;
    for (int i = 0; i <= 12; ++i) {
        x.push_back(-3.0 + 0.5 * i);
        y.push_back(u(rng));
    }
    return GridFunction(x, y);
}

}  // namespace

TEST_CASE("orlicz_norm examples") {
    Measure1D u = build("uniform:0,1");
    Measure1D g = build("gaussian");
    OrliczFunction sq = power_function(2.0);
    GridFunction ind = indicator_of_lower_set(g, 0.25);
    CHECK(orlicz_norm(ind, g, sq) == doctest::Approx(0.5).epsilon(1e-6));
    GridFunction c({-10.0, 10.0}, {3.0, 3.0});
    CHECK(orlicz_norm(c, g, power_function(3.0)) == doctest::Approx(3.0).epsilon(1e-9));
    GridFunction id({0.0, 1.0}, {0.0, 1.0});
    CHECK(orlicz_norm(id, u, sq) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("weak norm examples") {
    Measure1D e = build("exponential");
    for (double a : {0.1, 0.3}) {
        GridFunction ind = indicator_of_lower_set(e, a);
        CHECK(weak_orlicz_norm(ind, e, phi_function(2.0)) ==
              doctest::Approx(phi_function(2.0).wedge(a)).epsilon(1e-6));
    }
    GridFunction zero({-1.0, 1.0}, {0.0, 0.0});
    CHECK(weak_orlicz_norm(zero, e, power_function(2.0)) == 0.0);
}

TEST_CASE("dual_norm_indicator examples") {
    Measure1D g = build("gaussian");
    CHECK(dual_norm_indicator(g, 0.25, power_function(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dual_norm_indicator(g, 1.0, power_function(3.0)) == doctest::Approx(1.0).epsilon(1e-12));
    double expect = 0.5 * bisect_phi(2.0, 2.0);
    CHECK(dual_norm_indicator(g, 0.5, phi_function(2.0)) == doctest::Approx(expect).epsilon(1e-9));
    CHECK_THROWS_AS(dual_norm_indicator(g, 0.5, power_function(0.5)), Error);
}

TEST_CASE("adjoint and legendre examples") {
    OrliczFunction cube = power_function(3.0);
    for (double t : {1e-4, 0.3, 2.0, 50.0}) CHECK(cube.wedge(t) == doctest::Approx(std::cbrt(t)).epsilon(1e-10));
    CHECK(legendre(power_function(2.0), 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::isinf(legendre(power_function(1.0), 2.0)));
    CHECK(std::fabs(legendre(power_function(1.0), 0.5)) <= 1e-12);
}

TEST_CASE("property: adjoint is an involution") {
    for (const char* spec : {"power:1", "power:1.5", "power:2", "power:3", "phi:1", "phi:1.5", "phi:2"}) {
        OrliczFunction n = parse_orlicz(spec);
        OrliczFunction back = adjoint(adjoint(n));
        for (double t : {1e-6, 1e-3, 0.1, 0.7, 3.0, 40.0}) {
            INFO(spec << " t=" << t);
            CHECK(std::fabs(back(t) - n(t)) <= 1e-8 * n(t));
        }
    }
}

TEST_CASE("truncate_at_zero") {
    OrliczFunction sq = power_function(2.0);
    OrliczFunction t2 = truncate_at_zero(sq, 2.0);
    for (double t : {1e-3, 0.5, 4.0}) CHECK(t2(t) == doctest::Approx(sq(t)).epsilon(1e-10));
    for (double q : {1.0, 1.5, 2.0}) {
        OrliczFunction n0 = truncate_at_zero(phi_function(q), q);
        double c = std::pow(2.0, 1.0 / q) / bisect_phi(q, 2.0);
        for (double t : {0.5, 1.0, 10.0}) {
            INFO("q=" << q << " t=" << t);
            CHECK(n0.wedge(t) == doctest::Approx(c * std::pow(t, 1.0 / q)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(truncate_at_zero(power_function(1.5), 2.0), Error);
}

TEST_CASE("check_predicates examples") {
    PredicateReport sq = check_predicates(power_function(2.0), 2.0, 1.0);
    CHECK(sq.is_young.holds());
    CHECK(sq.ratio_nondecreasing.holds());
    // N(t^alpha)/t = t^{2 alpha - 1}: non-increasing only for alpha <= 1/2
    CHECK(sq.power_nonincreasing.state == Tri::fails);
    CHECK(check_predicates(power_function(2.0), 2.0, 0.5).power_nonincreasing.holds());
    for (double q : {1.0, 1.5, 2.0}) {
        PredicateReport p = check_predicates(phi_function(q), q, 1.0 / (2.0 * q));
        CHECK(p.power_nonincreasing.holds());
    }
    PredicateReport root = check_predicates(power_function(0.5), 1.0, 1.0);
    CHECK(root.is_young.state == Tri::fails);
}

TEST_CASE("property: Lemma E-M and the weak-norm inequality on random triples") {
    std::mt19937_64 rng(99);
    const char* measures[] = {"gaussian", "exponential", "exp_alpha:1.5", "uniform:-3,3", "exp_alpha:3"};
    const char* young[] = {"power:1", "power:2", "power:3", "phi:1", "phi:2"};
    for (int k = 0; k < 60; ++k) {
        Measure1D m = build(measures[k % 5]);
        OrliczFunction n = parse_orlicz(young[(k / 5) % 5]);
        GridFunction f = random_pl(rng);
        double e = orlicz_norm(f.shifted(expectation(f, m)), m, n);
        double med = orlicz_norm(f.shifted(median_of(f, m)), m, n);
        INFO(measures[k % 5] << " " << young[(k / 5) % 5]);
        CHECK(0.5 * e <= med * (1.0 + 1e-9));
        CHECK(med <= 3.0 * e * (1.0 + 1e-9));
        CHECK(weak_orlicz_norm(f, m, n) <= orlicz_norm(f, m, n) * (1.0 + 1e-9));
    }
}

TEST_CASE("property: discretized dual maximization never beats the formula") {
    for (const char* ms : {"gaussian", "exponential"}) {
        Measure1D m = build(ms);
        for (const char* ns : {"power:2", "power:3", "phi:2"}) {
            for (double a : {0.1, 0.25, 0.5}) {
                DualSandwich s = dual_norm_sandwich(m, a, parse_orlicz(ns));
                INFO(ms << " " << ns << " a=" << a);
                CHECK(s.lower <= dual_norm_indicator(m, a, parse_orlicz(ns)) + 1e-6);
            }
        }
    }
}
