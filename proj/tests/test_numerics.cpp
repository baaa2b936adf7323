#include "doctest.h"

#include <cmath>
#include <random>

#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/kernels.hpp"
#include "isoperimetrix/numerics.hpp"

using namespace isx;

TEST_CASE("integrate closed forms") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(integrate([](double s) { return std::exp(-s); }, 0.0, kInf) - 1.0) <= 1e-10);
    CHECK(std::fabs(integrate([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0) - 2.0) <= 1e-8);
}

TEST_CASE("integrate_algebraic removes the endpoint weight") {
    // integral of (s-0)^{-1/2} e^{-s} over [0, inf) = sqrt(pi)
    double v = integrate_algebraic([](double s) { return std::exp(-s); }, 0.0, kInf, 0.5);
    CHECK(std::fabs(v - std::sqrt(M_PI)) <= 1e-8);
}

TEST_CASE("integrate flags divergence") {
    CHECK_THROWS_AS(integrate([](double s) { return 1.0 / s; }, 1.0, kInf), Error);
}

TEST_CASE("property: integrate is additive") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), pt(-3.0, 3.0);
    QuadratureConfig cfg;
    for (int k = 0; k < 50; ++k) {
        double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
        RealFn f = [=](double x) { return c0 * std::sin(c1 * x) + c2 * std::exp(-x * x); };
        double a = pt(rng), b = pt(rng), c = pt(rng);
        double lhs = integrate(f, a, b, cfg) + integrate(f, b, c, cfg) - integrate(f, a, c, cfg);
        CHECK(std::fabs(lhs) <= 4.0 * cfg.abs_tol + 1e-12 * (1.0 + std::fabs(integrate(f, a, c, cfg))));
    }
}

TEST_CASE("invert_monotone examples") {
    CHECK(invert_monotone([](double t) { return t * t; }, 4.0, {0.0, 10.0}) == doctest::Approx(2.0).epsilon(1e-12));
    RealFn phi_cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    CHECK(std::fabs(invert_monotone(phi_cdf, 0.5, {-10.0, 10.0})) <= 1e-12);
    RealFn phi2 = [](double t) { return t * t * std::log1p(t * t); };
    double r = invert_monotone(phi2, 2.0, {0.0, 10.0});
    // independent bisection
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (phi2(mid) < 2.0 ? lo : hi) = mid;
    }
    CHECK(std::fabs(r - lo) <= 1e-10);
    CHECK_THROWS_AS(invert_monotone([](double t) { return t; }, 5.0, {0.0, 1.0}), Error);
}

TEST_CASE("property: invert_monotone inverts random increasing cubics") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(0.1, 3.0), x(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        double a = pos(rng), b = pos(rng), c = x(rng);
        RealFn f = [=](double t) { return a * t * t * t + b * t + c; };
        double t0 = x(rng);
        double got = invert_monotone(f, f(t0), {-3.0, 3.0});
        CHECK(std::fabs(got - t0) <= 1e-9);
    }
}

TEST_CASE("inf_scan examples") {
    ScanResult s = inf_scan([](double t) { return t; }, 1.0, 2.0);
    CHECK(s.argmin == doctest::Approx(1.0));
    CHECK(s.min == doctest::Approx(1.0));
    ScanResult p = inf_scan([](double t) { return (t - 0.3) * (t - 0.3); }, 1e-8, 1.0);
    CHECK(std::fabs(p.argmin - 0.3) <= 1e-6);
    CHECK(std::fabs(p.min) <= 1e-6);
    CHECK_THROWS_AS(inf_scan([](double t) { return t; }, 2.0, 1.0), Error);
}

TEST_CASE("property: inf_scan never exceeds its grid values") {
    RealFn f = [](double t) { return std::sin(7.0 * std::log(t)) + t; };
    ScanResult s = inf_scan(f, 1e-6, 1.0, 32);
    for (double t : log_grid(1e-6, 1.0, 32)) CHECK(s.min <= f(t) + 1e-15);
}

TEST_CASE("GridFunction shift and interpolation") {
    GridFunction g({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
    CHECK(g(0.5) == doctest::Approx(1.0));
    CHECK(g(-1.0) == doctest::Approx(0.0));
    CHECK(g.shifted(1.0)(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(GridFunction({0.0, 0.0}, {1.0, 1.0}), Error);
}

TEST_CASE("property: AVX2 kernels agree with the scalar reference") {
    const kernels::Table* simd = kernels::avx2_table();
    if (!simd) {
        MESSAGE("AVX2 unavailable; only the scalar path is exercised");
        return;
    }
    const kernels::Table& ref = kernels::scalar_table();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.01, 2.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1000u}) {
        std::vector<double> a(n), b(n), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = u(rng);
            b[i] = p(rng);
            c[i] = (i % 5 == 0) ? -p(rng) : p(rng);
        }
        double sr = ref.weighted_sum(a.data(), b.data(), n), sv = simd->weighted_sum(a.data(), b.data(), n);
        CHECK(std::fabs(sr - sv) <= 1e-12 * (1.0 + std::fabs(sr)));
        CHECK(ref.argmin(a.data(), n) == simd->argmin(a.data(), n));
        double mr = ref.min_ratio(a.data(), c.data(), n), mv = simd->min_ratio(a.data(), c.data(), n);
        CHECK((mr == mv || std::fabs(mr - mv) <= 1e-15 * std::fabs(mr)));
        CHECK(ref.count_descents(a.data(), n, 1e-9) == simd->count_descents(a.data(), n, 1e-9));
    }
    std::vector<double> with_nan{3.0, std::nan(""), 1.0, std::nan(""), 1.0, 2.0};
    CHECK(ref.argmin(with_nan.data(), with_nan.size()) == 2);
    CHECK(simd->argmin(with_nan.data(), with_nan.size()) == 2);
}
