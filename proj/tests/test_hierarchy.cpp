#include "doctest.h"

#include <cmath>
#include <functional>

#include "isoperimetrix/capacity.hpp"
#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
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

void check_citations(const ConstantLedger& l) {
    for (const auto& f : l.factors) {
        INFO(f.label);
        CHECK_FALSE(f.citation.empty());
    }
}

}  // namespace

TEST_CASE("ledger audit") {
    ConstantLedger l;
    l.seed = 3.0;
    l.lo = l.hi = 3.0;
    l.apply({"half", 0.5, "x"});
    l.apply({"third", 1.0 / 3.0, "y"}, false);
    CHECK(ledger_audit(l));
    CHECK(l.hi == doctest::Approx(1.5));
    l.lo *= 1.001;
    CHECK_FALSE(ledger_audit(l));
}

TEST_CASE("property: every ledger produced by the transfer maps audits") {
    std::vector<ConstantLedger> ledgers;
    ledgers.push_back(os_to_iso(power_function(2.0), 2.0, 1.0).ledger);
    ledgers.push_back(os_to_iso(power_function(3.0), 3.0, 0.7).ledger);
    ledgers.push_back(os_to_iso(power_function(1.5), 1.5, 1.0).ledger);
    ledgers.push_back(os_to_iso(phi_function(2.0), 2.0, 1.0).ledger);
    ledgers.push_back(iso_to_os(profile_of(build("exponential")), power_function(2.0), 2.0).ledger);
    ledgers.push_back(poincare_bracket(build("gaussian")).ledger);
    ledgers.push_back(qls_bridge(1.5, 1.0, QlsDirection::to_iso).transfer.ledger);
    ledgers.push_back(qls_bridge(1.5, 0.2, QlsDirection::from_iso).transfer.ledger);
    for (const auto& l : ledgers) {
        INFO(l.instance);
        CHECK(ledger_audit(l));
        check_citations(l);
    }
}

TEST_CASE("os_to_iso with N = t^2, q = 2, D = 1") {
    TransferResult r = os_to_iso(power_function(2.0), 2.0, 1.0);
    REQUIRE(r.profile);
    // (D/8) (t(1-t))^{1/2} N^(t) at t = 1/2
    double expect = 0.125 * std::sqrt(0.25) * std::sqrt(0.5);
    CHECK(r.profile->tilde(0.5) == doctest::Approx(expect).epsilon(1e-12));
    for (double t : {1e-4, 0.01, 0.2}) {
        double oracle = 0.125 * std::sqrt(t * (1.0 - t)) * std::sqrt(t);
        CHECK(r.profile->tilde(t) == doctest::Approx(oracle).epsilon(1e-12));
    }
    REQUIRE(r.diagnostics.size() >= 1);
    CHECK(r.diagnostics[0] == "predicates used: is_young");
    CHECK(r.ledger.factors[0].citation == "Lemma E-M");
}

TEST_CASE("os_to_iso edge cases") {
    TransferResult z = os_to_iso(power_function(2.0), 2.0, 0.0);
    CHECK(z.profile->tilde(0.3) == 0.0);
    CHECK(z.ledger.lo == 0.0);
    CHECK(throws_kind(ErrorKind::QOutOfRange, [] { os_to_iso(power_function(2.0), 0.5, 1.0); }));
    CHECK(throws_kind(ErrorKind::PredicateFails, [] { os_to_iso(power_function(1.2), 1.5, 1.0); }));
}

TEST_CASE("property: os_to_iso bound scales linearly in D") {
    TransferResult a = os_to_iso(power_function(1.5), 1.5, 1.0);
    TransferResult b = os_to_iso(power_function(1.5), 1.5, 2.5);
    for (double t : {1e-3, 0.1, 0.4}) CHECK(b.profile->tilde(t) == doctest::Approx(2.5 * a.profile->tilde(t)));
}

TEST_CASE("iso_to_os on the exponential profile") {
    IsoToOs r = iso_to_os(profile_of(build("exponential")), power_function(2.0), 2.0);
    CHECK(r.b_infimum > 0.0);
    REQUIRE(r.ledger.factors.size() == 3);
    CHECK(r.ledger.factors[0].value == 1.0);
    CHECK(r.ledger.factors[1].value == r.b_infimum);
    CHECK(r.ledger.factors[2].value == 0.25);
    CHECK(r.ledger.lo == doctest::Approx(r.profile_constant * r.b_infimum / 4.0));
    Profile zero = Profile::symmetric([](double) { return 0.0; }, Provenance::analytic, ProfileKind::exact, "zero");
    CHECK(iso_to_os(zero, power_function(2.0), 2.0).ledger.lo == 0.0);
}

TEST_CASE("transform_N2") {
    Transformed t = transform_N2(power_function(2.0), 2.0, 2.0, 2.0);
    CHECK(t.is_young.holds());
    CHECK(t.ratio_nondecreasing.holds());
    // integral over [t, inf) of s^{-1} s^{-1} ds = 1/t, so N2^(t) = t^{1/2}
    for (double s : {1e-6, 1e-2, 0.5, 10.0}) CHECK(t.n2.wedge(s) == doctest::Approx(std::sqrt(s)).epsilon(1e-6));
    CHECK(throws_kind(ErrorKind::IntegrabilityFails, [] { transform_N2(power_function(8.0), kInf, 2.0, 2.0); }));
}

TEST_CASE("cap_to_os and os_to_cap") {
    OrliczFunction sq = power_function(2.0);
    CapacityBound unit{2.0, [sq](double t) { return sq.wedge(t); }, CapacityKind::lower_bound, "N^"};
    CapToOs r = cap_to_os(unit, sq, false);
    CHECK(r.d2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.ledger.lo == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.ledger.hi == doctest::Approx(1.0).epsilon(1e-9));
    CapacityBound weak = os_to_cap(sq, 2.0, 1.0, true);
    for (double t : {1e-6, 0.1, 0.5}) CHECK(weak(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-10));
}

TEST_CASE("closed_form_constants") {
    ClosedForm a = closed_form_constants(1.0, 2.0);
    CHECK(a.c == doctest::Approx(1.0));
    CHECK(a.b == doctest::Approx(1.0));
    ClosedForm b = closed_form_constants(1.0, 4.0);
    CHECK(b.c == doctest::Approx(1.0));
    CHECK(b.b == doctest::Approx(1.0));
    ClosedForm c = closed_form_constants(1.0, 1.0);
    CHECK(c.c == doctest::Approx(std::sqrt(0.5)));
    CHECK(throws_kind(ErrorKind::AlphaTooSmall, [] { closed_form_constants(0.25, 1.0); }));
    CHECK(throws_kind(ErrorKind::QOutOfRange, [] { closed_form_constants(1.0, 0.5); }));
}

TEST_CASE("poincare_bracket") {
    PoincareBracket e = poincare_bracket(build("exponential"));
    CHECK(std::max(e.b_plus, e.b_minus) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(e.ledger.lo == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(e.ledger.hi == doctest::Approx(1.0).epsilon(1e-6));
    PoincareBracket g = poincare_bracket(build("gaussian"));
    CHECK(g.ledger.lo <= 1.0);
    CHECK(g.ledger.hi >= 1.0);
    CHECK(poincare_bracket(build("cusp:0.5")).ledger.lo > 0.0);
    CHECK(throws_kind(ErrorKind::DivergentIntegral, [] { poincare_bracket(build("cusp:1.5")); }));
}

TEST_CASE("property: Buser floor across log-concave built-ins") {
    double worst = kInf;
    for (const char* spec : {"gaussian", "exponential", "exp_alpha:1.5", "exp_alpha:3", "uniform:0,1"}) {
        Measure1D m = build(spec);
        worst = std::min(worst, cheeger_constant(profile_of(m)).min / poincare_bracket(m).ledger.hi);
    }
    MESSAGE("min D_Che / Poincare upper = " << worst);
    CHECK(worst >= 0.25);
}

TEST_CASE("Gaussian log-Sobolev sweep stays above 1/sqrt(2)") {
    LogSobolevSweep s = log_sobolev_sweep(build("gaussian"));
    CHECK(s.upper >= (1.0 - 0.02) / std::sqrt(2.0));
    CHECK(s.tested > 10);
}

TEST_CASE("qls_bridge") {
    QlsResult r = qls_bridge(2.0, 1.0, QlsDirection::to_iso);
    REQUIRE(r.transfer.profile);
    CHECK(r.shape_constant > 0.0);
    CHECK(r.transfer.ledger.lo == doctest::Approx(r.shape_constant).epsilon(1e-12));
    for (double t : log_grid(1e-6, 0.45, 4))
        CHECK(r.transfer.profile->tilde(t) >= r.shape_constant * t * std::sqrt(std::log(1.0 / t)) * (1.0 - 1e-9));
    bool unresolved = false;
    for (const auto& n : r.transfer.ledger.notes) unresolved = unresolved || n.rfind("unresolved", 0) == 0;
    CHECK(unresolved);
    CHECK(throws_kind(ErrorKind::QOutOfRange, [] { qls_bridge(2.5, 1.0, QlsDirection::to_iso); }));
}

TEST_CASE("consistency loop on the exponential measure, q = 2") {
    Profile truth = profile_of(build("exponential"));
    IsoToOs fwd = iso_to_os(truth, power_function(2.0), 2.0);
    TransferResult back = os_to_iso(power_function(2.0), 2.0, fwd.ledger.lo);
    for (double t : log_grid(1e-4, 0.5, 16)) CHECK(back.profile->tilde(t) <= truth.tilde(t));
}
