// Acceptance run: one PASS/FAIL line per criterion. Thresholds are fixed here,
// independently of the checks inside each verification suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "isoperimetrix/errors.hpp"
#include "isoperimetrix/verify.hpp"

using namespace isx;

namespace {

constexpr double kTimeLimitSeconds = 60.0;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double value(const SuiteResult& s, const std::string& key) {
    auto it = s.values.find(key);
    return it == s.values.end() ? std::nan("") : it->second;
}

std::size_t count_prefix(const SuiteResult& s, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& [k, v] : s.values) n += k.rfind(prefix, 0) == 0 ? 1 : 0;
    return n;
}

void suite_checks(Verdict& v, const SuiteResult& s) {
    for (const auto& c : s.checks) v.require(c.pass, s.suite + ": " + c.name + " (" + c.detail + ")");
}

void criterion_1(Verdict& v) {
    SuiteResult s = run_suite("exponential-anchors");
    double che = value(s, "cheeger"), cap = value(s, "cap2"), orc = value(s, "cap2_oracle");
    v.detail << "D_Che " << che << ", Cap_2(1/4,1/2) " << cap << ", oracle " << orc;
    v.require(std::fabs(che - 1.0) <= 1e-3, "cheeger = 1 +- 1e-3");
    v.require(std::fabs(cap * std::sqrt(2.0) - 1.0) <= 0.01, "Cap_2 = 1/sqrt(2) +- 1%");
    v.require(std::fabs(orc / cap - 1.0) <= 0.02, "oracle within 2%");
    suite_checks(v, s);
}

void criterion_2(Verdict& v) {
    SuiteResult s = run_suite("gaussian-profile");
    double err = value(s, "sup_error"), lo = value(s, "ratio_lo"), hi = value(s, "ratio_hi");
    v.detail << "sup-error " << err << ", ratio window [" << lo << ", " << hi << "]";
    v.require(err <= 1e-6, "sup-error <= 1e-6");
    v.require(lo >= 0.5 && lo <= hi && hi <= 1.5, "0.5 <= c1 <= c2 <= 1.5");
    suite_checks(v, s);
}

void criterion_3(Verdict& v) {
    SuiteResult s = run_suite("mazya-duality");
    double gap = value(s, "worst_rel_gap"), n = value(s, "instances");
    v.detail << n << " instances, worst relative gap " << gap;
    v.require(n == 18.0, "3 N x 3 a x 2 measures");
    v.require(gap <= 1e-4, "sandwich within 1e-4");
    suite_checks(v, s);
}

void criterion_4(Verdict& v) {
    SuiteResult s = run_suite("brackets");
    double inst = value(s, "round_trip_instances"), con = value(s, "worst_contraction");
    double triples = value(s, "em_triples"), em = value(s, "em_failures"), weak = value(s, "weak_failures");
    v.detail << inst << " round trips, worst contraction " << con << "; E-M ratio in [" << value(s, "em_ratio_lo")
             << ", " << value(s, "em_ratio_hi") << "] on " << triples << " triples, weak failures " << weak;
    v.require(inst == 12.0, "12 round-trip instances");
    v.require(con <= 4.0 * (1.0 + 1e-6), "contraction <= 4");
    v.require(triples == 200.0 && em == 0.0, "Lemma E-M on 200 triples");
    v.require(weak == 0.0, "weak-norm inequality");
    suite_checks(v, s);
}

void criterion_5(Verdict& v) {
    SuiteResult s = run_suite("counterexample");
    double che = value(s, "cheeger"), gau = value(s, "gaussian_constant"), lo = value(s, "poincare_lo");
    v.detail << "cusp:0.5 D_Che " << che << ", D_Gau " << gau << ", Poincare lower " << lo;
    v.require(che <= 1e-6, "D_Che <= 1e-6");
    v.require(gau <= 1e-6, "D_Gau <= 1e-6");
    v.require(lo > 0.0, "Poincare lower > 0");
    suite_checks(v, s);
}

void criterion_6(Verdict& v) {
    SuiteResult s = run_suite("consistency-loop");
    double over = value(s, "overshoots");
    std::size_t inst = count_prefix(s, "loss ");
    v.detail << inst << " instances, overshoots " << over << ", smallest loop loss " << value(s, "min_loss");
    v.require(inst == 12, "3 measures x 4 exponents");
    v.require(over == 0.0, "bound <= true profile on [1e-4, 1/2]");
    suite_checks(v, s);
}

void criterion_7(Verdict& v) {
    SuiteResult s = run_suite("big-lemma");
    double combos = value(s, "combos"), viol = value(s, "violations");
    v.detail << combos << " combinations, " << viol << " violations at slack 1e-9";
    v.require(combos == 8.0, "8 combinations");
    v.require(viol == 0.0, "zero violations");
    suite_checks(v, s);
}

void criterion_8(Verdict& v) {
    SuiteResult s = run_suite("log-sobolev");
    double dg = value(s, "gaussian_constant"), ls = value(s, "ls_upper");
    v.detail << "D_Gau " << dg << ", sweep " << ls << " vs floor " << (1.0 - 0.02) / std::sqrt(2.0);
    v.require(std::fabs(dg - 1.0) <= 1e-6, "D_Gau = 1");
    v.require(ls >= (1.0 - 0.02) / std::sqrt(2.0), "sweep >= 1/sqrt(2) - 2%");
    suite_checks(v, s);
}

void criterion_9(Verdict& v) {
    SuiteResult s = run_suite("tensorization");
    for (const char* label : {"I_gamma", "exponential"}) {
        std::string k = label;
        double d = value(s, k + " control_rate"), lo = value(s, k + " last_thing_lower");
        double hi = value(s, k + " last_thing_upper"), t2x = value(s, k + " t2x_essential");
        double bob = value(s, k + " bobkov_sup_error");
        v.detail << label << ": D " << d << ", last-thing [" << lo << ", " << hi << "], T^2/x constant " << t2x
                 << ", Bobkov error " << bob << "; ";
        v.require(std::isfinite(d), k + " control rate finite");
        v.require(value(s, k + " envelope_violations") == 0.0, k + " J0 <= J1 <= D J0");
        v.require(lo >= 1.0 - 1e-6 && std::isfinite(hi), k + " last-thing bounds");
        v.require(value(s, k + " facts_failed") == 0.0 && std::isfinite(t2x), k + " T certificates");
        v.require(bob <= 1e-4, k + " Bobkov round trip");
    }
    suite_checks(v, s);
}

void criterion_10(Verdict& v) {
    SuiteResult s = run_suite("qls-uniformity");
    double cnq = value(s, "cnq_min"), lo = value(s, "wedge_lo"), hi = value(s, "wedge_hi");
    std::size_t qs = count_prefix(s, "cnq q=");
    v.detail << qs << " exponents, C_{N,q} inf >= " << cnq << ", wedge ratio in [" << lo << ", " << hi << "]";
    v.require(qs == 5, "q in {1, 1.25, 1.5, 1.75, 2}");
    v.require(cnq >= 0.5, "uniform lower constant 0.5");
    v.require(lo > 0.0 && std::isfinite(hi) && lo >= 0.5 && hi <= 1.5, "wedge window inside [0.5, 1.5]");
    suite_checks(v, s);
}

}  // namespace

int main() {
    const std::vector<std::function<void(Verdict&)>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                             criterion_5, criterion_6, criterion_7, criterion_8,
                                                             criterion_9, criterion_10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i](v);
        } catch (const std::exception& e) {
            v.require(false, std::string("threw ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.require(secs < kTimeLimitSeconds, "time limit 60 s");
        std::printf("criterion %zu: %s %s (%.1f s)\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(), secs);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
