#include "isoperimetrix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "isoperimetrix/capacity.hpp"
#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"
#include "isoperimetrix/tensorize.hpp"

namespace isx {

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void check(SuiteResult& r, const std::string& name, bool ok, const std::string& detail) {
    r.checks.push_back({name, ok, detail});
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::vector<std::string> pick(const std::optional<std::string>& only, std::vector<std::string> all) {
    if (only) return {*only};
    return all;
}

// Random piecewise-linear f with `knots` breakpoints inside the quantile range [0.02, 0.98].
GridFunction random_function(const Measure1D& m, std::mt19937& rng, int knots = 6) {
    std::uniform_real_distribution<double> u(0.02, 0.98), val(-2.0, 2.0);
    std::vector<double> x, y;
    while (static_cast<int>(x.size()) < knots) {
        double xv = m.quantile(u(rng));
        if (std::find(x.begin(), x.end(), xv) == x.end()) x.push_back(xv);
    }
    std::sort(x.begin(), x.end());
    for (int k = 0; k < knots; ++k) y.push_back(val(rng));
    return GridFunction(x, y);
}

// ||f'||_q for piecewise-linear f with constant ends.
double gradient_lq(const GridFunction& f, const Measure1D& m, double q) {
    const auto& x = f.knots();
    const auto& v = f.values();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double slope = std::fabs((v[i + 1] - v[i]) / (x[i + 1] - x[i]));
        sum += std::pow(slope, q) * mass(m, x[i], x[i + 1]);
    }
    return std::pow(sum, 1.0 / q);
}

GridFunction centered(const GridFunction& f, double c) { return f.shifted(c); }

// phi(Phi^{-1}(t)) from std::erfc alone: safeguarded Newton on Phi(z) = t.
double normal_profile_oracle(double t) {
    auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); };
    double lo = -40.0, hi = 40.0, z = 0.0;
    for (int i = 0; i < 200; ++i) {
        double f = cdf(z) - t;
        if (f > 0) hi = z; else lo = z;
        double step = f / pdf(z);
        double next = z - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - z) <= 1e-15 * std::max(1.0, std::fabs(z))) {
            z = next;
            break;
        }
        z = next;
    }
    return pdf(z);
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "exponential-anchors", "gaussian-profile", "mazya-duality",  "brackets",
        "counterexample",      "consistency-loop", "big-lemma",      "log-sobolev",
        "tensorization",       "qls-uniformity",   "hierarchy-properties"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    if (name == "exponential-anchors") return suite_exponential_anchors(opts);
    if (name == "gaussian-profile") return suite_gaussian_profile(opts);
    if (name == "mazya-duality") return suite_mazya_duality(opts);
    if (name == "brackets") return suite_brackets(opts);
    if (name == "counterexample") return suite_counterexample(opts);
    if (name == "consistency-loop") return suite_consistency_loop(opts);
    if (name == "big-lemma") return suite_big_lemma(opts);
    if (name == "log-sobolev") return suite_log_sobolev(opts);
    if (name == "tensorization") return suite_tensorization(opts);
    if (name == "qls-uniformity") return suite_qls_uniformity(opts);
    if (name == "hierarchy-properties") return suite_hierarchy_properties(opts);
    throw Error(ErrorKind::UsageError, "unknown suite '" + name + "'");
}

// rho = e^{-|x|}/2: tilde I(t) = t, and the optimal Cap_2 potential between
// Q(1/4) = -log 2 and 0 gives (integral of 2e^{|x|})^{-1/2} = 2^{-1/2}.
SuiteResult suite_exponential_anchors(const SuiteOptions& opts) {
    SuiteResult r{"exponential-anchors", {}, {}, {}};
    Measure1D m = build("exponential");
    double che = cheeger_constant(profile_of(m)).min;
    double cap2 = capq(m, 2.0, 0.25, opts.cfg);
    OracleResult oracle = cap_oracle(m, 2.0, 0.25);
    double want = 1.0 / std::sqrt(2.0);
    r.values["cheeger"] = che;
    r.values["cap2"] = cap2;
    r.values["cap2_oracle"] = oracle.value;
    r.values["cap2_rel_err"] = rel_err(cap2, want);
    r.values["oracle_rel_gap"] = rel_err(oracle.value, cap2);
    check(r, "cheeger = 1 +- 1e-3", std::fabs(che - 1.0) <= 1e-3, fmt(che));
    check(r, "Cap_2(1/4,1/2) = 1/sqrt(2) +- 1%", r.values["cap2_rel_err"] <= 0.01, fmt(cap2));
    check(r, "oracle within 2% of Cap_2", r.values["oracle_rel_gap"] <= 0.02,
          fmt(oracle.value) + " layout " + oracle.layout);
    return r;
}

SuiteResult suite_gaussian_profile(const SuiteOptions&) {
    SuiteResult r{"gaussian-profile", {}, {}, {}};
    Measure1D m = build("gaussian");
    Profile p = profile_of(m);
    double sup_err = 0.0;
    std::vector<double> ts = log_grid(1e-6, 0.5, 128);
    for (double t : ts) {
        double oracle = normal_profile_oracle(t);
        sup_err = std::max(sup_err, std::fabs(p(t) - oracle));
        // Mirror point 1 - t; the oracle is symmetric.
        sup_err = std::max(sup_err, std::fabs(p.upper(t) - oracle));
    }
    double lo = kInf, hi = 0.0;
    for (double t : log_grid(1e-6, 0.4, 128)) {
        double v = p.tilde(t) / (t * std::sqrt(std::log(1.0 / t)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    r.values["sup_error"] = sup_err;
    r.values["ratio_lo"] = lo;
    r.values["ratio_hi"] = hi;
    check(r, "profile sup-error <= 1e-6 on [1e-6, 1-1e-6]", sup_err <= 1e-6, fmt(sup_err));
    check(r, "I/(t log^{1/2}(1/t)) window inside [0.5, 1.5]", lo >= 0.5 && hi <= 1.5,
          "[" + fmt(lo) + ", " + fmt(hi) + "]");
    return r;
}

SuiteResult suite_mazya_duality(const SuiteOptions& opts) {
    SuiteResult r{"mazya-duality", {}, {}, {}};
    auto measures = pick(opts.measure, {"gaussian", "exponential"});
    auto orliczes = pick(opts.orlicz, {"power:2", "power:3", "phi:2"});
    std::vector<double> as = opts.a ? std::vector<double>{*opts.a} : std::vector<double>{0.1, 0.25, 0.5};
    double worst = 0.0;
    int count = 0;
    for (const auto& ms : measures) {
        Measure1D m = build(ms);
        for (const auto& ns : orliczes) {
            OrliczFunction n = parse_orlicz(ns);
            for (double a : as) {
                DualSandwich s = dual_norm_sandwich(m, a, n);
                double lower_gap = (s.formula - s.lower) / s.formula;
                double upper_gap = (s.upper - s.formula) / s.formula;
                bool ok = s.lower <= s.formula * (1.0 + 1e-12) && s.upper >= s.formula * (1.0 - 1e-12) &&
                          lower_gap <= 1e-4 && upper_gap <= 1e-4;
                worst = std::max({worst, std::fabs(lower_gap), std::fabs(upper_gap)});
                ++count;
                check(r, ms + " " + ns + " a=" + fmt(a), ok,
                      "lower " + fmt(s.lower) + " formula " + fmt(s.formula) + " upper " + fmt(s.upper));
            }
        }
    }
    r.values["worst_rel_gap"] = worst;
    r.values["instances"] = count;
    return r;
}

SuiteResult suite_brackets(const SuiteOptions& opts) {
    SuiteResult r{"brackets", {}, {}, {}};
    std::mt19937 rng(opts.seed);

    // Round trip through Prop Capq-Lq on 12 instances, then test functions against D2/4.
    struct Inst {
        std::string measure, n;
        double q;
    };
    std::vector<Inst> insts;
    for (const char* ms : {"exponential", "gaussian", "exp_alpha:1.5"})
        for (auto [ns, q] : {std::pair<const char*, double>{"power:1", 1.0}, {"power:1.5", 1.5}, {"power:2", 2.0},
                             {"power:3", 3.0}})
            insts.push_back({ms, ns, q});
    double worst_contraction = 0.0, min_slack = kInf;
    for (const auto& in : insts) {
        Measure1D m = build(in.measure);
        OrliczFunction n = parse_orlicz(in.n);
        CapacityBound cap;
        cap.q = in.q;
        cap.bound = [&m, q = in.q, cfg = opts.cfg](double t) { return capq(m, q, t, cfg); };
        cap.kind = CapacityKind::exact_config;
        CapToOs c2o = cap_to_os(cap, n, false);
        CapacityBound back = os_to_cap(n, in.q, c2o.ledger.lo, false);
        // Constant-level contraction D2 / D2(back), and no pointwise overshoot of the capacity.
        double d2_back = inf_scan([&](double t) { return back(t) / n.wedge(t); }, 1e-8, 0.5, 64).min;
        double contraction = c2o.d2 / d2_back;
        double overshoot = 0.0;
        for (double t : log_grid(1e-6, 0.5, 32)) overshoot = std::max(overshoot, back(t) / cap(t));
        worst_contraction = std::max(worst_contraction, contraction);
        // D1 >= D2/4: every test function obeys (D2/4) ||f - Mf||_N <= ||f'||_q.
        double slack = kInf;
        for (int k = 0; k < 20; ++k) {
            GridFunction f = random_function(m, rng);
            double lhs = c2o.ledger.lo * orlicz_norm(centered(f, median_of(f, m)), m, n);
            double rhs = gradient_lq(f, m, in.q);
            if (lhs > 0.0) slack = std::min(slack, rhs / lhs);
        }
        min_slack = std::min(min_slack, slack);
        bool ok = contraction <= 4.0 * (1.0 + 1e-6) && overshoot <= 1.0 + 1e-9 && slack >= 1.0 && ledger_audit(c2o.ledger);
        check(r, "Capq-Lq round trip " + in.measure + " " + in.n + " q=" + fmt(in.q), ok,
              "D2 " + fmt(c2o.d2) + " contraction " + fmt(contraction) + " test-function slack " + fmt(slack));
    }
    r.values["round_trip_instances"] = static_cast<double>(insts.size());
    r.values["worst_contraction"] = worst_contraction;
    r.values["min_test_function_slack"] = min_slack;

    // Lemma E-M and the weak-norm comparison on random triples.
    const std::vector<std::string> measures{"gaussian", "exponential", "exp_alpha:1.5", "cusp:0.5", "uniform:-1,1"};
    const std::vector<std::string> youngs{"power:1.5", "power:2", "power:3", "phi:1", "phi:2"};
    std::vector<Measure1D> built;
    for (const auto& s : measures) built.push_back(build(s));
    std::vector<OrliczFunction> ns;
    for (const auto& s : youngs) ns.push_back(parse_orlicz(s));
    std::uniform_int_distribution<std::size_t> pick_m(0, built.size() - 1), pick_n(0, ns.size() - 1);
    int em_fail = 0, weak_fail = 0;
    double em_lo = kInf, em_hi = 0.0, weak_max = 0.0;
    const int triples = 200;
    for (int k = 0; k < triples; ++k) {
        const Measure1D& m = built[pick_m(rng)];
        const OrliczFunction& n = ns[pick_n(rng)];
        GridFunction f = random_function(m, rng);
        double ne = orlicz_norm(centered(f, expectation(f, m)), m, n);
        double nm = orlicz_norm(centered(f, median_of(f, m)), m, n);
        double ratio = nm / ne;
        em_lo = std::min(em_lo, ratio);
        em_hi = std::max(em_hi, ratio);
        if (!(ratio >= 0.5 * (1.0 - 1e-9) && ratio <= 3.0 * (1.0 + 1e-9))) ++em_fail;
        GridFunction g = centered(f, median_of(f, m));
        double weak = weak_orlicz_norm(g, m, n);
        double strong = orlicz_norm(g, m, n);
        weak_max = std::max(weak_max, weak / strong);
        if (weak > strong * (1.0 + 1e-9)) ++weak_fail;
    }
    r.values["em_triples"] = triples;
    r.values["em_failures"] = em_fail;
    r.values["em_ratio_lo"] = em_lo;
    r.values["em_ratio_hi"] = em_hi;
    r.values["weak_failures"] = weak_fail;
    r.values["weak_ratio_max"] = weak_max;
    check(r, "Lemma E-M on 200 random triples", em_fail == 0,
          "||f-M||/||f-E|| in [" + fmt(em_lo) + ", " + fmt(em_hi) + "]");
    check(r, "weak norm <= Orlicz norm", weak_fail == 0, "max ratio " + fmt(weak_max));
    return r;
}

SuiteResult suite_counterexample(const SuiteOptions& opts) {
    SuiteResult r{"counterexample", {}, {}, {}};
    Measure1D m = build(opts.measure.value_or("cusp:0.5"));
    Profile p = profile_of(m);
    double che = cheeger_constant(p).min;
    double gau = gaussian_constant(p).value;
    PoincareBracket pb = poincare_bracket(m);
    r.values["cheeger"] = che;
    r.values["gaussian_constant"] = gau;
    r.values["poincare_lo"] = pb.ledger.lo;
    r.values["poincare_hi"] = pb.ledger.hi;
    check(r, "D_Che <= 1e-6", che <= 1e-6, fmt(che));
    check(r, "D_Gau <= 1e-6", gau <= 1e-6, fmt(gau));
    check(r, "Poincare lower bracket > 0", pb.ledger.lo > 0.0,
          "[" + fmt(pb.ledger.lo) + ", " + fmt(pb.ledger.hi) + "]");
    return r;
}

SuiteResult suite_consistency_loop(const SuiteOptions& opts) {
    SuiteResult r{"consistency-loop", {}, {}, {}};
    auto measures = pick(opts.measure, {"exponential", "gaussian", "exp_alpha:1.5"});
    std::vector<double> qs = opts.q ? std::vector<double>{*opts.q} : std::vector<double>{1.0, 1.5, 2.0, 3.0};
    std::vector<double> grid = log_grid(1e-4, 0.5, 128);
    double min_loss = kInf;
    int total_overshoots = 0;
    for (const auto& ms : measures) {
        Measure1D m = build(ms);
        Profile truth = profile_of(m);
        for (double q : qs) {
            OrliczFunction n = power_function(q);
            IsoToOs forward = iso_to_os(truth, n, q, opts.cfg);
            TransferResult back = os_to_iso(n, q, forward.ledger.lo, opts.cfg);
            double loss = kInf;
            int overshoots = 0;
            for (double t : grid) {
                double b = back.profile->tilde(t), tv = truth.tilde(t);
                if (b > tv) ++overshoots;
                if (b > 0.0) loss = std::min(loss, tv / b);
            }
            min_loss = std::min(min_loss, loss);
            total_overshoots += overshoots;
            std::string key = ms + " q=" + fmt(q);
            r.values["loss " + key] = loss;
            r.log.push_back(key + ": OS constant " + fmt(forward.ledger.lo) + ", loop loss factor " + fmt(loss));
            check(r, "no overshoot " + key, overshoots == 0 && ledger_audit(back.ledger),
                  "min truth/bound " + fmt(loss));
        }
    }
    r.values["min_loss"] = min_loss;
    r.values["overshoots"] = total_overshoots;
    return r;
}

SuiteResult suite_big_lemma(const SuiteOptions& opts) {
    SuiteResult r{"big-lemma", {}, {}, {}};
    struct Combo {
        std::string label;
        OrliczFunction n;
        double p1, p2, p3;
    };
    std::vector<Combo> combos{
        {"power:2 (2,2,2)", power_function(2.0), 2.0, 2.0, 2.0},
        {"power:3 (3,3,3)", power_function(3.0), 3.0, 3.0, 3.0},
        {"power:1.5 (3,2,2)", power_function(1.5), 3.0, 2.0, 2.0},
        {"power:2.5 (5,2,2)", power_function(2.5), 5.0, 2.0, 2.0},
        {"phi:2 (2,2,2)", phi_function(2.0), 2.0, 2.0, 2.0},
        {"phi:1.5 (3,2,2)", phi_function(1.5), 3.0, 2.0, 2.0},
        {"truncated phi:1.25 (5,2,2)", truncate_at_zero(phi_function(1.25), 1.25), 5.0, 2.0, 2.0},
        {"power:1 (inf,2,2)", power_function(1.0), kInf, 2.0, 2.0},
    };
    std::size_t total = 0;
    for (const auto& c : combos) {
        Transformed t = transform_N2(c.n, c.p1, c.p2, c.p3, opts.cfg);
        total += t.young_violations + t.ratio_violations;
        check(r, c.label, t.young_violations == 0 && t.ratio_violations == 0 && t.nodes >= 100,
              "convexity violations " + std::to_string(t.young_violations) + ", ratio violations " +
                  std::to_string(t.ratio_violations) + " on " + std::to_string(t.nodes) + " nodes");
    }
    r.values["combos"] = static_cast<double>(combos.size());
    r.values["violations"] = static_cast<double>(total);
    return r;
}

SuiteResult suite_log_sobolev(const SuiteOptions&) {
    SuiteResult r{"log-sobolev", {}, {}, {}};
    Measure1D m = build("gaussian");
    GaussianConstant dg = gaussian_constant(profile_of(m));
    LogSobolevSweep s = log_sobolev_sweep(m);
    double floor = dg.value / std::sqrt(2.0) * (1.0 - 0.02);
    r.values["gaussian_constant"] = dg.value;
    r.values["ls_upper"] = s.upper;
    r.values["tested"] = s.tested;
    check(r, "D_Gau(gaussian) = 1", std::fabs(dg.value - 1.0) <= 1e-6, fmt(dg.value));
    check(r, "sweep >= D_Gau/sqrt(2) - 2%", s.upper >= floor, fmt(s.upper) + " from " + s.best);
    return r;
}

SuiteResult suite_tensorization(const SuiteOptions& opts) {
    SuiteResult r{"tensorization", {}, {}, {}};
    struct Case {
        std::string label;
        Profile j;
        Measure1D m;
    };
    Measure1D ga = build("gaussian"), ex = build("exponential");
    std::vector<Case> cases{{"I_gamma", gaussian_profile(), ga}, {"exponential", profile_of(ex), ex}};
    std::mt19937 rng(opts.seed);
    for (const auto& c : cases) {
        TensorMachinery mach = build_machinery(c.j);
        r.values[c.label + " control_rate"] = mach.control;
        check(r, c.label + ": control rate finite", std::isfinite(mach.control), fmt(mach.control));

        std::size_t env = 0;
        for (std::size_t i = 0; i < mach.t.size(); ++i) {
            double j0 = mach.j0[i], j1 = mach.j1[i];
            if (j0 > j1 * (1.0 + 1e-12) || j1 > mach.control * j0 * (1.0 + 1e-12)) ++env;
        }
        r.values[c.label + " envelope_violations"] = static_cast<double>(env);
        check(r, c.label + ": J0 <= J1 <= D J0", env == 0,
              std::to_string(env) + " violations on " + std::to_string(mach.t.size()) + " nodes");

        LastThing lt = last_thing_check(mach);
        r.values[c.label + " last_thing_lower"] = lt.lower;
        r.values[c.label + " last_thing_upper"] = lt.upper;
        check(r, c.label + ": last-thing bounds", lt.lower >= 1.0 - 1e-6 && std::isfinite(lt.upper),
              "[" + fmt(lt.lower) + ", " + fmt(lt.upper) + "], upper/D " + fmt(lt.upper_over_d));

        bool facts_ok = true;
        std::string failed;
        for (const auto& f : mach.facts) {
            if (!f.holds) {
                facts_ok = false;
                failed += f.name + "; ";
            }
        }
        r.values[c.label + " t2x_essential"] = mach.t2x_essential;
        r.values[c.label + " facts_failed"] = facts_ok ? 0.0 : 1.0;
        check(r, c.label + ": facts and T certificates", facts_ok && std::isfinite(mach.t2x_essential),
              facts_ok ? "T^2/x essential constant " + fmt(mach.t2x_essential) : failed);

        // Bobkov round trip: J -> measure -> half-line profile.
        Measure1D rt = measure_from_profile(c.j);
        Profile back = profile_of(rt);
        double sup_err = 0.0;
        for (double t : log_grid(1e-4, 0.5, 128)) {
            sup_err = std::max(sup_err, std::fabs(back(t) - c.j(t)));
            sup_err = std::max(sup_err, std::fabs(back(1.0 - t) - c.j(1.0 - t)));
        }
        r.values[c.label + " bobkov_sup_error"] = sup_err;
        check(r, c.label + ": Bobkov round trip sup-error <= 1e-4", sup_err <= 1e-4, fmt(sup_err));

        // The reconstructed measure against the source density, centered at the median.
        double dens_err = 0.0;
        for (double u : {1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-4}) {
            double x_src = c.m.quantile(u) - c.m.quantile(0.5);
            double x_rt = rt.quantile(u) - rt.quantile(0.5);
            dens_err = std::max({dens_err, std::fabs(x_rt - x_src) / std::max(1.0, std::fabs(x_src)),
                                 rel_err(rt.density(rt.quantile(u)), c.m.density(c.m.quantile(u)))});
        }
        r.values[c.label + " bobkov_measure_error"] = dens_err;
        check(r, c.label + ": reconstructed measure matches the source", dens_err <= 1e-6, fmt(dens_err));

        TensorMachinery mach_rt = build_machinery(back);
        double wedge_err = 0.0;
        for (double t : log_grid(1e-4, 0.5, 64)) wedge_err = std::max(wedge_err, rel_err(mach_rt.wedge_at(t), mach.wedge_at(t)));
        r.values[c.label + " wedge_round_trip"] = wedge_err;
        check(r, c.label + ": N^ after round trip within 1e-3", wedge_err <= 1e-3, fmt(wedge_err));

        // One-sided Beckner bracket: D2 <= sqrt(20) D1, with D1 bounded above by test functions.
        double d2 = inf_scan([&](double t) { return capq(c.m, 2.0, t, opts.cfg) / mach.wedge_at(t); }, 1e-6, 0.5, 16).min;
        double d1_upper = kInf;
        auto tfn = [&mach](double y) { return mach.t_at(y); };
        for (double a : {0.01, 0.1, 0.5}) {
            for (double width : {0.25, 1.0}) {
                double xa = c.m.quantile(a);
                GridFunction f({xa, xa + width}, {1.0, 0.0});
                double b = beckner_functional(f, c.m, tfn);
                if (b > 0.0) d1_upper = std::min(d1_upper, gradient_l2(f, c.m) / b);
            }
        }
        for (int k = 0; k < 6; ++k) {
            GridFunction f = random_function(c.m, rng);
            double b = beckner_functional(f, c.m, tfn);
            if (b > 0.0) d1_upper = std::min(d1_upper, gradient_l2(f, c.m) / b);
        }
        r.values[c.label + " beckner_d2"] = d2;
        r.values[c.label + " beckner_d1_upper"] = d1_upper;
        check(r, c.label + ": D2 <= sqrt(20) D1 (one-sided)", d2 <= std::sqrt(20.0) * d1_upper,
              "D2 " + fmt(d2) + ", D1 <= " + fmt(d1_upper));

        double ceiling = coordinate_halfspace_upper(c.m, 5, 0.5);
        check(r, c.label + ": coordinate half-space ceiling", std::fabs(ceiling - profile_of(c.m)(0.5)) <= 1e-12,
              "I(1/2) = " + fmt(ceiling));
    }
    return r;
}

SuiteResult suite_qls_uniformity(const SuiteOptions& opts) {
    SuiteResult r{"qls-uniformity", {}, {}, {}};
    std::vector<double> qs = opts.q ? std::vector<double>{*opts.q} : std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0};
    double cnq_min = kInf, w_lo = kInf, w_hi = 0.0;
    for (double q : qs) {
        QlsResult res = qls_bridge(q, 1.0, QlsDirection::to_iso, opts.cfg);
        cnq_min = std::min(cnq_min, res.cnq_inf);
        w_lo = std::min(w_lo, res.wedge_ratio_lo);
        w_hi = std::max(w_hi, res.wedge_ratio_hi);
        r.values["cnq q=" + fmt(q)] = res.cnq_inf;
        r.values["shape q=" + fmt(q)] = res.shape_constant;
        r.log.push_back("q=" + fmt(q) + ": C_{N,q} inf " + fmt(res.cnq_inf) + ", shape constant " +
                        fmt(res.shape_constant) + ", wedge ratio [" + fmt(res.wedge_ratio_lo) + ", " +
                        fmt(res.wedge_ratio_hi) + "]");
        check(r, "to_iso runs at q=" + fmt(q),
              std::isfinite(res.cnq_inf) && res.shape_constant > 0.0 && ledger_audit(res.transfer.ledger),
              "shape constant " + fmt(res.shape_constant));
    }
    r.values["cnq_min"] = cnq_min;
    r.values["wedge_lo"] = w_lo;
    r.values["wedge_hi"] = w_hi;
    check(r, "C_{N,q} inf uniformly >= 0.5", cnq_min >= 0.5, fmt(cnq_min));
    check(r, "wedge comparability window inside [0.5, 1.5]", w_lo >= 0.5 && w_hi <= 1.5,
          "[" + fmt(w_lo) + ", " + fmt(w_hi) + "]");
    return r;
}

SuiteResult suite_hierarchy_properties(const SuiteOptions& opts) {
    SuiteResult r{"hierarchy-properties", {}, {}, {}};
    double buser = kInf;
    for (const char* ms : {"gaussian", "exponential", "exp_alpha:1.5", "exp_alpha:3", "uniform:-1,1"}) {
        Measure1D m = build(ms);
        double che = cheeger_constant(profile_of(m)).min;
        PoincareBracket pb = poincare_bracket(m, opts.cfg);
        buser = std::min(buser, che / pb.ledger.hi);
        check(r, std::string("Cheeger direction D_Poin >= D_Che/2 ") + ms, pb.ledger.hi >= che / 2.0,
              "D_Che " + fmt(che) + ", bracket [" + fmt(pb.ledger.lo) + ", " + fmt(pb.ledger.hi) + "]");
        check(r, std::string("Poincare ledger audit ") + ms, ledger_audit(pb.ledger), "");
    }
    r.values["buser_floor"] = buser;
    check(r, "D_Che / bracket hi >= 0.25 on log-concave built-ins", buser >= 0.25, fmt(buser));

    PoincareBracket ex = poincare_bracket(build("exponential"), opts.cfg);
    check(r, "exponential bracket contains 1/2", ex.ledger.lo <= 0.5 * (1.0 + 1e-9) && ex.ledger.hi >= 0.5,
          "[" + fmt(ex.ledger.lo) + ", " + fmt(ex.ledger.hi) + "]");
    PoincareBracket ga = poincare_bracket(build("gaussian"), opts.cfg);
    check(r, "gaussian bracket contains 1", ga.ledger.lo <= 1.0 && ga.ledger.hi >= 1.0,
          "[" + fmt(ga.ledger.lo) + ", " + fmt(ga.ledger.hi) + "]");

    // Young q >= 2 chain arithmetic for N = t^2, D = 1 at t = 1/2.
    TransferResult tr = os_to_iso(power_function(2.0), 2.0, 1.0, opts.cfg);
    double at_half = tr.profile->tilde(0.5);
    double expect = (1.0 / 8.0) * 0.5 * std::sqrt(0.5);
    r.values["young_chain_at_half"] = at_half;
    check(r, "N=t^2, q=2, D=1 bound at 1/2", std::fabs(at_half - expect) <= 1e-12, fmt(at_half));
    return r;
}

}  // namespace isx
