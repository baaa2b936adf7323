#include "isoperimetrix/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "isoperimetrix/kernels.hpp"

namespace isx {

void ConstantLedger::apply(const Factor& f, bool both) {
    factors.push_back(f);
    lo *= f.value;
    if (both) hi *= f.value;
}

double ConstantLedger::product() const {
    double p = 1.0;
    for (const auto& f : factors) p *= f.value;
    return p;
}

bool ledger_audit(const ConstantLedger& l) {
    if (!(l.lo >= 0.0) || !(l.lo <= l.hi)) return false;
    double expect = l.seed * l.product();
    return std::fabs(l.lo - expect) <= 1e-12 * std::max(std::fabs(expect), 1e-300);
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string exponent_text(double p) { return std::isinf(p) ? "inf" : fmt(p); }

ConstantLedger seeded(const std::string& instance, double seed) {
    ConstantLedger l;
    l.instance = instance;
    l.seed = seed;
    l.lo = seed;
    l.hi = seed;
    return l;
}

// N^wedge(s)^{-p2} s^{-p2/p1} tabulated on a log grid and integrated from the top,
// with a power-law tail beyond the last node.
struct WedgeTable {
    std::vector<double> s;
    std::vector<double> w;           // (integral over [s, inf))^{-1/p2}
    std::vector<double> tail_share;  // fraction of that integral supplied by the tail estimate
    double tail_error;               // relative error estimate of the tail term
    double head_exponent;
    double tail_exponent;
};

WedgeTable wedge_table(const OrliczFunction& n, double p1, double p2, const QuadratureConfig& cfg) {
    if (!(p2 > 0.0) || std::isinf(p2)) throw Error(ErrorKind::UsageError, "p2 must be finite and positive");
    if (!(p1 > 0.0)) throw Error(ErrorKind::UsageError, "p1 must be positive");
    const double ratio = std::isinf(p1) ? 0.0 : p2 / p1;
    auto log_f = [&](double s) { return -ratio * std::log(s) - p2 * std::log(n.wedge(s)); };

    WedgeTable t;
    t.s = log_grid(1e-20, 1e20, 32);
    const std::size_t k = t.s.size();

    const double s0 = t.s.front(), s1 = s0 * 10.0;
    t.head_exponent = -(log_f(s1) - log_f(s0)) / std::log(10.0);
    if (!(t.head_exponent >= 1.0 - 1e-6))
        throw Error(ErrorKind::IntegrabilityFails,
                    "head integral converges (local decay exponent " + fmt(t.head_exponent) + " < 1)");
    const double big = t.s.back();
    t.tail_exponent = -(log_f(big) - log_f(big / 10.0)) / std::log(10.0);
    if (!(t.tail_exponent > 1.0 + 1e-6))
        throw Error(ErrorKind::IntegrabilityFails,
                    "tail integral diverges (local decay exponent " + fmt(t.tail_exponent) + " <= 1)");

    const double tail = std::exp(log_f(big)) * big / (t.tail_exponent - 1.0);
    // Drift of the local exponent one decade further in bounds the power-law tail error.
    const double k_prev = -(log_f(big / 10.0) - log_f(big / 100.0)) / std::log(10.0);
    t.tail_error = std::max(std::fabs(t.tail_exponent - k_prev) / (t.tail_exponent - 1.0), 1e-14);
    std::vector<double> cum(k);
    cum[k - 1] = tail;
    // Integrate in v = log s so each segment is smooth and of unit-ish length.
    auto g = [&](double v) { return std::exp(log_f(std::exp(v)) + v); };
    for (std::size_t i = k - 1; i-- > 0;) {
        cum[i] = cum[i + 1] + integrate(g, std::log(t.s[i]), std::log(t.s[i + 1]), cfg);
    }
    t.w.resize(k);
    t.tail_share.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(cum[i] > 0.0) || !std::isfinite(cum[i]))
            throw Error(ErrorKind::NotFinite, "wedge integral not finite at s=" + fmt(t.s[i]));
        t.w[i] = std::pow(cum[i], -1.0 / p2);
        t.tail_share[i] = tail / cum[i];
    }
    return t;
}

// Nodes where the tail estimate's error is negligible against the predicate slack.
constexpr double kTailShare = 1e-11;

Profile wedge_profile(double c, double exponent, const OrliczFunction& n, const std::string& name) {
    auto lower = [c, exponent, wedge_fn = n](double t) {
        if (!(t > 0.0)) return 0.0;
        return c * std::pow(t * (1.0 - t), exponent) * wedge_fn.wedge(t);
    };
    return Profile::symmetric(lower, Provenance::analytic, ProfileKind::lower_bound, name);
}

std::string instance_text(const OrliczFunction& n, double q, double d) {
    return "N=" + n.tag() + ", q=" + fmt(q) + ", D=" + fmt(d);
}

// The Young q >= 2 chain: median to expectation, time optimization, min step.
void young_chain(ConstantLedger& l, double q) {
    l.apply({"median to expectation", 0.5, "Lemma E-M"});
    l.apply({"optimization in time", 0.25, "Thm Orlicz-12, \"It remains to optimize on\""});
    l.apply({"min step 2^{-(1-1/q)}", std::pow(2.0, -(1.0 - 1.0 / q)), "Thm Orlicz-12"});
}

}  // namespace

ScanResult cnq_infimum(const OrliczFunction& n, double q, const QuadratureConfig& cfg) {
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    double r = q < 2.0 ? 2.0 : q;
    double p = q < 2.0 ? conjugate(q) : q;
    WedgeTable tab = wedge_table(n, p, r, cfg);
    double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    ScanResult best{0.0, kInf};
    for (std::size_t i = 0; i < tab.s.size(); ++i) {
        double t = tab.s[i];
        if (t < 1e-8 || t > 0.5) continue;
        double v = std::pow(t, 1.0 / r - inv_p) * tab.w[i] / n.wedge(t);
        if (v < best.min) best = {t, v};
    }
    return best;
}

Transformed transform_N2(const OrliczFunction& n1, double p1, double p2, double p3, const QuadratureConfig& cfg) {
    if (std::isinf(p2)) throw Error(ErrorKind::UsageError, "p2 = inf is not supported");
    if (!(p3 > 0.0)) throw Error(ErrorKind::UsageError, "p3 must be positive");
    double inv_p1 = std::isinf(p1) ? 0.0 : 1.0 / p1;
    double inv_p3 = std::isinf(p3) ? 0.0 : 1.0 / p3;
    TriState pre = check_ratio_nondecreasing(n1, inv_p3 + 1.0 / p2 - inv_p1, predicate_grid());
    if (!pre.holds())
        throw Error(ErrorKind::PredicateFails, "N1(t)^{1/p3+1/p2-1/p1}/t is not non-decreasing (witness t=" +
                                                   fmt(pre.witness) + ")");
    WedgeTable tab = wedge_table(n1, p1, p2, cfg);

    std::string tag = "transformed(" + n1.tag() + "," + exponent_text(p1) + "," + exponent_text(p2) + "," +
                      exponent_text(p3) + ")";
    OrliczFunction wedge_fn = log_log_table(tab.s, tab.w, tag + "^");
    OrliczFunction dual = adjoint(wedge_fn);
    OrliczFunction n2 = functional([dual](double t) { return dual(t); },
                                   [dual](double y) { return dual.inverse(y); }, tag);

    // Exact nodes: u = 1/W(s), N2(u) = 1/s, ordered by increasing u.
    std::vector<double> u, nv;
    for (std::size_t i = tab.s.size(); i-- > 0;) {
        if (tab.tail_share[i] * tab.tail_error > kTailShare) continue;
        u.push_back(1.0 / tab.w[i]);
        nv.push_back(1.0 / tab.s[i]);
    }
    Transformed out{n2, {}, {}, 0, 0, u.size(), tab.head_exponent, tab.tail_exponent};
    if (u.size() < 3) throw Error(ErrorKind::BadGrid, "too few reliable nodes in transform table");

    std::vector<double> slope_log(u.size() - 1);
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        slope_log[i] = std::log((nv[i + 1] - nv[i]) / (u[i + 1] - u[i]));
    std::vector<double> ratio_log(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) ratio_log[i] = inv_p3 * std::log(nv[i]) - std::log(u[i]);

    out.young_violations = kernels::count_descents(slope_log.data(), slope_log.size(), 1e-9);
    out.ratio_violations = kernels::count_descents(ratio_log.data(), ratio_log.size(), 1e-9);
    auto verdict = [&](std::size_t violations, const std::vector<double>& v) {
        TriState s;
        s.state = violations == 0 ? Tri::holds : Tri::fails;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (v[i + 1] < v[i] - 1e-9 * std::max(1.0, std::fabs(v[i]))) {
                s.witness = u[i];
                break;
            }
        }
        return s;
    };
    out.is_young = verdict(out.young_violations, slope_log);
    out.ratio_nondecreasing = verdict(out.ratio_violations, ratio_log);
    return out;
}

TransferResult os_to_iso(const OrliczFunction& n, double q, double d, const QuadratureConfig& cfg) {
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    if (!(d >= 0.0)) throw Error(ErrorKind::UsageError, "D must be non-negative");
    TransferResult r;
    r.ledger = seeded("os_to_iso: " + instance_text(n, q, d), d);
    const auto grid = predicate_grid();

    if (q >= 2.0) {
        TriState young = check_young(n, grid);
        if (young.holds()) {
            young_chain(r.ledger, q);
            r.diagnostics.push_back("predicates used: is_young");
            double c = d / 8.0;
            r.profile = wedge_profile(c, 1.0 - 1.0 / q, n, "os_to_iso(" + n.tag() + ")");
            return r;
        }
        TriState ratio = check_ratio_nondecreasing(n, 1.0 / q, grid);
        if (!ratio.holds())
            throw Error(ErrorKind::PredicateFails, "N is neither Young nor has N(t)^{1/q}/t non-decreasing (witness t=" +
                                                       fmt(ratio.witness) + ")");
        Transformed nq = transform_N2(n, q, q, q, cfg);
        if (!nq.is_young.holds())
            throw Error(ErrorKind::PredicateFails, "transformed N_q failed the convexity check");
        r.diagnostics.push_back("predicates used: ratio_nondecreasing(q); N not Young");
        r.ledger.apply({"Cap_q >= D N_q^ (alpha = 1/q)", 1.0, "Thm Orlicz-12-strong"});
        r.ledger.apply({"capacity to Orlicz norm", 0.25, "Prop Capq-Lq"});
        young_chain(r.ledger, q);
        r.profile = wedge_profile(d / 32.0, 1.0 - 1.0 / q, nq.n2, "os_to_iso(" + nq.n2.tag() + ")");
    } else {
        TriState ratio = check_ratio_nondecreasing(n, 1.0 / q, grid);
        if (!ratio.holds())
            throw Error(ErrorKind::PredicateFails,
                        "N(t)^{1/q}/t is not non-decreasing (witness t=" + fmt(ratio.witness) + ")");
        double p0 = conjugate(q);
        double gamma = gamma_factor(2.0, p0);
        double delta = smoothing_delta(2.0, p0, q);
        Transformed n2 = transform_N2(n, p0, 2.0, 2.0, cfg);
        if (!n2.is_young.holds())
            throw Error(ErrorKind::PredicateFails, "transformed N_2 failed the convexity check");
        r.diagnostics.push_back("predicates used: ratio_nondecreasing(q)");
        r.ledger.apply({"lift q -> 2 (1/gamma)", 1.0 / gamma, "Prop increase-Orlicz-q", true});
        r.ledger.apply({"singularity smoothing (1/delta)", 1.0 / delta, "Thm Orlicz-12-strong", true});
        r.ledger.apply({"capacity to Orlicz norm", 0.25, "Prop Capq-Lq"});
        young_chain(r.ledger, 2.0);
        r.profile = wedge_profile(d / (32.0 * gamma * delta), 0.5, n2.n2, "os_to_iso(" + n2.n2.tag() + ")");
    }
    ScanResult cnq = cnq_infimum(n, q, cfg);
    r.ledger.apply({"C_{N,q} infimum", cnq.min, "Thm Orlicz-12-strong Eq. (CNq)", true});
    r.diagnostics.push_back("C_{N,q} attained near t=" + fmt(cnq.argmin));
    return r;
}

IsoToOs iso_to_os(const Profile& p, const OrliczFunction& n, double q, const QuadratureConfig& cfg) {
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    TriState ratio = check_ratio_nondecreasing(n, 1.0 / q, predicate_grid());
    if (!ratio.holds())
        throw Error(ErrorKind::PredicateFails,
                    "N(t)^{1/q}/t is not non-decreasing (witness t=" + fmt(ratio.witness) + ")");
    double pc = conjugate(q);
    double inv_p = std::isinf(pc) ? 0.0 : 1.0 / pc;
    ScanResult dscan = inf_scan([&](double t) { return p.tilde(t) / (std::pow(t, inv_p) * n.wedge(t)); }, 1e-8,
                                0.5, 64);
    double d = std::max(dscan.min, 0.0);

    double b = 1.0;
    if (!std::isinf(pc)) {
        auto grid = log_grid(1e-8, 0.5, 32);
        auto cum = cumulative_from_right([&](double s) { return 1.0 / (s * std::pow(n.wedge(s), pc)); }, grid, cfg);
        b = kInf;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            b = std::min(b, 1.0 / (n.wedge(grid[i]) * std::pow(cum[i], 1.0 / pc)));
    }

    IsoToOs out{seeded("iso_to_os: " + p.name() + ", N=" + n.tag() + ", q=" + fmt(q), d), d, b};
    out.ledger.apply({"lift Cap_1 -> Cap_q (gamma = 1)", 1.0, "Prop increase-Orlicz-q"});
    out.ledger.apply({"B-estimate infimum", b, "Thm Orlicz-21-strong Eq. (B-estimate)", true});
    out.ledger.apply({"capacity to Orlicz norm", 0.25, "Prop Capq-Lq"});
    out.ledger.notes.push_back("profile constant attained near t=" + fmt(dscan.argmin));
    return out;
}

CapToOs cap_to_os(const CapacityBound& bound, const OrliczFunction& n, bool weak) {
    if (!weak) {
        TriState ratio = check_ratio_nondecreasing(n, 1.0 / bound.q, predicate_grid());
        if (!ratio.holds())
            throw Error(ErrorKind::PredicateFails,
                        "N(t)^{1/q}/t is not non-decreasing (witness t=" + fmt(ratio.witness) + ")");
    }
    ScanResult s = inf_scan([&](double t) { return bound(t) / n.wedge(t); }, 1e-8, 0.5, 64);
    double d2 = std::max(s.min, 0.0);
    CapToOs out{seeded("cap_to_os: N=" + n.tag() + ", q=" + fmt(bound.q) + (weak ? ", weak" : ""), d2), d2};
    out.ledger.apply({"capacity to Orlicz norm", 0.25, weak ? "Prop Capq-Lq-weak" : "Prop Capq-Lq"}, false);
    return out;
}

CapacityBound os_to_cap(const OrliczFunction& n, double q, double d, bool weak) {
    CapacityBound b;
    b.q = q;
    b.bound = [n, d](double t) { return d * n.wedge(t); };
    b.kind = CapacityKind::lower_bound;
    b.note = std::string("Lemma Lq-implies-capq, D N^(t)") + (weak ? " (weak norm)" : "");
    return b;
}

QlsResult qls_bridge(double q, double d, QlsDirection dir, const QuadratureConfig& cfg) {
    if (!(q >= 1.0 && q <= 2.0)) throw Error(ErrorKind::QOutOfRange, "q must lie in [1,2]");
    OrliczFunction phi = phi_function(q);
    QlsResult out;

    auto grid = log_grid(1e-8, 0.5, 64);
    out.wedge_ratio_lo = kInf;
    out.wedge_ratio_hi = 0.0;
    for (double t : grid) {
        double v = phi.wedge(t) / std::pow(t * std::log1p(1.0 / t), 1.0 / q);
        out.wedge_ratio_lo = std::min(out.wedge_ratio_lo, v);
        out.wedge_ratio_hi = std::max(out.wedge_ratio_hi, v);
    }
    const std::string unresolved =
        "unresolved: entropic <-> Orlicz equivalence factor (D_1 ~ D_2 uniformly) is not applied";

    if (dir == QlsDirection::to_iso) {
        OrliczFunction n0 = truncate_at_zero(phi, q);
        auto& l = out.transfer.ledger;
        l = seeded("qls_bridge to_iso: q=" + fmt(q) + ", D=" + fmt(d), d);
        l.apply({"expectation to median", 1.0 / 3.0, "Lemma E-M"});
        l.apply({"truncation at zero", 0.25, "Cor N-at-0"});
        TransferResult inner = os_to_iso(n0, q, d / 12.0, cfg);
        for (const auto& f : inner.ledger.factors) l.apply(f);
        out.cnq_inf = inner.ledger.factors.back().value;
        Profile bound = *inner.profile;
        auto shape = [&](double t) { return bound.tilde(t) / (t * std::pow(std::log(1.0 / t), 1.0 / q)); };
        ScanResult sc = inf_scan(shape, 1e-8, 0.5, 32);
        out.shape_constant = std::max(sc.min, 0.0);
        if (l.lo > 0.0) {
            l.apply({"conversion to t log^{1/q}(1/t)", out.shape_constant / l.lo, "Cor q-log-Sob-implies-isop", true});
        }
        out.transfer.profile = bound;
        out.transfer.diagnostics = inner.diagnostics;
        l.notes.push_back(unresolved);
    } else {
        auto lower = [d, q](double t) {
            if (!(t > 0.0)) return 0.0;
            return d * t * std::pow(std::log(1.0 / t), 1.0 / q);
        };
        Profile j = Profile::symmetric(lower, Provenance::user_supplied, ProfileKind::lower_bound,
                                       "c t log^{1/q}(1/t)");
        IsoToOs inner = iso_to_os(j, phi, q, cfg);
        auto& l = out.transfer.ledger;
        l = seeded("qls_bridge from_iso: q=" + fmt(q) + ", c=" + fmt(d), d);
        l.apply({"profile constant against t^{1/p} phi_q^", d > 0.0 ? inner.profile_constant / d : 0.0,
                 "Cor Orlicz-21-strong-easy", true});
        for (const auto& f : inner.ledger.factors) l.apply(f);
        l.apply({"median to expectation", 0.5, "Lemma E-M"});
        double alpha = 1.0 / (2.0 * q);
        double pc = conjugate(q);
        double shape = std::isinf(pc) ? 1.0 : std::pow(alpha, 1.0 / pc);
        l.notes.push_back("alpha = 1/(2q) = " + fmt(alpha) + ", alpha^{1/p} = " + fmt(shape));
        l.notes.push_back(unresolved);
        out.shape_constant = shape;
        try {
            out.cnq_inf = cnq_infimum(truncate_at_zero(phi, q), q, cfg).min;
        } catch (const Error& e) {
            out.transfer.diagnostics.push_back(std::string("C_{N,q} not evaluated: ") + e.what());
        }
    }
    return out;
}

ClosedForm closed_form_constants(double alpha, double q) {
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    double floor = std::max(1.0 / q - 0.5, 0.0);
    if (!(alpha > floor))
        throw Error(ErrorKind::AlphaTooSmall, "alpha must exceed max(1/q - 1/2, 0) = " + fmt(floor));
    double c = q < 2.0 ? std::sqrt(alpha + 0.5 - 1.0 / q) : std::pow(alpha, 1.0 / q);
    return {c, std::pow(alpha, 1.0 / q - 1.0)};
}

namespace {

// sup over the tail of mass tau beyond x of tau * integral from the median to x of 1/rho.
double muckenhoupt_side(const Measure1D& m, double med, bool upper, const QuadratureConfig& cfg) {
    auto taus = log_grid(1e-14, 0.5, 64);
    std::reverse(taus.begin(), taus.end());  // from the median outward
    auto inv_rho = [&](double x) {
        double r = m.density(x);
        if (!(r > 0.0)) throw Error(ErrorKind::DivergentIntegral, "density vanishes at x=" + fmt(x));
        return 1.0 / r;
    };
    double best = 0.0, acc = 0.0, prev = med;
    for (double tau : taus) {
        double x = upper ? m.quantile_upper(tau) : m.quantile(tau);
        if (!std::isfinite(x) || x == prev) continue;
        double a = std::min(prev, x), b = std::max(prev, x);
        try {
            acc += integrate(inv_rho, a, b, cfg);
        } catch (const Error& e) {
            throw Error(ErrorKind::DivergentIntegral,
                        "integral of 1/rho from the median diverges before x=" + fmt(x) + " (D_Poin = 0)");
        }
        prev = x;
        double tail = upper ? m.sf(x) : m.cdf(x);
        best = std::max(best, tail * acc);
    }
    return best;
}

}  // namespace

PoincareBracket poincare_bracket(const Measure1D& m, const QuadratureConfig& cfg) {
    double med = median(m);
    double bp = muckenhoupt_side(m, med, true, cfg);
    double bm = muckenhoupt_side(m, med, false, cfg);
    double b = std::max(bp, bm);
    if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorKind::NotFinite, "Muckenhoupt constant not finite");
    PoincareBracket out{seeded("poincare_bracket: " + m.name(), 1.0 / std::sqrt(b)), bp, bm};
    out.ledger.apply({"Muckenhoupt lower side (4B)^{-1/2}", 0.5, "Kac-Krein criterion (Muckenhoupt form)"}, false);
    out.ledger.notes.push_back("B+ = " + fmt(bp) + ", B- = " + fmt(bm));
    return out;
}

LogSobolevSweep log_sobolev_sweep(const Measure1D& m) {
    LogSobolevSweep out{kInf, "", 0};
    auto consider = [&](double grad2, double ent, const std::string& label) {
        ++out.tested;
        if (!(ent > 0.0) || !std::isfinite(ent) || !std::isfinite(grad2)) return;
        double v = std::sqrt(grad2 / ent);
        if (v < out.upper) {
            out.upper = v;
            out.best = label;
        }
    };

    QuantileRule rule(m, {});
    for (double lambda : {-2.0, -1.0, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 1.0, 2.0}) {
        double z, ez;
        try {
            z = rule.integrate([&](double x) { return std::exp(lambda * x); });
            ez = rule.integrate([&](double x) { return std::exp(lambda * x) * lambda * x; });
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(z) || !std::isfinite(ez)) continue;
        // f = e^{lambda x / 2}: |f'|^2 = lambda^2 f^2 / 4.
        consider(0.25 * lambda * lambda * z, ez - z * std::log(z), "tilt lambda=" + fmt(lambda));
    }

    const double floor_value = 0.1;
    for (double a : {0.05, 0.25, 0.5}) {
        double xa = m.quantile(a);
        for (double width : {0.5, 1.0, 2.0}) {
            double xb = xa + width;
            QuantileRule r2(m, {xa, xb});
            auto f = [&](double x) {
                double s = std::clamp((xb - x) / width, 0.0, 1.0);
                return floor_value + (1.0 - floor_value) * s;
            };
            double z = r2.integrate([&](double x) { return f(x) * f(x); });
            double e = r2.integrate([&](double x) {
                double v = f(x) * f(x);
                return v * std::log(v);
            });
            double slope = (1.0 - floor_value) / width;
            double grad2 = slope * slope * mass(m, xa, xb);
            consider(grad2, e - z * std::log(z), "ramp a=" + fmt(a) + " width=" + fmt(width));
        }
    }
    return out;
}

std::string ledger_json(const ConstantLedger& l) {
    nlohmann::ordered_json j;
    j["instance"] = l.instance;
    j["seed"] = l.seed;
    j["lo"] = l.lo;
    j["hi"] = l.hi;
    j["factors"] = nlohmann::ordered_json::array();
    for (const auto& f : l.factors)
        j["factors"].push_back({{"label", f.label}, {"value", f.value}, {"citation", f.citation}, {"empirical", f.empirical}});
    j["notes"] = l.notes;
    return j.dump(2);
}

}  // namespace isx
