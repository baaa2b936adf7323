#include "isoperimetrix/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace isx {

const char* capacity_kind_name(CapacityKind k) {
    switch (k) {
        case CapacityKind::exact_config: return "exact-config";
        case CapacityKind::lower_bound: return "lower-bound";
        case CapacityKind::oracle: return "oracle";
    }
    return "lower-bound";
}

double conjugate(double q) {
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "exponent must be >= 1");
    if (q == 1.0) return kInf;
    if (std::isinf(q)) return 1.0;
    return q / (q - 1.0);
}

IntervalCapacity interval_capacity(const Measure1D& m, double a, double b, double q,
                                   const QuadratureConfig& cfg) {
    if (!(a < b)) throw Error(ErrorKind::EmptyInterval, "interval capacity needs a < b");
    if (!(q > 1.0)) throw Error(ErrorKind::QOutOfRange, "interval capacity needs q > 1");
    const double r = 1.0 / (q - 1.0);
    try {
        double w = integrate([&](double x) { return std::exp(r * m.psi(x)); }, a, b, cfg);
        return {std::pow(w, -(q - 1.0) / q), false};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivergentIntegral) return {0.0, true};
        throw;
    }
}

namespace {

// Integral of j(u)^{-p} over [lo, 1/2] in the variable w = log u, where j is
// the density at the lower (or upper) quantile of mass u.
double chain_weight(const RealFn& j, double lo, double p, const QuadratureConfig& cfg) {
    if (lo >= 0.5) return 0.0;
    return integrate(
        [&](double w) {
            double u = std::exp(w);
            return u * std::pow(j(u), -p);
        },
        std::log(lo), std::log(0.5), cfg);
}

double chain_weight_between(const RealFn& j, double lo, double hi, double p,
                            const QuadratureConfig& cfg) {
    return integrate(
        [&](double w) {
            double u = std::exp(w);
            return u * std::pow(j(u), -p);
        },
        std::log(lo), std::log(hi), cfg);
}

}  // namespace

CapqDetail capq_detail(const Measure1D& m, double q, double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0 && t <= 0.5)) throw Error(ErrorKind::UsageError, "t must lie in (0, 1/2]");
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    RealFn jlo = [&m](double u) { return m.density(m.quantile(u)); };
    RealFn jup = [&m](double u) { return m.density(m.quantile_upper(u)); };
    CapqDetail d{};
    if (q == 1.0) {
        Profile prof = profile_of(m);
        double v = t >= 0.5 ? prof.tilde(0.5)
                            : inf_scan([&](double s) { return prof.tilde(s); }, t, 0.5, 128).min;
        d.value = d.left = d.right = d.two_tail = v;
        return d;
    }
    const double p = conjugate(q);
    // A divergent weight integral means a zero-capacity chain.
    auto cap_of = [&](const std::function<double()>& weight) {
        try {
            double w = weight();
            return w > 0.0 ? std::pow(w, -1.0 / p) : kInf;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DivergentIntegral || e.kind() == ErrorKind::NotFinite) return 0.0;
            throw;
        }
    };
    d.left = cap_of([&] { return chain_weight(jlo, t, p, cfg); });
    d.right = cap_of([&] { return chain_weight(jup, t, p, cfg); });
    d.two_tail = kInf;
    if (m.is_even()) {
        // Energies of the two chains add before the 1/q power.
        double one = cap_of([&] { return chain_weight_between(jlo, 0.5 * t, 0.25, p, cfg); });
        d.two_tail = std::pow(2.0 * std::pow(one, q), 1.0 / q);
    }
    d.value = std::min({d.left, d.right, d.two_tail});
    return d;
}

double capq(const Measure1D& m, double q, double t, const QuadratureConfig& cfg) {
    return capq_detail(m, q, t, cfg).value;
}

CapacityBound cap1_profile_bridge(const Profile& j) {
    std::vector<double> g = log_grid(1e-8, 0.5, 64);
    double prev = -kInf;
    for (double t : g) {
        double v = j.lower(t);
        if (v < prev - 1e-9 * std::max(1.0, std::fabs(prev))) {
            throw Error(ErrorKind::NotMonotone,
                        "J is not non-decreasing on [0,1/2] (t=" + std::to_string(t) + ")");
        }
        prev = std::max(prev, v);
    }
    CapacityBound b;
    b.q = 1.0;
    b.bound = [j](double t) { return j.lower(t); };
    b.kind = CapacityKind::lower_bound;
    b.note = "Cap_1(t,1/2) >= J(t) from " + j.name();
    return b;
}

Profile profile_bound_from_cap1(const CapacityBound& bound) {
    if (bound.q != 1.0) throw Error(ErrorKind::QOutOfRange, "needs a q = 1 capacity bound");
    RealFn f = bound.bound;
    return Profile::symmetric(f, Provenance::analytic, ProfileKind::lower_bound, "cap1-bound");
}

double gamma_factor(double p, double p0) {
    if (std::isinf(p0)) return 1.0;
    if (!(p < p0)) throw Error(ErrorKind::UsageError, "gamma needs p < p0");
    return std::pow(p0 / p - 1.0, 1.0 / p0) / std::pow(1.0 - p / p0, 1.0 / p);
}

CapacityBound lift(const CapacityBound& bound, double q, const QuadratureConfig& cfg) {
    const double q0 = bound.q;
    if (q == q0) return bound;
    if (!(q > q0)) throw Error(ErrorKind::QOutOfRange, "lift needs q >= q0");
    const double p = conjugate(q), p0 = conjugate(q0);
    const double beta = std::isinf(p0) ? 0.0 : p / p0;
    const double gamma = gamma_factor(p, p0);
    RealFn inner = bound.bound;
    CapacityBound out;
    out.q = q;
    out.kind = CapacityKind::lower_bound;
    out.note = "lift " + std::to_string(q0) + " -> " + std::to_string(q) + " of [" + bound.note + "]";
    out.bound = [inner, p, beta, gamma, cfg](double a) {
        if (a >= 0.5) return kInf;
        try {
            double w = integrate_algebraic([&](double s) { return std::pow(inner(s), -p); }, a, 0.5,
                                           beta, cfg);
            return std::pow(w, -1.0 / p) / gamma;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::DivergentIntegral) return 0.0;
            throw;
        }
    };
    return out;
}

double smoothing_delta(double p, double p0, double alpha) {
    const double b = std::isinf(p0) ? 0.0 : p / p0;
    if (b == 0.0) return 1.0;
    if (!(b < 1.0)) throw Error(ErrorKind::UsageError, "smoothing needs p < p0");
    double near = std::pow(2.0, p / alpha) / (std::pow(2.0, 1.0 - b) - 1.0);
    return std::pow(std::max(std::pow(2.0, b), near), 1.0 / p);
}

namespace {

// Decay exponent k of f(s) ~ s^{-k} far out; the tail integral converges iff k > 1.
double tail_exponent(const RealFn& f) {
    double s1 = 1e12, s2 = 1e14;
    return -std::log(f(s2) / f(s1)) / std::log(s2 / s1);
}

}  // namespace

SmoothingCheck singularity_smooth(const OrliczFunction& n, double q, double q0, double alpha, double t,
                                  const QuadratureConfig& cfg) {
    if (!(q0 >= 1.0 && q >= q0)) throw Error(ErrorKind::QOutOfRange, "needs 1 <= q0 <= q");
    const double p = conjugate(q), p0 = conjugate(q0);
    if (!(p < p0)) throw Error(ErrorKind::UsageError, "p = p0 boundary: (1 - p/p0)^{-1/p} diverges");
    if (!(alpha > 0.0)) throw Error(ErrorKind::UsageError, "alpha must be positive");
    TriState pred = check_ratio_nondecreasing(n, 1.0 / alpha, predicate_grid());
    if (!pred.holds()) {
        throw Error(ErrorKind::PredicateFails,
                    "N(t)^{1/alpha}/t is not non-decreasing (witness t=" + std::to_string(pred.witness) + ")");
    }
    const double beta = std::isinf(p0) ? 0.0 : p / p0;
    SmoothingCheck out{};
    out.delta = smoothing_delta(p, p0, alpha);
    RealFn weight = [&](double s) { return std::pow(n.wedge(s), -p); };
    RealFn rhs_integrand = [&](double s) { return std::pow(s, -beta) * weight(s); };
    if (tail_exponent(rhs_integrand) <= 1.0 + 1e-6) {
        out.divergent = true;
        out.lhs = out.rhs = kInf;
        out.holds = true;
        return out;
    }
    double lhs = integrate_algebraic(weight, t, kInf, beta, cfg);
    double rhs = integrate(rhs_integrand, t, kInf, cfg);
    out.lhs = std::pow(lhs, 1.0 / p);
    out.rhs = std::pow(rhs, 1.0 / p);
    out.holds = out.lhs <= out.delta * out.rhs * (1.0 + 1e-9);
    return out;
}

// ---------------------------------------------------------------------------

OracleResult cap_oracle(const Measure1D& m, double q, double t, int grid_size) {
    if (grid_size < 64) throw Error(ErrorKind::UsageError, "cap_oracle needs grid_size >= 64");
    if (!(t > 0.0 && t <= 0.5)) throw Error(ErrorKind::UsageError, "t must lie in (0, 1/2]");
    if (!(q >= 1.0)) throw Error(ErrorKind::QOutOfRange, "q must be >= 1");
    const int G = grid_size;
    // Nodes at u_i = i/G; cell k = [x_k, x_{k+1}] for 1 <= k <= G-2 carries mass 1/G.
    std::vector<double> x(G + 1);
    for (int i = 1; i < G; ++i) {
        double u = static_cast<double>(i) / G;
        x[i] = u <= 0.5 ? m.quantile(u) : m.quantile_upper(1.0 - u);
    }
    // log of the cell conductance m_k / h_k^q.
    std::vector<double> logc(G, kInf);
    for (int k = 1; k + 1 < G; ++k) {
        double h = x[k + 1] - x[k];
        logc[k] = h > 0.0 ? std::log(1.0 / G) - q * std::log(h) : kInf;
    }
    // chain[i][j]: minimal energy of a 1 -> 0 transition across cells i..j-1.
    std::vector<double> chain(static_cast<std::size_t>(G + 1) * (G + 1), kInf);
    auto at = [&](int i, int j) -> double& { return chain[static_cast<std::size_t>(i) * (G + 1) + j]; };
    for (int i = 1; i < G; ++i) {
        if (q == 1.0) {
            double lo = kInf;
            for (int j = i + 1; j < G; ++j) {
                lo = std::min(lo, logc[j - 1]);
                at(i, j) = std::exp(lo);
            }
        } else {
            // log of the sum of c_k^{-1/(q-1)}, accumulated stably.
            double acc = -kInf;
            for (int j = i + 1; j < G; ++j) {
                double a = -logc[j - 1] / (q - 1.0);
                if (acc == -kInf) acc = a;
                else acc = std::max(acc, a) + std::log1p(std::exp(-std::fabs(acc - a)));
                at(i, j) = std::exp(-(q - 1.0) * acc);
            }
        }
    }
    const int needA = static_cast<int>(std::ceil(t * G - 1e-9));
    const int halfG = G / 2;
    const int needB = (G + 1) / 2;
    OracleResult r{kInf, kInf, kInf, false, ""};
    // A on the left, B on the right, and the mirror image.
    double left = needA < halfG ? at(needA, halfG) : kInf;
    double right = G - needA > needB ? at(needB, G - needA) : kInf;
    r.monotone_value = std::min(left, right);
    r.layout = left <= right ? "A-left" : "A-right";
    // A split into two tails around a middle B.
    std::string split_layout;
    for (int i = 1; i < needA; ++i) {
        int k = G - (needA - i);
        for (int j1 = i + 1; j1 + needB < k; ++j1) {
            int j2 = j1 + needB;
            double e = at(i, j1) + at(j2, k);
            if (e < r.best_split) {
                r.best_split = e;
                split_layout = "A-split";
            }
        }
    }
    // B split into two tails around a middle A.
    for (int j1 = 1; j1 < needB; ++j1) {
        int j2 = G - (needB - j1);
        for (int a1 = j1 + 1; a1 + needA < j2; ++a1) {
            int a2 = a1 + needA;
            double e = at(j1, a1) + at(a2, j2);
            if (e < r.best_split) {
                r.best_split = e;
                split_layout = "B-split";
            }
        }
    }
    double best = std::min(r.monotone_value, r.best_split);
    if (r.best_split < r.monotone_value) r.layout = split_layout;
    auto to_cap = [q](double e) { return std::isinf(e) ? kInf : std::pow(e, 1.0 / q); };
    r.value = to_cap(best);
    r.nonmonotone_wins = to_cap(r.best_split) < 0.98 * to_cap(r.monotone_value);
    r.monotone_value = to_cap(r.monotone_value);
    r.best_split = to_cap(r.best_split);
    return r;
}

std::string capacity_csv(const CapacityBound& b, int points) {
    std::ostringstream os;
    os << "t,L(t)\n";
    char buf[96];
    for (int i = 0; i < points; ++i) {
        double t = std::exp(std::log(1e-6) + (std::log(0.5) - std::log(1e-6)) * i / (points - 1));
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, b(t));
        os << buf;
    }
    return os.str();
}

}  // namespace isx
