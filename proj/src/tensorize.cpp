#include "isoperimetrix/tensorize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/kernels.hpp"

namespace isx {

namespace {

std::vector<double> profile_nodes() { return log_grid(1e-15, 0.5, 70); }

std::vector<double> ratio_to_I0(const Profile& j, const std::vector<double>& t) {
    std::vector<double> r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = j.lower(t[i]) / comparator_I0_value(t[i]);
    return r;
}

std::vector<double> suffix_min(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    double m = kInf;
    for (std::size_t i = v.size(); i-- > 0;) {
        m = std::min(m, v[i]);
        out[i] = m;
    }
    return out;
}

Certificate monotone_certificate(const std::string& name, std::vector<double> v, bool nondecreasing) {
    Certificate c{name, false, 0, 1.0, false};
    c.constant = nondecreasing ? essential_nondecreasing(v) : essential_nonincreasing(v);
    std::vector<double> logs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) logs[i] = (nondecreasing ? 1.0 : -1.0) * std::log(v[i]);
    c.violations = kernels::count_descents(logs.data(), logs.size(), 1e-9);
    c.holds = c.violations == 0;
    return c;
}

Certificate essential_certificate(const std::string& name, const std::vector<double>& v, bool nondecreasing) {
    Certificate c{name, true, 0, 1.0, false};
    c.constant = nondecreasing ? essential_nondecreasing(v) : essential_nonincreasing(v);
    c.holds = std::isfinite(c.constant);
    return c;
}

}  // namespace

double essential_nondecreasing(const std::vector<double>& v) {
    double c = 1.0, m = kInf;
    for (std::size_t i = v.size(); i-- > 0;) {
        m = std::min(m, v[i]);
        c = std::max(c, v[i] / m);
    }
    return c;
}

double essential_nonincreasing(const std::vector<double>& v) {
    double c = 1.0, m = kInf;
    for (double x : v) {
        m = std::min(m, x);
        c = std::max(c, x / m);
    }
    return c;
}

double control_rate(const Profile& j) {
    auto t = profile_nodes();
    auto r = ratio_to_I0(j, t);
    for (double v : r)
        if (!(v > 0.0) || !std::isfinite(v)) return kInf;
    double d = essential_nondecreasing(r);
    return d > kControlRateCap ? kInf : d;
}

double TensorMachinery::g_at(double s) const {
    if (s >= 0.5) return g.back();
    auto it = std::upper_bound(t.begin(), t.end(), s);
    if (it != t.begin() && *(it - 1) == s) return g[static_cast<std::size_t>(it - t.begin()) - 1];
    std::size_t above = static_cast<std::size_t>(it - t.begin());
    return std::min(j.lower(s) / comparator_I0_value(s), g[above]);
}

double TensorMachinery::j0_at(double s) const {
    if (!(s > 0.0)) return 0.0;
    if (s >= 0.5) return 2.0 * half_value * s;
    return g_at(s) * comparator_I0_value(s);
}

double TensorMachinery::j1_at(double s) const {
    if (!(s > 0.0)) return 0.0;
    if (s >= 0.5) return 2.0 * half_value * s;
    return j.lower(s);
}

double TensorMachinery::wedge_at(double s) const {
    if (!(s > 0.0)) return 0.0;
    if (s >= 0.5) return 2.0 * half_value * std::sqrt(s);
    const double beyond = 1.0 / (2.0 * half_value * half_value);
    auto it = std::lower_bound(t.begin(), t.end(), s);
    std::size_t i = static_cast<std::size_t>(it - t.begin());
    double integral;
    if (it != t.end() && *it == s) {
        integral = cumulative[i];
    } else {
        double upper = it == t.end() ? 0.5 : *it;
        double rest = it == t.end() ? 0.0 : cumulative[i];
        auto f = [this](double v) {
            double u = std::exp(v);
            double jv = j.lower(u);
            return u / (jv * jv);
        };
        integral = rest + integrate(f, std::log(s), std::log(upper));
    }
    return 1.0 / std::sqrt(integral + beyond);
}

double TensorMachinery::t_at(double xv) const {
    if (xv <= std::log(3.0)) return 2.0 * half_value;
    if (xv > x_max * (1.0 + 1e-12)) return std::nan("");
    double s = 1.0 / std::expm1(xv);
    return wedge_at(s) / std::sqrt(s);
}

OrliczFunction TensorMachinery::j1_function() const {
    Profile jp = j;
    double half = half_value;
    auto eval = [jp, half](double s) {
        if (!(s > 0.0)) return 0.0;
        return s >= 0.5 ? 2.0 * half * s : jp.lower(s);
    };
    auto inverse = [eval, half](double y) {
        if (!(y > 0.0)) return 0.0;
        if (y >= half) return y / (2.0 * half);
        return invert_increasing_positive(eval, y, 0.25);
    };
    return functional(eval, inverse, "J1(" + j.name() + ")");
}

TensorMachinery build_machinery(const Profile& jp) {
    require_bobkov_shape(jp);
    double d = control_rate(jp);
    if (!std::isfinite(d))
        throw Error(ErrorKind::InfiniteControlRate, "J/I0 grows beyond " + std::to_string(kControlRateCap));

    TensorMachinery m;
    m.j = jp;
    m.control = d;
    m.half_value = jp.lower(0.5);
    m.t = profile_nodes();
    const std::size_t n = m.t.size();

    auto r = ratio_to_I0(jp, m.t);
    m.g = suffix_min(r);
    m.j0.resize(n);
    m.j1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double i0 = comparator_I0_value(m.t[i]);
        m.j0[i] = m.g[i] * i0;
        m.j1[i] = jp.lower(m.t[i]);
    }

    m.limsup_ratio = 0.0;
    for (std::size_t i = 0; i < n && m.t[i] <= 1e-12; ++i)
        m.limsup_ratio = std::max(m.limsup_ratio, m.j1[i] / gaussian_isoperimetric(m.t[i]));

    // Segment integrals of J^{-2} in log t, accumulated from 1/2 downward.
    auto f = [&](double v) {
        double u = std::exp(v);
        double jv = jp.lower(u);
        return u / (jv * jv);
    };
    m.cumulative.assign(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;)
        m.cumulative[i] = m.cumulative[i + 1] + integrate(f, std::log(m.t[i]), std::log(m.t[i + 1]));
    m.wedge.resize(n);
    const double beyond = 1.0 / (2.0 * m.half_value * m.half_value);
    for (std::size_t i = 0; i < n; ++i) m.wedge[i] = 1.0 / std::sqrt(m.cumulative[i] + beyond);

    m.x_max = std::log1p(1e12);
    const std::size_t xs = 1024;
    const double x0 = std::log(3.0);
    m.x.resize(xs);
    m.tx.resize(xs);
    for (std::size_t k = 0; k < xs; ++k) {
        m.x[k] = x0 + (m.x_max - x0) * static_cast<double>(k) / static_cast<double>(xs - 1);
        m.tx[k] = m.t_at(m.x[k]);
    }

    // Facts on (0, 1/2] nodes followed by the linear continuation up to 1e3.
    std::vector<double> ft = m.t, fj0 = m.j0, fj1 = m.j1;
    auto ext = log_grid(0.5, 1e3, 70);
    for (std::size_t k = 1; k < ext.size(); ++k) {
        ft.push_back(ext[k]);
        fj0.push_back(2.0 * m.half_value * ext[k]);
        fj1.push_back(2.0 * m.half_value * ext[k]);
    }
    auto over = [&](const std::vector<double>& v, auto den) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / den(ft[i]);
        return out;
    };
    auto sqrt_t = [](double s) { return std::sqrt(s); };
    auto ident = [](double s) { return s; };
    auto i0 = [](double s) { return comparator_I0_value(s); };

    m.facts.push_back(monotone_certificate("g non-decreasing", m.g, true));
    m.facts.push_back(monotone_certificate("Fact 1: J0/sqrt(t) increasing", over(fj0, sqrt_t), true));
    m.facts.push_back(essential_certificate("Fact 1: J1/sqrt(t) essentially non-decreasing", over(fj1, sqrt_t), true));
    m.facts.push_back(monotone_certificate("Fact 2: J1/t non-increasing", over(fj1, ident), false));
    m.facts.push_back(essential_certificate("Fact 2: J0/t essentially non-increasing", over(fj0, ident), false));
    m.facts.push_back(monotone_certificate("Fact 3: J0/I0 non-decreasing", over(fj0, i0), true));
    m.facts.push_back(essential_certificate("Fact 3: J1/I0 essentially non-decreasing", over(fj1, i0), true));
    m.facts.push_back(monotone_certificate("T non-decreasing", m.tx, true));
    std::vector<double> t2x(xs);
    for (std::size_t k = 0; k < xs; ++k) t2x[k] = m.tx[k] * m.tx[k] / m.x[k];
    Certificate ess = essential_certificate("T(x)^2/x essentially non-increasing", t2x, false);
    m.t2x_essential = ess.constant;
    m.facts.push_back(ess);

    // Lemma big-lemma with N1 = J1^, (p1, p2, p3) = (inf, 2, 2).
    try {
        Transformed tr = transform_N2(adjoint(m.j1_function()), kInf, 2.0, 2.0);
        m.facts.push_back({"N is a Young function", false, tr.young_violations, 1.0, tr.is_young.holds()});
        m.facts.push_back({"N(t)^{1/2}/t non-decreasing", false, tr.ratio_violations, 1.0,
                           tr.ratio_nondecreasing.holds()});
    } catch (const Error& e) {
        m.facts.push_back({std::string("N from J1 (") + e.what() + ")", false, 1, kInf, false});
    }
    return m;
}

LastThing last_thing_check(const TensorMachinery& m) {
    std::vector<double> ts = m.t;
    auto ext = log_grid(0.5, 1.0, 70);
    ts.insert(ts.end(), ext.begin() + 1, ext.end());
    LastThing out{kInf, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double s = ts[i];
        double w = i < m.t.size() ? m.wedge[i] : m.wedge_at(s);
        double v = m.j1_at(s) / (std::sqrt(s) * w);
        if (!std::isfinite(v)) throw Error(ErrorKind::DivergentIntegral, "last-thing ratio not finite");
        out.lower = std::min(out.lower, v);
        if (v > out.upper) {
            out.upper = v;
            out.argmax = s;
        }
    }
    out.upper_over_d = out.upper / m.control;
    return out;
}

double beckner_functional(const GridFunction& f, const Measure1D& m, const RealFn& t_fn) {
    QuantileRule rule(m, f.knots());
    double e2 = rule.integrate([&](double x) {
        double v = f(x);
        return v * v;
    });
    const int count = 64;
    const double a = std::log(1.0 + 1e-6), b = std::log(1e6);
    double best = 0.0;
    for (int k = 0; k < count; ++k) {
        double y = std::exp(a + (b - a) * k / (count - 1));
        double tv = t_fn(y);
        if (!std::isfinite(tv)) continue;
        double p = 2.0 - 1.0 / y;
        double ep = rule.integrate([&](double x) { return std::pow(std::fabs(f(x)), p); });
        double gap = std::max(0.0, e2 - std::pow(ep, 2.0 / p));
        best = std::max(best, std::sqrt(gap) * tv);
    }
    return best;
}

double gradient_l2(const GridFunction& f, const Measure1D& m) {
    const auto& x = f.knots();
    const auto& v = f.values();
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double slope = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
        sum += slope * slope * mass(m, x[i], x[i + 1]);
    }
    if (f.extrapolation() == Extrapolation::linear_tail) {
        double s0 = (v[1] - v[0]) / (x[1] - x[0]);
        std::size_t k = x.size() - 1;
        double s1 = (v[k] - v[k - 1]) / (x[k] - x[k - 1]);
        sum += s0 * s0 * mass(m, -kInf, x[0]) + s1 * s1 * mass(m, x[k], kInf);
    }
    return std::sqrt(sum);
}

double coordinate_halfspace_upper(const Measure1D& m, int k, double t) {
    if (k < 1) throw Error(ErrorKind::UsageError, "k must be >= 1");
    return profile_of(m)(t);
}

std::string machinery_json(const TensorMachinery& m, int samples) {
    nlohmann::ordered_json j;
    j["profile"] = m.j.name();
    j["control_rate"] = m.control;
    j["limsup_ratio_to_gaussian"] = m.limsup_ratio;
    j["half_value"] = m.half_value;
    j["x_max"] = m.x_max;
    j["t2x_essential_constant"] = m.t2x_essential;

    auto pick = [samples](std::size_t size) {
        std::vector<std::size_t> idx;
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(samples, 2)), size);
        for (std::size_t i = 0; i < k; ++i) idx.push_back(i * (size - 1) / (k - 1));
        return idx;
    };
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (std::size_t i : pick(m.t.size()))
        grid.push_back({{"t", m.t[i]}, {"g", m.g[i]}, {"J0", m.j0[i]}, {"J1", m.j1[i]}, {"N_wedge", m.wedge[i]}});
    j["grid"] = grid;
    nlohmann::ordered_json tgrid = nlohmann::ordered_json::array();
    for (std::size_t i : pick(m.x.size())) tgrid.push_back({{"x", m.x[i]}, {"T", m.tx[i]}});
    j["T"] = tgrid;
    nlohmann::ordered_json facts = nlohmann::ordered_json::array();
    for (const auto& c : m.facts)
        facts.push_back({{"name", c.name},
                         {"essential", c.essential},
                         {"violations", c.violations},
                         {"constant", c.constant},
                         {"holds", c.holds}});
    j["certificates"] = facts;
    LastThing lt = last_thing_check(m);
    j["last_thing"] = {{"lower", lt.lower}, {"upper", lt.upper}, {"upper_over_D", lt.upper_over_d}};
    return j.dump(2);
}

}  // namespace isx
