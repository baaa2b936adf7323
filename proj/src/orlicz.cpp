#include "isoperimetrix/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "isoperimetrix/kernels.hpp"

namespace isx {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

class PowerModel final : public OrliczModel {
public:
    explicit PowerModel(double p) : p_(p) {}
    double eval(double t) const override { return std::pow(t, p_); }
    double inverse(double y) const override { return std::pow(y, 1.0 / p_); }
    std::string tag() const override { return "power:" + fmt(p_); }

private:
    double p_;
};

class PhiModel final : public OrliczModel {
public:
    explicit PhiModel(double q) : q_(q) {}
    double eval(double t) const override {
        double u = std::pow(t, q_);
        return u * std::log1p(u);
    }
    double inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (std::isinf(y)) return kInf;
        // Solve u log(1+u) = y for u = t^q; start from the dominant balance.
        RealFn g = [](double u) { return u * std::log1p(u); };
        double start = y < 1.0 ? std::sqrt(y) : y / std::log1p(y);
        double u = invert_increasing_positive(g, y, start);
        return std::pow(u, 1.0 / q_);
    }
    std::string tag() const override { return "phi:" + fmt(q_); }

private:
    double q_;
};

class PiecewiseLinearModel final : public OrliczModel {
public:
    PiecewiseLinearModel(std::vector<double> t, std::vector<double> n, std::string tag)
        : t_(std::move(t)), n_(std::move(n)), tag_(std::move(tag)) {}
    double eval(double t) const override { return interp(t_, n_, t); }
    double inverse(double y) const override { return interp(n_, t_, y); }
    std::string tag() const override { return tag_; }

private:
    static double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
        if (x <= 0.0) return 0.0;
        const std::size_t k = xs.size();
        if (x >= xs.back()) {
            double slope = (ys[k - 1] - ys[k - 2]) / (xs[k - 1] - xs[k - 2]);
            return ys.back() + slope * (x - xs.back());
        }
        std::size_t j = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
        double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
        return ys[j - 1] + w * (ys[j] - ys[j - 1]);
    }
    std::vector<double> t_, n_;
    std::string tag_;
};

class LogLogModel final : public OrliczModel {
public:
    LogLogModel(const std::vector<double>& t, const std::vector<double>& n, std::string tag)
        : tag_(std::move(tag)) {
        lt_.resize(t.size());
        ln_.resize(n.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            lt_[i] = std::log(t[i]);
            ln_[i] = std::log(n[i]);
        }
    }
    double eval(double t) const override {
        if (t <= 0.0) return 0.0;
        if (std::isinf(t)) return kInf;
        return std::exp(interp(lt_, ln_, std::log(t)));
    }
    double inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (std::isinf(y)) return kInf;
        return std::exp(interp(ln_, lt_, std::log(y)));
    }
    std::string tag() const override { return tag_; }

private:
    static double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
        const std::size_t k = xs.size();
        std::size_t j;
        if (x <= xs.front()) {
            j = 1;
        } else if (x >= xs.back()) {
            j = k - 1;
        } else {
            j = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
        }
        double slope = (ys[j] - ys[j - 1]) / (xs[j] - xs[j - 1]);
        return ys[j - 1] + slope * (x - xs[j - 1]);
    }
    std::vector<double> lt_, ln_;
    std::string tag_;
};

class FunctionalModel final : public OrliczModel {
public:
    FunctionalModel(RealFn e, RealFn i, std::string tag)
        : eval_(std::move(e)), inverse_(std::move(i)), tag_(std::move(tag)) {}
    double eval(double t) const override { return t <= 0.0 ? 0.0 : eval_(t); }
    double inverse(double y) const override { return y <= 0.0 ? 0.0 : inverse_(y); }
    std::string tag() const override { return tag_; }

private:
    RealFn eval_, inverse_;
    std::string tag_;
};

class AdjointModel final : public OrliczModel {
public:
    explicit AdjointModel(OrliczFunction inner) : inner_(std::move(inner)) {}
    double eval(double t) const override {
        if (t <= 0.0) return 0.0;
        if (std::isinf(t)) return kInf;
        return 1.0 / inner_.inverse(1.0 / t);
    }
    double inverse(double y) const override {
        if (y <= 0.0) return 0.0;
        if (std::isinf(y)) return kInf;
        return 1.0 / inner_(1.0 / y);
    }
    std::string tag() const override { return "adjoint(" + inner_.tag() + ")"; }

private:
    OrliczFunction inner_;
};

class ComposePowerModel final : public OrliczModel {
public:
    ComposePowerModel(OrliczFunction inner, double alpha) : inner_(std::move(inner)), alpha_(alpha) {}
    double eval(double t) const override { return inner_(std::pow(t, alpha_)); }
    double inverse(double y) const override { return std::pow(inner_.inverse(y), 1.0 / alpha_); }
    std::string tag() const override { return inner_.tag() + "^(" + fmt(alpha_) + ")"; }

private:
    OrliczFunction inner_;
    double alpha_;
};

class TruncatedModel final : public OrliczModel {
public:
    TruncatedModel(OrliczFunction inner, double q)
        : inner_(std::move(inner)), q_(q), splice_(inner_.inverse(2.0)) {}
    double eval(double t) const override {
        return t <= splice_ ? 2.0 * std::pow(t / splice_, q_) : inner_(t);
    }
    double inverse(double y) const override {
        return y <= 2.0 ? splice_ * std::pow(y / 2.0, 1.0 / q_) : inner_.inverse(y);
    }
    std::string tag() const override { return "truncated(" + inner_.tag() + "," + fmt(q_) + ")"; }

private:
    OrliczFunction inner_;
    double q_;
    double splice_;
};

}  // namespace

// ---------------------------------------------------------------------------

double OrliczFunction::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    return model_->eval(t);
}

double OrliczFunction::inverse(double y) const {
    if (y <= 0.0) return 0.0;
    return model_->inverse(y);
}

double OrliczFunction::wedge(double t) const {
    if (t <= 0.0) return 0.0;
    if (std::isinf(t)) return kInf;
    return 1.0 / inverse(1.0 / t);
}

OrliczFunction power_function(double p) {
    if (!(p > 0.0)) throw Error(ErrorKind::UsageError, "power exponent must be positive");
    return OrliczFunction(std::make_shared<PowerModel>(p));
}

OrliczFunction phi_function(double q) {
    if (!(q > 0.0)) throw Error(ErrorKind::UsageError, "phi exponent must be positive");
    return OrliczFunction(std::make_shared<PhiModel>(q));
}

OrliczFunction grid_function(const std::vector<double>& t, const std::vector<double>& n,
                             const std::string& tag) {
    if (t.size() != n.size() || t.size() < 2) {
        throw Error(ErrorKind::BadGrid, "Orlicz grid needs >= 2 matching rows");
    }
    std::vector<double> tt, nn;
    if (t.front() > 0.0) {
        tt.push_back(0.0);
        nn.push_back(0.0);
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        tt.push_back(t[i]);
        nn.push_back(n[i]);
    }
    if (tt.front() != 0.0 || nn.front() != 0.0) {
        throw Error(ErrorKind::BadGrid, "Orlicz grid must start at N(0) = 0");
    }
    for (std::size_t i = 0; i + 1 < tt.size(); ++i) {
        if (!(tt[i] < tt[i + 1]) || !(nn[i] < nn[i + 1])) {
            throw Error(ErrorKind::BadGrid, "Orlicz grid must be strictly increasing in t and N");
        }
    }
    return OrliczFunction(std::make_shared<PiecewiseLinearModel>(tt, nn, tag));
}

OrliczFunction log_log_table(const std::vector<double>& t, const std::vector<double>& n,
                             const std::string& tag) {
    if (t.size() != n.size() || t.size() < 2) {
        throw Error(ErrorKind::BadGrid, "table needs >= 2 matching rows");
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(n[i] > 0.0) || !std::isfinite(n[i])) {
            throw Error(ErrorKind::BadGrid, "table entries must be positive and finite");
        }
        if (i + 1 < t.size() && (!(t[i] < t[i + 1]) || !(n[i] < n[i + 1]))) {
            throw Error(ErrorKind::BadGrid, "table must be strictly increasing");
        }
    }
    return OrliczFunction(std::make_shared<LogLogModel>(t, n, tag));
}

OrliczFunction functional(RealFn eval, RealFn inverse, const std::string& tag) {
    return OrliczFunction(std::make_shared<FunctionalModel>(std::move(eval), std::move(inverse), tag));
}

OrliczFunction adjoint(const OrliczFunction& n) {
    return OrliczFunction(std::make_shared<AdjointModel>(n));
}

OrliczFunction compose_power(const OrliczFunction& n, double alpha) {
    return OrliczFunction(std::make_shared<ComposePowerModel>(n, alpha));
}

OrliczFunction parse_orlicz(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::UsageError, "bad Orlicz spec '" + text + "'");
    std::string head = text.substr(0, colon), arg = text.substr(colon + 1);
    auto number = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::UsageError, "bad number in Orlicz spec '" + text + "'");
        }
    };
    if (head == "power") return power_function(number(arg));
    if (head == "phi") return phi_function(number(arg));
    if (head == "grid") {
        std::vector<double> t, n;
        read_xy_csv(arg, "t,N", t, n);
        return grid_function(t, n, text);
    }
    throw Error(ErrorKind::UsageError, "unknown Orlicz spec '" + text + "'");
}

// ---------------------------------------------------------------------------
// Predicates

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::holds: return "holds";
        case Tri::fails: return "fails_at";
        case Tri::unchecked: return "unchecked";
    }
    return "unchecked";
}

std::vector<double> predicate_grid() { return log_grid(1e-8, 1e8, 64); }

namespace {

constexpr double kPredicateSlack = 1e-9;

// Holds when v is non-decreasing on the grid up to the relative slack.
TriState nondecreasing_verdict(const std::vector<double>& v, const std::vector<double>& grid) {
    for (double x : v) {
        if (std::isnan(x)) return {Tri::unchecked, 0.0};
    }
    std::size_t bad = kernels::count_descents(v.data(), v.size(), kPredicateSlack);
    if (bad == 0) return {Tri::holds, 0.0};
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] < v[i] - kPredicateSlack * std::max(1.0, std::fabs(v[i]))) {
            return {Tri::fails, grid[i + 1]};
        }
    }
    return {Tri::holds, 0.0};
}

}  // namespace

TriState check_young(const OrliczFunction& n, const std::vector<double>& grid) {
    // Convexity as non-decreasing chord slopes, compared relative to their size.
    std::vector<double> slopes(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        slopes[i] = (n(grid[i + 1]) - n(grid[i])) / (grid[i + 1] - grid[i]);
    }
    std::vector<double> logs(slopes.size());
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        logs[i] = slopes[i] > 0.0 ? std::log(slopes[i]) : -kInf;
    }
    std::vector<double> mids(grid.begin() + 1, grid.end());
    return nondecreasing_verdict(logs, mids);
}

TriState check_ratio_nondecreasing(const OrliczFunction& n, double exponent,
                                   const std::vector<double>& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = exponent * std::log(n(grid[i])) - std::log(grid[i]);
    }
    return nondecreasing_verdict(v, grid);
}

TriState check_power_nonincreasing(const OrliczFunction& n, double alpha,
                                   const std::vector<double>& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = std::log(grid[i]) - std::log(n(std::pow(grid[i], alpha)));
    }
    return nondecreasing_verdict(v, grid);
}

PredicateReport check_predicates(const OrliczFunction& n, double q, double alpha) {
    PredicateReport r;
    r.q = q;
    r.alpha = alpha;
    r.checked_grid = predicate_grid();
    r.is_young = check_young(n, r.checked_grid);
    if (q > 0.0) r.ratio_nondecreasing = check_ratio_nondecreasing(n, 1.0 / q, r.checked_grid);
    if (alpha > 0.0) r.power_nonincreasing = check_power_nonincreasing(n, alpha, r.checked_grid);
    return r;
}

OrliczFunction truncate_at_zero(const OrliczFunction& n, double q) {
    if (!(q >= 1.0)) throw Error(ErrorKind::UsageError, "truncation exponent must be >= 1");
    TriState pred = check_ratio_nondecreasing(n, 1.0 / q, predicate_grid());
    if (!pred.holds()) {
        throw Error(ErrorKind::PredicateFails,
                    "N(t)^(1/q)/t is not non-decreasing (witness t=" + fmt(pred.witness) + ")");
    }
    return OrliczFunction(std::make_shared<TruncatedModel>(n, q));
}

// ---------------------------------------------------------------------------
// Legendre transform

double legendre(const OrliczFunction& n, double s) {
    if (s < 0.0) throw Error(ErrorKind::UsageError, "Legendre transform needs s >= 0");
    auto objective = [&](double lt) { return s * std::exp(lt) - n(std::exp(lt)); };
    double lo = std::log(1e-8), hi = std::log(1e8);
    for (int extension = 0; extension < 12; ++extension) {
        const int m = 1024;
        int best = 0;
        double bv = -kInf;
        std::vector<double> vals(m + 1);
        for (int i = 0; i <= m; ++i) {
            vals[i] = objective(lo + (hi - lo) * i / m);
            if (vals[i] > bv) {
                bv = vals[i];
                best = i;
            }
        }
        if (best == m && vals[m] > vals[m - 1]) {
            // Still climbing at the top edge: widen, and call it divergent past 1e300.
            if (hi > std::log(1e290)) return kInf;
            hi = std::min(hi + std::log(1e25), std::log(1e300));
            continue;
        }
        if (best == 0) return std::max(0.0, bv);
        double a = lo + (hi - lo) * (best - 1) / m, b = lo + (hi - lo) * (best + 1) / m;
        const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double fc = objective(c), fd = objective(d);
        for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc; c = b - invphi * (b - a); fc = objective(c);
            } else {
                a = c; c = d; fc = fd; d = a + invphi * (b - a); fd = objective(d);
            }
            bv = std::max({bv, fc, fd});
        }
        return std::max(0.0, bv);
    }
    return kInf;
}

// ---------------------------------------------------------------------------
// Quantile-space quadrature

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Appends the 15 Kronrod nodes of [a,b] in u (offsets given as distances from an
// anchor so tail nodes near 0 or 1 keep full relative precision).
void add_panel(const Measure1D& m, double a, double b, bool from_top, std::vector<double>& xs,
               std::vector<double>& ws) {
    // When from_top, a and b are distances t = 1 - u with a > b.
    double c = 0.5 * (a + b), h = 0.5 * std::fabs(b - a);
    for (int j = 0; j < 15; ++j) {
        double node = j < 8 ? c - h * kXgk[j] : c + h * kXgk[14 - j];
        double w = j < 8 ? kWgk[j] : kWgk[14 - j];
        double x = from_top ? m.quantile_upper(node)
                            : (node <= 0.5 ? m.quantile(node) : m.quantile_upper(1.0 - node));
        if (!std::isfinite(x)) continue;
        xs.push_back(x);
        ws.push_back(w * h);
    }
}

void add_segment(const Measure1D& m, double a, double b, int grading, std::vector<double>& xs,
                 std::vector<double>& ws) {
    // Geometric grading toward both ends of [a,b], uniform in the middle.
    double len = b - a;
    if (!(len > 0.0)) return;
    std::vector<double> cuts;
    for (int j = grading; j >= 1; --j) cuts.push_back(a + 0.25 * len * std::ldexp(1.0, -j + 1) * 0.5);
    for (int k = 1; k < 4; ++k) cuts.push_back(a + len * k / 4.0);
    for (int j = 1; j <= grading; ++j) cuts.push_back(b - 0.25 * len * std::ldexp(1.0, -j + 1) * 0.5);
    std::vector<double> pts{a};
    for (double c : cuts) {
        if (c > pts.back() && c < b) pts.push_back(c);
    }
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) add_panel(m, pts[i], pts[i + 1], false, xs, ws);
}

}  // namespace

QuantileRule::QuantileRule(const Measure1D& m, const std::vector<double>& breakpoints) {
    std::vector<double> us;
    for (double x : breakpoints) {
        double u = m.cdf(x);
        if (u > 1e-14 && u < 1.0 - 1e-14) us.push_back(u);
    }
    us.push_back(0.5);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end(), [](double p, double q) { return std::fabs(p - q) < 1e-13; }),
             us.end());
    // Lower tail [0, u_0], graded toward 0.
    const int tail_levels = 60;
    double u0 = us.front();
    for (int j = 0; j < tail_levels; ++j) {
        add_panel(m, u0 * std::ldexp(1.0, -j - 1), u0 * std::ldexp(1.0, -j), false, x_, w_);
    }
    for (std::size_t i = 0; i + 1 < us.size(); ++i) add_segment(m, us[i], us[i + 1], 12, x_, w_);
    // Upper tail [u_last, 1] in the variable t = 1 - u.
    double t0 = 1.0 - us.back();
    for (int j = 0; j < tail_levels; ++j) {
        add_panel(m, t0 * std::ldexp(1.0, -j), t0 * std::ldexp(1.0, -j - 1), true, x_, w_);
    }
}

double QuantileRule::integrate(const RealFn& g) const {
    std::vector<double> v(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) v[i] = g(x_[i]);
    return kernels::weighted_sum(w_.data(), v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Level sets of piecewise-linear functions

namespace {

struct Piece {
    double a, b;       // interval, possibly infinite ends
    double x0, y0, s;  // f(x) = y0 + s (x - x0)
};

std::vector<Piece> pieces_of(const GridFunction& f) {
    const auto& k = f.knots();
    const auto& v = f.values();
    const std::size_t n = k.size();
    std::vector<Piece> out;
    double ls = f.extrapolation() == Extrapolation::linear_tail ? (v[1] - v[0]) / (k[1] - k[0]) : 0.0;
    double rs = f.extrapolation() == Extrapolation::linear_tail
                    ? (v[n - 1] - v[n - 2]) / (k[n - 1] - k[n - 2])
                    : 0.0;
    out.push_back({-kInf, k[0], k[0], v[0], ls});
    for (std::size_t i = 0; i + 1 < n; ++i) {
        out.push_back({k[i], k[i + 1], k[i], v[i], (v[i + 1] - v[i]) / (k[i + 1] - k[i])});
    }
    out.push_back({k[n - 1], kInf, k[n - 1], v[n - 1], rs});
    return out;
}

// Mass of {x in [a,b] : y0 + s(x-x0) >= level}.
double superlevel_mass(const Measure1D& m, const Piece& p, double level) {
    if (p.s == 0.0) return p.y0 >= level ? mass(m, p.a, p.b) : 0.0;
    double root = p.x0 + (level - p.y0) / p.s;
    if (p.s > 0.0) return root >= p.b ? 0.0 : mass(m, std::max(p.a, root), p.b);
    return root <= p.a ? 0.0 : mass(m, p.a, std::min(p.b, root));
}

double sublevel_mass(const Measure1D& m, const Piece& p, double level) {
    Piece neg{p.a, p.b, p.x0, -p.y0, -p.s};
    return superlevel_mass(m, neg, -level);
}

std::vector<double> knots_with_median(const GridFunction& f) { return f.knots(); }

}  // namespace

double level_mass_abs(const GridFunction& f, const Measure1D& m, double t) {
    if (t <= 0.0) return 1.0;
    double total = 0.0;
    for (const Piece& p : pieces_of(f)) {
        total += superlevel_mass(m, p, t) + sublevel_mass(m, p, -t);
    }
    return std::clamp(total, 0.0, 1.0);
}

double level_mass_le(const GridFunction& f, const Measure1D& m, double s) {
    double total = 0.0;
    for (const Piece& p : pieces_of(f)) total += sublevel_mass(m, p, s);
    return std::clamp(total, 0.0, 1.0);
}

double expectation(const GridFunction& f, const Measure1D& m) {
    QuantileRule rule(m, knots_with_median(f));
    return rule.integrate([&](double x) { return f(x); });
}

double median_of(const GridFunction& f, const Measure1D& m) {
    double lo = *std::min_element(f.values().begin(), f.values().end());
    double hi = *std::max_element(f.values().begin(), f.values().end());
    if (f.extrapolation() == Extrapolation::linear_tail) {
        for (double u : {1e-15, 1.0 - 1e-15}) {
            double y = f(u < 0.5 ? m.quantile(u) : m.quantile_upper(1.0 - u));
            if (std::isfinite(y)) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
    }
    if (level_mass_le(f, m, lo) >= 0.5) return lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (level_mass_le(f, m, mid) >= 0.5) hi = mid; else lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Norms

double luxemburg(const std::vector<double>& abs_values, const std::vector<double>& weights,
                 const OrliczFunction& n) {
    double amax = 0.0;
    for (double a : abs_values) amax = std::max(amax, a);
    if (amax == 0.0) return 0.0;
    std::vector<double> buf(abs_values.size());
    // g(s) = integral of N(s|f|) is increasing in s = 1/v.
    RealFn g = [&](double s) {
        for (std::size_t i = 0; i < abs_values.size(); ++i) buf[i] = n(s * abs_values[i]);
        return kernels::weighted_sum(weights.data(), buf.data(), buf.size());
    };
    double s;
    try {
        s = invert_increasing_positive(g, 1.0, 1.0 / amax);
    } catch (const Error&) {
        throw Error(ErrorKind::NotFinite, "no admissible Luxemburg scale below the overflow guard");
    }
    return 1.0 / s;
}

double orlicz_norm(const GridFunction& f, const Measure1D& m, const OrliczFunction& n) {
    QuantileRule rule(m, knots_with_median(f));
    std::vector<double> a(rule.x().size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::fabs(f(rule.x()[i]));
    return luxemburg(a, rule.w(), n);
}

double weak_orlicz_norm(const GridFunction& f, const Measure1D& m, const OrliczFunction& n) {
    double top = 0.0;
    for (double v : f.values()) top = std::max(top, std::fabs(v));
    if (f.extrapolation() == Extrapolation::linear_tail) {
        for (double u : {1e-15, 1.0 - 1e-15}) {
            double y = std::fabs(f(u < 0.5 ? m.quantile(u) : m.quantile_upper(1.0 - u)));
            if (std::isfinite(y)) top = std::max(top, y);
        }
    }
    if (top == 0.0) return 0.0;
    auto h = [&](double t) { return n.wedge(level_mass_abs(f, m, t)) * t; };
    std::vector<double> levels;
    for (double v : f.values()) {
        if (std::fabs(v) > 0.0) levels.push_back(std::fabs(v));
    }
    for (int i = 1; i <= 512; ++i) levels.push_back(top * i / 512.0);
    for (double t : log_grid(top * 1e-12, top, 32)) levels.push_back(t);
    std::sort(levels.begin(), levels.end());
    double best = 0.0, arg = levels.front();
    std::size_t bi = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        double v = h(levels[i]);
        if (v > best) {
            best = v;
            arg = levels[i];
            bi = i;
        }
    }
    double a = levels[bi == 0 ? 0 : bi - 1], b = levels[std::min(bi + 1, levels.size() - 1)];
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = h(c), fd = h(d);
    for (int it = 0; it < 100 && b - a > 1e-14 * arg; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc; c = b - invphi * (b - a); fc = h(c);
        } else {
            a = c; c = d; fc = fd; d = a + invphi * (b - a); fd = h(d);
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

double dual_norm_indicator(const Measure1D& m, double a_mass, const OrliczFunction& n,
                           const PredicateReport* predicates) {
    (void)m;
    if (!(a_mass > 0.0 && a_mass <= 1.0)) throw Error(ErrorKind::UsageError, "mass must lie in (0,1]");
    TriState young = predicates ? predicates->is_young : check_young(n, predicate_grid());
    if (!young.holds()) throw Error(ErrorKind::NotYoung, "dual norm needs a Young function");
    return a_mass * n.inverse(1.0 / a_mass);
}

DualSandwich dual_norm_sandwich(const Measure1D& m, double a_mass, const OrliczFunction& n,
                                int cells, unsigned seed) {
    DualSandwich out{};
    out.formula = dual_norm_indicator(m, a_mass, n);
    // Cells of A: the far tail, then equal widths in x up to Q(a).
    double xa = m.quantile(a_mass);
    double x1 = m.quantile(a_mass / (2.0 * cells));
    std::vector<double> bounds{-kInf};
    for (int k = 0; k < cells; ++k) bounds.push_back(x1 + (xa - x1) * k / (cells - 1));
    std::vector<double> masses(cells);
    for (int k = 0; k < cells; ++k) masses[k] = mass(m, bounds[k], bounds[k + 1]);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> start(std::log(0.2), std::log(5.0));
    std::vector<double> lc(cells);
    for (double& v : lc) v = start(rng);

    auto objective = [&](const std::vector<double>& logc) {
        std::vector<double> c(cells);
        for (int k = 0; k < cells; ++k) c[k] = std::exp(logc[k]);
        double norm = luxemburg(c, masses, n);
        double integral = 0.0;
        for (int k = 0; k < cells; ++k) integral += masses[k] * c[k];
        return integral / norm;
    };

    double f = objective(lc);
    double step = 0.5;
    int it = 0;
    for (; it < 400; ++it) {
        std::vector<double> grad(cells);
        const double h = 1e-6;
        for (int k = 0; k < cells; ++k) {
            std::vector<double> p = lc;
            p[k] += h;
            std::vector<double> q = lc;
            q[k] -= h;
            grad[k] = (objective(p) - objective(q)) / (2.0 * h);
        }
        double gnorm = 0.0;
        for (double g : grad) gnorm += g * g;
        gnorm = std::sqrt(gnorm);
        if (gnorm < 1e-13 * std::max(1.0, f)) break;
        bool moved = false;
        while (step > 1e-12) {
            std::vector<double> trial = lc;
            for (int k = 0; k < cells; ++k) trial[k] += step * grad[k] / gnorm;
            double ft = objective(trial);
            if (ft > f) {
                lc = trial;
                f = ft;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    out.lower = f;
    out.iterations = it;
    // Jensen bound at the maximizer, normalized so the N-integral equals 1.
    std::vector<double> c(cells);
    for (int k = 0; k < cells; ++k) c[k] = std::exp(lc[k]);
    double norm = luxemburg(c, masses, n);
    double a_cells = 0.0, n_integral = 0.0;
    for (int k = 0; k < cells; ++k) {
        a_cells += masses[k];
        n_integral += masses[k] * n(c[k] / norm);
    }
    out.upper = a_cells * n.inverse(n_integral / a_cells);
    return out;
}

GridFunction indicator_of_lower_set(const Measure1D& m, double a_mass, double ramp) {
    double xa = m.quantile(a_mass);
    double r = ramp * std::max(1.0, std::fabs(xa));
    return GridFunction({xa - 1.0, xa, xa + r, xa + 1.0}, {1.0, 1.0, 0.0, 0.0});
}

}  // namespace isx
