#include "isoperimetrix/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

namespace isx {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::measure_derived: return "measure-derived";
        case Provenance::analytic: return "analytic";
        case Provenance::user_supplied: return "user-supplied";
    }
    return "analytic";
}

const char* profile_kind_name(ProfileKind k) {
    switch (k) {
        case ProfileKind::exact: return "exact";
        case ProfileKind::half_line_upper_bound: return "half-line upper bound";
        case ProfileKind::lower_bound: return "lower bound";
    }
    return "exact";
}

Profile::Profile(RealFn lower, RealFn upper, Provenance provenance, ProfileKind kind,
                 std::string name)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      provenance_(provenance),
      kind_(kind),
      name_(std::move(name)) {}

Profile Profile::symmetric(RealFn lower, Provenance provenance, ProfileKind kind, std::string name) {
    Profile p(lower, lower, provenance, kind, std::move(name));
    p.symmetric_ = true;
    return p;
}

double Profile::lower(double t) const { return t <= 0.0 ? 0.0 : lower_(std::min(t, 0.5)); }

double Profile::upper(double t) const { return t <= 0.0 ? 0.0 : upper_(std::min(t, 0.5)); }

double Profile::operator()(double t) const {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return t <= 0.5 ? lower(t) : upper(1.0 - t);
}

double Profile::tilde(double t) const { return std::min(lower(t), upper(t)); }

Profile Profile::scaled(double c) const {
    RealFn lo = lower_, up = upper_;
    Profile p([lo, c](double t) { return c * lo(t); }, [up, c](double t) { return c * up(t); },
              provenance_, kind_, name_);
    p.symmetric_ = symmetric_;
    return p;
}

Profile profile_of(const Measure1D& m) {
    auto lo = [m](double t) { return m.density(m.quantile(t)); };
    auto up = [m](double t) { return m.density(m.quantile_upper(t)); };
    ProfileKind kind = m.log_concave() ? ProfileKind::exact : ProfileKind::half_line_upper_bound;
    if (m.is_even()) return Profile::symmetric(lo, Provenance::measure_derived, kind, m.name());
    return Profile(lo, up, Provenance::measure_derived, kind, m.name());
}

double gaussian_isoperimetric(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double s = std::min(t, 1.0 - t);
    double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * s);
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double comparator_I0_value(double t) {
    if (t <= 0.0) return 0.0;
    return t * std::sqrt(std::log1p(1.0 / t));
}

Profile gaussian_profile() {
    return Profile::symmetric(gaussian_isoperimetric, Provenance::analytic, ProfileKind::exact,
                              "gaussian");
}

Profile comparator_I0() {
    return Profile::symmetric(comparator_I0_value, Provenance::analytic, ProfileKind::exact, "I0");
}

ComparatorRatio gaussian_to_I0_ratio(double lo_t) {
    ComparatorRatio r{kInf, 0.0};
    for (double t : log_grid(lo_t, 0.5, 256)) {
        double v = gaussian_isoperimetric(t) / comparator_I0_value(t);
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
    }
    return r;
}

ScanResult cheeger_constant(const Profile& p) {
    return inf_scan([&](double t) { return p.tilde(t) / t; }, 1e-8, 0.5);
}

GaussianConstant gaussian_constant(const Profile& p, double lo_t) {
    auto ratio = [&](double t) { return p.tilde(t) / gaussian_isoperimetric(t); };
    ScanResult s = inf_scan(ratio, lo_t, 0.5);
    GaussianConstant out{s.min, s.argmin, false, 1.0};
    double edge = ratio(lo_t), next = ratio(10.0 * lo_t);
    out.edge_decay = next > 0.0 ? edge / next : 1.0;
    out.decaying_at_edge = s.argmin <= lo_t * 1.0001 && edge < next;
    return out;
}

// ---------------------------------------------------------------------------
// Bobkov's correspondence: x(u) = integral of ds/J(s) from 1/2 to u.

namespace {

class BobkovModel final : public MeasureModel {
public:
    explicit BobkovModel(Profile j) : j_(std::move(j)) {
        const int n = 6000;
        const double wmin = std::log(1e-30), wmax = std::log(0.5);
        w_.resize(n);
        x_.resize(n);
        d_.resize(n);
        for (int i = 0; i < n; ++i) {
            w_[i] = wmin + (wmax - wmin) * i / (n - 1);
            d_[i] = slope(w_[i]);
        }
        w_.back() = wmax;
        x_.back() = 0.0;
        QuadratureConfig cfg;
        cfg.rel_tol = 1e-13;
        for (int i = n - 2; i >= 0; --i) {
            x_[i] = x_[i + 1] - integrate([this](double w) { return slope(w); }, w_[i], w_[i + 1], cfg);
        }
        // Far tail: slope(w) decaying geometrically in w gives a finite end point.
        double r = slope(wmin) / slope(wmin + 1.0);
        if (r > std::exp(-0.01)) {
            lo_ = -kInf;
        } else {
            lo_ = x_.front() - d_.front() / (-std::log(r));
        }
    }

    Support support() const override { return {lo_, -lo_}; }

    double psi(double x) const override {
        if (x <= lo_ || x >= -lo_) return kInf;
        double u = cdf(-std::fabs(x));
        double v = j_.lower(u);
        return v > 0.0 ? -std::log(v) : kInf;
    }

    double cdf(double x) const override {
        if (x > 0.0) return sf(-x);
        if (x <= lo_) return 0.0;
        return std::exp(w_of(x));
    }

    double sf(double x) const override {
        if (x < 0.0) return cdf(-x);
        if (x >= -lo_) return 0.0;
        return std::exp(w_of(-x));
    }

    double quantile(double u) const override {
        if (u <= 0.0) return lo_;
        if (u >= 1.0) return -lo_;
        if (u > 0.5) return -x_of(std::log1p(-u));
        return x_of(std::log(u));
    }

    double quantile_upper(double t) const override {
        if (t <= 0.0) return -lo_;
        if (t >= 1.0) return lo_;
        if (t > 0.5) return -x_of(std::log1p(-t));
        return -x_of(std::log(t));
    }

    std::string name() const override { return "bobkov(" + j_.name() + ")"; }

private:
    double slope(double w) const {
        double u = std::exp(w);
        return u / j_.lower(u);
    }

    // x as a function of w = log u, u <= 1/2.
    double x_of(double w) const {
        if (w < w_.front()) {
            return x_.front() - integrate([this](double v) { return slope(v); }, w, w_.front());
        }
        std::size_t i = segment(w_, w);
        return hermite(i, w);
    }

    double hermite(std::size_t i, double w) const {
        double h = w_[i + 1] - w_[i];
        double s = (w - w_[i]) / h;
        double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * x_[i] + (s3 - 2 * s2 + s) * h * d_[i] +
               (-2 * s3 + 3 * s2) * x_[i + 1] + (s3 - s2) * h * d_[i + 1];
    }

    // Inverse of x_of for x <= 0.
    double w_of(double x) const {
        if (x >= 0.0) return w_.back();
        if (x < x_.front()) {
            RealFn f = [this](double w) { return x_of(w); };
            double lo = w_.front() - 1.0;
            while (x_of(lo) > x) {
                lo = w_.front() - 2.0 * (w_.front() - lo);
                if (lo < -745.0) return -kInf;
            }
            return invert_monotone(f, x, {lo, w_.front()});
        }
        std::size_t i = segment(x_, x);
        double a = w_[i], b = w_[i + 1];
        double w = a + (b - a) * (x - x_[i]) / (x_[i + 1] - x_[i]);
        for (int it = 0; it < 60; ++it) {
            double fx = hermite(i, w) - x;
            if (fx > 0.0) b = w; else a = w;
            double h = w_[i + 1] - w_[i];
            double s = (w - w_[i]) / h;
            double deriv = ((6 * s * s - 6 * s) * x_[i] + (3 * s * s - 4 * s + 1) * h * d_[i] +
                            (-6 * s * s + 6 * s) * x_[i + 1] + (3 * s * s - 2 * s) * h * d_[i + 1]) /
                           h;
            double next = deriv > 0.0 ? w - fx / deriv : 0.5 * (a + b);
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            if (std::fabs(next - w) <= 1e-15 * std::max(1.0, std::fabs(w))) {
                w = next;
                break;
            }
            w = next;
        }
        return w;
    }

    static std::size_t segment(const std::vector<double>& v, double x) {
        auto it = std::upper_bound(v.begin(), v.end(), x);
        std::size_t i = static_cast<std::size_t>(it - v.begin());
        if (i == 0) return 0;
        return std::min(i - 1, v.size() - 2);
    }

    Profile j_;
    std::vector<double> w_, x_, d_;
    double lo_ = -kInf;
};

}  // namespace

void require_bobkov_shape(const Profile& j) {
    std::vector<double> grid = log_grid(1e-10, 0.5, 64);
    for (int i = 1; i < 1000; ++i) grid.push_back(0.5 * i / 1000.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double half = j.lower(0.5);
    for (double t : grid) {
        double a = j.lower(t), b = j.upper(t);
        if (!(a > 0.0)) throw Error(ErrorKind::NotVanishing, "profile must be positive on (0,1)");
        if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::fabs(a))) {
            throw Error(ErrorKind::NotSymmetric, "profile is not symmetric about 1/2");
        }
    }
    if (!(j.lower(1e-12) <= 1e-3 * half)) {
        throw Error(ErrorKind::NotVanishing, "profile does not vanish at 0 and 1");
    }
    // Concavity on [0,1/2]: chord slopes non-increasing (J(0) = 0 included).
    std::vector<double> pts{0.0};
    pts.insert(pts.end(), grid.begin(), grid.end());
    double prev = kInf;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double s = (j.lower(pts[i + 1]) - j.lower(pts[i])) / (pts[i + 1] - pts[i]);
        if (s > prev + 1e-9 * std::max(1.0, std::fabs(prev))) {
            throw Error(ErrorKind::NotConcave, "profile is not concave near t=" + std::to_string(pts[i]));
        }
        prev = s;
    }
    if (prev < -1e-9) throw Error(ErrorKind::NotConcave, "profile decreases before t=1/2");
}

Measure1D measure_from_profile(const Profile& j) {
    require_bobkov_shape(j);
    return Measure1D(std::make_shared<BobkovModel>(j));
}

// ---------------------------------------------------------------------------

double union_refined_profile(const Measure1D& m, double t, int components, int grid) {
    if (components < 1 || grid < 8) throw Error(ErrorKind::UsageError, "bad refinement parameters");
    const int target = std::max(1, static_cast<int>(std::lround(t * grid)));
    if (target >= grid) return 0.0;
    const int states = 2 * components + 1;
    std::vector<double> cost(grid + 1);
    for (int i = 0; i <= grid; ++i) cost[i] = m.quantile_density(static_cast<double>(i) / grid);
    // dp[k][mass]: k endpoints placed so far; odd k means the current cell lies in A.
    std::vector<double> dp(states * (target + 1), kInf), next(dp.size());
    auto at = [&](std::vector<double>& v, int k, int mass) -> double& { return v[k * (target + 1) + mass]; };
    at(dp, 0, 0) = 0.0;
    for (int i = 0; i <= grid; ++i) {
        // Optionally place one endpoint at node i.
        for (int k = states - 2; k >= 0; --k) {
            for (int mass = 0; mass <= target; ++mass) {
                double v = at(dp, k, mass);
                if (v < kInf) at(dp, k + 1, mass) = std::min(at(dp, k + 1, mass), v + cost[i]);
            }
        }
        if (i == grid) break;
        std::fill(next.begin(), next.end(), kInf);
        for (int k = 0; k < states; ++k) {
            int add = k % 2;
            for (int mass = 0; mass + add <= target; ++mass) {
                double v = at(dp, k, mass);
                if (v < kInf) at(next, k, mass + add) = std::min(at(next, k, mass + add), v);
            }
        }
        dp.swap(next);
    }
    double best = kInf;
    for (int k = 2; k < states; k += 2) best = std::min(best, at(dp, k, target));
    return best;
}

std::vector<double> profile_grid(int points) {
    int half = std::max(2, points / 2);
    std::vector<double> g(half);
    for (int i = 0; i < half; ++i) {
        g[i] = std::exp(std::log(1e-8) + (std::log(0.5) - std::log(1e-8)) * i / (half - 1));
    }
    return g;
}

std::string profile_csv(const Profile& p, int points) {
    std::vector<double> g = profile_grid(points);
    std::ostringstream os;
    os << "t,J(t)\n";
    char buf[96];
    for (double t : g) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, p.lower(t));
        os << buf;
    }
    for (auto it = g.rbegin() + 1; it != g.rend(); ++it) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", 1.0 - *it, p.upper(*it));
        os << buf;
    }
    return os.str();
}

}  // namespace isx
