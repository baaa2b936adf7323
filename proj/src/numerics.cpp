#include "isoperimetrix/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

#include "isoperimetrix/kernels.hpp"

namespace isx {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::DivergentIntegral: return "DivergentIntegral";
        case ErrorKind::NotBracketed: return "NotBracketed";
        case ErrorKind::EmptyInterval: return "EmptyInterval";
        case ErrorKind::NonNormalizable: return "NonNormalizable";
        case ErrorKind::BadGrid: return "BadGrid";
        case ErrorKind::NotFinite: return "NotFinite";
        case ErrorKind::NotYoung: return "NotYoung";
        case ErrorKind::PredicateFails: return "PredicateFails";
        case ErrorKind::NotConcave: return "NotConcave";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotVanishing: return "NotVanishing";
        case ErrorKind::NotMonotone: return "NotMonotone";
        case ErrorKind::IntegrabilityFails: return "IntegrabilityFails";
        case ErrorKind::AlphaTooSmall: return "AlphaTooSmall";
        case ErrorKind::QOutOfRange: return "QOutOfRange";
        case ErrorKind::InfiniteControlRate: return "InfiniteControlRate";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "Error";
}

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0) || !(tail_cutoff_mass > 0)) {
        throw Error(ErrorKind::UsageError, "quadrature tolerances must be positive");
    }
    if (max_subdivisions < 16) {
        throw Error(ErrorKind::UsageError, "max_subdivisions must be at least 16");
    }
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(std::vector<double> knots, std::vector<double> values,
                           Extrapolation extrapolation)
    : knots_(std::move(knots)), values_(std::move(values)), extrapolation_(extrapolation) {
    if (knots_.size() < 2 || knots_.size() != values_.size()) {
        throw Error(ErrorKind::BadGrid, "grid function needs >= 2 knots and matching values");
    }
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i] < knots_[i + 1])) {
            throw Error(ErrorKind::BadGrid, "knots must be strictly increasing");
        }
    }
}

double GridFunction::operator()(double x) const {
    const std::size_t n = knots_.size();
    if (x <= knots_.front()) {
        if (extrapolation_ == Extrapolation::none || x == knots_.front()) return values_.front();
        double slope = (values_[1] - values_[0]) / (knots_[1] - knots_[0]);
        return values_[0] + slope * (x - knots_[0]);
    }
    if (x >= knots_.back()) {
        if (extrapolation_ == Extrapolation::none || x == knots_.back()) return values_.back();
        double slope = (values_[n - 1] - values_[n - 2]) / (knots_[n - 1] - knots_[n - 2]);
        return values_[n - 1] + slope * (x - knots_[n - 1]);
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - knots_.begin());
    double x0 = knots_[j - 1], x1 = knots_[j];
    double w = (x - x0) / (x1 - x0);
    return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

GridFunction GridFunction::shifted(double c) const {
    std::vector<double> v = values_;
    for (double& y : v) y -= c;
    return GridFunction(knots_, std::move(v), extrapolation_);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool frozen;
    bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const RealFn& f, double x) {
    double y = f(x);
    if (!std::isfinite(y)) {
        throw Error(ErrorKind::DivergentIntegral,
                    "integrand not finite at x=" + std::to_string(x));
    }
    return y;
}

Panel gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = checked(f, c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        double f1 = checked(f, c - dx);
        double f2 = checked(f, c + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Panel p{a, b, resk * h, std::fabs((resk - resg) * h), false};
    // A panel too narrow to split further is frozen; its error counts as roundoff.
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    p.frozen = (b - a) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
    return p;
}

double adaptive_finite(const RealFn& f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    if (b < a) return -adaptive_finite(f, b, a, cfg);
    std::priority_queue<Panel> open;
    double total = 0.0, err = 0.0, frozen_err = 0.0;
    Panel first = gk15(f, a, b);
    total = first.value;
    err = first.error;
    open.push(first);
    std::size_t splits = 0;
    while (!open.empty()) {
        double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
        if (err <= tol) break;
        if (!std::isfinite(total) || std::fabs(total) > 1e300) {
            throw Error(ErrorKind::DivergentIntegral, "partial sums exceed overflow guard");
        }
        Panel p = open.top();
        open.pop();
        if (p.frozen) {
            frozen_err += p.error;
            if (open.empty()) break;
            continue;
        }
        if (++splits > cfg.max_subdivisions) {
            throw Error(ErrorKind::NonConvergent,
                        "tolerance not met within max_subdivisions on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
        }
        double m = 0.5 * (p.a + p.b);
        Panel l = gk15(f, p.a, m);
        Panel r = gk15(f, m, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        open.push(l);
        open.push(r);
    }
    (void)frozen_err;
    if (!std::isfinite(total) || std::fabs(total) > 1e300) {
        throw Error(ErrorKind::DivergentIntegral, "integral exceeds overflow guard");
    }
    // Re-sum to shed accumulated cancellation from the running updates.
    double resum = 0.0;
    while (!open.empty()) {
        resum += open.top().value;
        open.pop();
    }
    return resum;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                 const RealFn& tail_envelope) {
    cfg.validate();
    if (std::isinf(a)) throw Error(ErrorKind::UsageError, "lower limit must be finite");
    if (!std::isinf(b)) return adaptive_finite(f, a, b, cfg);

    if (tail_envelope) {
        // Geometric panels [a+h(2^k-1), a+h(2^(k+1)-1)] until the envelope is negligible.
        double h = std::max(1.0, std::fabs(a));
        double lo = a, total = 0.0;
        for (int k = 0; k < 1100; ++k) {
            double hi = a + h * (std::ldexp(1.0, k + 1) - 1.0);
            total += adaptive_finite(f, lo, hi, cfg);
            if (!std::isfinite(total) || std::fabs(total) > 1e300) {
                throw Error(ErrorKind::DivergentIntegral, "tail sums exceed overflow guard");
            }
            if (std::fabs(tail_envelope(hi)) < cfg.tail_cutoff_mass) return total;
            lo = hi;
        }
        throw Error(ErrorKind::DivergentIntegral, "tail envelope never drops below cutoff");
    }

    // x = a + (1 - u)/u maps u in (0,1] onto [a, inf).
    RealFn g = [&](double u) {
        double x = a + (1.0 - u) / u;
        return f(x) / (u * u);
    };
    double total = adaptive_finite(g, 0.0, 1.0, cfg);
    return total;
}

double integrate_algebraic(const RealFn& g, double a, double b, double beta,
                           const QuadratureConfig& cfg) {
    if (!(beta >= 0.0 && beta < 1.0)) {
        throw Error(ErrorKind::UsageError, "algebraic weight exponent must lie in [0,1)");
    }
    if (beta == 0.0) return integrate(g, a, b, cfg);
    double split = std::isinf(b) ? a + std::max(1.0, std::fabs(a)) : b;
    const double k = 1.0 / (1.0 - beta);
    const double len = split - a;
    // s = a + len*w^k absorbs (s-a)^(-beta) into the Jacobian.
    RealFn h = [&](double w) { return g(a + len * std::pow(w, k)); };
    double head = std::pow(len, 1.0 - beta) * k * adaptive_finite(h, 0.0, 1.0, cfg);
    if (!std::isinf(b)) return head;
    RealFn tail = [&](double s) { return std::pow(s - a, -beta) * g(s); };
    return head + integrate(tail, split, kInf, cfg);
}

std::vector<double> cumulative_from_right(const RealFn& f, const std::vector<double>& grid,
                                          const QuadratureConfig& cfg) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = grid.size(); i-- > 1;) {
        out[i - 1] = out[i] + integrate(f, grid[i - 1], grid[i], cfg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Root finding

double invert_monotone(const RealFn& f, double y, Bracket bracket, double abs_tol) {
    double lo = bracket.lo, hi = bracket.hi;
    if (!(lo <= hi)) throw Error(ErrorKind::NotBracketed, "empty bracket");
    double flo = f(lo) - y, fhi = f(hi) - y;
    const double tol = abs_tol * (1.0 + std::fabs(y));
    if (std::fabs(flo) <= tol && flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) {
        if (std::fabs(flo) <= tol) return lo;
        if (std::fabs(fhi) <= tol) return hi;
        throw Error(ErrorKind::NotBracketed,
                    "target " + std::to_string(y) + " outside f(bracket)");
    }
    // Illinois-modified regula falsi, with a bisection every third step.
    int side = 0;
    for (int it = 0; it < 400; ++it) {
        double x;
        if (it % 3 == 2 || !std::isfinite(flo) || !std::isfinite(fhi)) {
            x = 0.5 * (lo + hi);
        } else {
            x = (lo * fhi - hi * flo) / (fhi - flo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        }
        double fx = f(x) - y;
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
        double width = hi - lo;
        double scale = std::max({std::fabs(lo), std::fabs(hi), 1e-300});
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
    }
    double flo_true = std::fabs(f(lo) - y), fhi_true = std::fabs(f(hi) - y);
    return flo_true <= fhi_true ? lo : hi;
}

double invert_increasing_positive(const RealFn& f, double y, double start) {
    double hi = start, lo = start;
    int guard = 0;
    while (f(hi) < y) {
        hi *= 2.0;
        if (++guard > 2100 || !std::isfinite(hi)) {
            throw Error(ErrorKind::NotBracketed, "target above range of increasing map");
        }
    }
    guard = 0;
    while (f(lo) > y) {
        lo *= 0.5;
        if (++guard > 2100 || lo == 0.0) {
            throw Error(ErrorKind::NotBracketed, "target below range of increasing map");
        }
    }
    // Work in log(x) so wide brackets converge in relative precision.
    RealFn g = [&](double u) { return f(std::exp(u)); };
    return std::exp(invert_monotone(g, y, {std::log(lo), std::log(hi)}, 1e-15));
}

// ---------------------------------------------------------------------------
// Scans

std::vector<double> log_grid(double lo, double hi, std::size_t points_per_decade) {
    if (!(hi > 0.0)) throw Error(ErrorKind::EmptyInterval, "log grid needs hi > 0");
    if (lo <= 0.0) lo = std::min(1e-8, hi * 1e-8);
    if (!(lo < hi)) throw Error(ErrorKind::EmptyInterval, "log grid needs lo < hi");
    double decades = std::log10(hi / lo);
    std::size_t n = std::max<std::size_t>(
        3, static_cast<std::size_t>(std::ceil(decades * static_cast<double>(points_per_decade))) +
               1);
    std::vector<double> g(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

ScanResult inf_scan_on(const RealFn& f, const std::vector<double>& grid) {
    if (grid.size() < 2) throw Error(ErrorKind::EmptyInterval, "scan grid too small");
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = f(grid[i]);
        vals[i] = std::isnan(v) ? kInf : v;
    }
    std::size_t i = kernels::argmin(vals.data(), vals.size());
    if (i >= vals.size() || !std::isfinite(vals[i])) {
        throw Error(ErrorKind::NotFinite, "no finite value on scan grid");
    }
    ScanResult best{grid[i], vals[i]};
    double a = grid[i == 0 ? 0 : i - 1];
    double b = grid[std::min(i + 1, grid.size() - 1)];
    // Golden-section refinement inside the neighbouring cells.
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        if (fc < best.min) best = {c, fc};
        if (fd < best.min) best = {d, fd};
    }
    return best;
}

ScanResult inf_scan(const RealFn& f, double lo, double hi, std::size_t points_per_decade) {
    if (!(hi > lo)) throw Error(ErrorKind::EmptyInterval, "inf_scan needs lo < hi");
    return inf_scan_on(f, log_grid(lo, hi, points_per_decade));
}

}  // namespace isx
