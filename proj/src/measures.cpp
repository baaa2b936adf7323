#include "isoperimetrix/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace isx {
namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

class GaussianModel final : public MeasureModel {
public:
    Support support() const override { return {-kInf, kInf}; }
    double psi(double x) const override { return 0.5 * x * x + kLogSqrt2Pi; }
    double cdf(double x) const override { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
    double sf(double x) const override { return 0.5 * std::erfc(x / std::sqrt(2.0)); }
    double quantile(double u) const override {
        if (u <= 0.0) return -kInf;
        if (u >= 1.0) return kInf;
        return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
    }
    double quantile_upper(double t) const override {
        if (t <= 0.0) return kInf;
        if (t >= 1.0) return -kInf;
        return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * t);
    }
    std::string name() const override { return "gaussian"; }
};

// Two-sided exponential, density exp(-|x|)/2.
class ExponentialModel final : public MeasureModel {
public:
    Support support() const override { return {-kInf, kInf}; }
    double psi(double x) const override { return std::fabs(x) + std::log(2.0); }
    double cdf(double x) const override {
        return x <= 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    }
    double sf(double x) const override {
        return x >= 0.0 ? 0.5 * std::exp(-x) : 1.0 - 0.5 * std::exp(x);
    }
    double quantile(double u) const override {
        if (u <= 0.0) return -kInf;
        if (u >= 1.0) return kInf;
        return u <= 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    }
    double quantile_upper(double t) const override {
        if (t <= 0.0) return kInf;
        if (t >= 1.0) return -kInf;
        return t <= 0.5 ? -std::log(2.0 * t) : std::log(2.0 * (1.0 - t));
    }
    std::string name() const override { return "exponential"; }
};

// Density exp(-|x|^alpha)/Z with Z = 2*Gamma(1 + 1/alpha).
class ExpAlphaModel final : public MeasureModel {
public:
    explicit ExpAlphaModel(double alpha)
        : alpha_(alpha), shape_(1.0 / alpha), log_z_(std::log(2.0) + std::lgamma(1.0 + 1.0 / alpha)) {}
    Support support() const override { return {-kInf, kInf}; }
    double psi(double x) const override { return std::pow(std::fabs(x), alpha_) + log_z_; }
    double cdf(double x) const override {
        double half = 0.5 * boost::math::gamma_q(shape_, std::pow(std::fabs(x), alpha_));
        return x <= 0.0 ? half : 1.0 - half;
    }
    double sf(double x) const override {
        double half = 0.5 * boost::math::gamma_q(shape_, std::pow(std::fabs(x), alpha_));
        return x >= 0.0 ? half : 1.0 - half;
    }
    double quantile(double u) const override {
        if (u <= 0.0) return -kInf;
        if (u >= 1.0) return kInf;
        if (u == 0.5) return 0.0;
        return u < 0.5 ? -tail(u) : tail(1.0 - u);
    }
    double quantile_upper(double t) const override {
        if (t <= 0.0) return kInf;
        if (t >= 1.0) return -kInf;
        if (t == 0.5) return 0.0;
        return t < 0.5 ? tail(t) : -tail(1.0 - t);
    }
    std::string name() const override {
        std::ostringstream os;
        os << "exp_alpha:" << alpha_;
        return os.str();
    }

private:
    // |x| with tail mass t on one side, t < 1/2.
    double tail(double t) const {
        return std::pow(boost::math::gamma_q_inv(shape_, 2.0 * t), 1.0 / alpha_);
    }
    double alpha_, shape_, log_z_;
};

class UniformModel final : public MeasureModel {
public:
    UniformModel(double a, double b) : a_(a), b_(b) {}
    Support support() const override { return {a_, b_}; }
    double psi(double x) const override {
        return (x >= a_ && x <= b_) ? std::log(b_ - a_) : kInf;
    }
    double cdf(double x) const override { return std::clamp((x - a_) / (b_ - a_), 0.0, 1.0); }
    double sf(double x) const override { return std::clamp((b_ - x) / (b_ - a_), 0.0, 1.0); }
    double quantile(double u) const override { return a_ + std::clamp(u, 0.0, 1.0) * (b_ - a_); }
    double quantile_upper(double t) const override {
        return b_ - std::clamp(t, 0.0, 1.0) * (b_ - a_);
    }
    std::string name() const override {
        std::ostringstream os;
        os << "uniform:" << a_ << "," << b_;
        return os.str();
    }

private:
    double a_, b_;
};

// Density (1+alpha)/2 |x|^alpha on [-1,1]; vanishes at the origin.
class CuspModel final : public MeasureModel {
public:
    explicit CuspModel(double alpha) : alpha_(alpha) {}
    Support support() const override { return {-1.0, 1.0}; }
    double psi(double x) const override {
        if (x < -1.0 || x > 1.0 || x == 0.0) return kInf;
        return -std::log(0.5 * (1.0 + alpha_)) - alpha_ * std::log(std::fabs(x));
    }
    double cdf(double x) const override {
        if (x <= -1.0) return 0.0;
        if (x >= 1.0) return 1.0;
        double s = std::pow(std::fabs(x), 1.0 + alpha_);
        return x < 0.0 ? 0.5 * (1.0 - s) : 0.5 * (1.0 + s);
    }
    double sf(double x) const override { return cdf(-x); }
    double quantile(double u) const override {
        u = std::clamp(u, 0.0, 1.0);
        double v = 2.0 * u - 1.0;
        double r = std::pow(std::fabs(v), 1.0 / (1.0 + alpha_));
        return v < 0.0 ? -r : r;
    }
    double quantile_upper(double t) const override { return -quantile(t); }
    std::string name() const override {
        std::ostringstream os;
        os << "cusp:" << alpha_;
        return os.str();
    }

private:
    double alpha_;
};

// Piecewise-linear potential on knots, extended linearly beyond the end knots
// (log-linear density tails). Masses are exact for this representation.
class GridPotentialModel final : public MeasureModel {
public:
    GridPotentialModel(std::vector<double> x, std::vector<double> psi, std::string name)
        : x_(std::move(x)), psi_(std::move(psi)), name_(std::move(name)) {
        const std::size_t n = x_.size();
        left_slope_ = (psi_[1] - psi_[0]) / (x_[1] - x_[0]);
        right_slope_ = (psi_[n - 1] - psi_[n - 2]) / (x_[n - 1] - x_[n - 2]);
        if (!(left_slope_ < 0.0) || !(right_slope_ > 0.0)) {
            throw Error(ErrorKind::NonNormalizable,
                        "grid potential must decrease at the left end and increase at the right end");
        }
        // Shift psi so the largest density is 1, then accumulate unnormalized masses.
        double pmin = *std::min_element(psi_.begin(), psi_.end());
        for (double& p : psi_) p -= pmin;
        cum_.assign(n, 0.0);
        cum_[0] = std::exp(-psi_[0]) / (-left_slope_);
        for (std::size_t i = 0; i + 1 < n; ++i) cum_[i + 1] = cum_[i] + segment_mass(i, x_[i + 1]);
        double total = cum_[n - 1] + std::exp(-psi_[n - 1]) / right_slope_;
        if (!std::isfinite(total) || !(total > 0.0)) {
            throw Error(ErrorKind::NonNormalizable, "grid density does not integrate");
        }
        double log_total = std::log(total);
        for (double& c : cum_) c /= total;
        for (double& p : psi_) p += log_total;
    }
    Support support() const override { return {-kInf, kInf}; }
    double psi(double x) const override {
        const std::size_t n = x_.size();
        if (x <= x_[0]) return psi_[0] + left_slope_ * (x - x_[0]);
        if (x >= x_[n - 1]) return psi_[n - 1] + right_slope_ * (x - x_[n - 1]);
        std::size_t i = segment(x);
        double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
        return psi_[i] + w * (psi_[i + 1] - psi_[i]);
    }
    double cdf(double x) const override {
        const std::size_t n = x_.size();
        if (x <= x_[0]) return std::exp(-psi(x)) / (-left_slope_);
        if (x >= x_[n - 1]) return 1.0 - std::exp(-psi(x)) / right_slope_;
        std::size_t i = segment(x);
        return std::min(1.0, cum_[i] + segment_mass(i, x));
    }
    double sf(double x) const override {
        const std::size_t n = x_.size();
        if (x >= x_[n - 1]) return std::exp(-psi(x)) / right_slope_;
        return 1.0 - cdf(x);
    }
    double quantile(double u) const override {
        const std::size_t n = x_.size();
        if (u <= 0.0) return -kInf;
        if (u >= 1.0) return kInf;
        if (u <= cum_[0]) {
            // u = exp(-psi0 - s(x - x0))/(-s) with s = left slope < 0.
            return x_[0] + (std::log(u * (-left_slope_)) + psi_[0]) / (-left_slope_);
        }
        if (u >= cum_[n - 1]) return quantile_upper(1.0 - u);
        std::size_t i = static_cast<std::size_t>(
                            std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin()) - 1;
        i = std::min(i, n - 2);
        double target = u - cum_[i];
        double s = (psi_[i + 1] - psi_[i]) / (x_[i + 1] - x_[i]);
        double e0 = std::exp(-psi_[i]);
        double d;
        if (std::fabs(s) * (x_[i + 1] - x_[i]) < 1e-12) {
            d = target / e0;
        } else {
            d = -std::log1p(-target * s / e0) / s;
        }
        return std::clamp(x_[i] + d, x_[i], x_[i + 1]);
    }
    double quantile_upper(double t) const override {
        const std::size_t n = x_.size();
        double upper_mass = 1.0 - cum_[n - 1];
        if (t <= 0.0) return kInf;
        if (t <= upper_mass) {
            // t = exp(-psiN - s(x - xN))/s, s = right slope > 0.
            return x_[n - 1] - (std::log(t * right_slope_) + psi_[n - 1]) / right_slope_;
        }
        return quantile(1.0 - t);
    }
    std::string name() const override { return name_; }

private:
    std::size_t segment(double x) const {
        std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
        return std::min(i - 1, x_.size() - 2);
    }
    // Mass of [x_i, x] for x inside segment i (unnormalized before construction ends).
    double segment_mass(std::size_t i, double x) const {
        double s = (psi_[i + 1] - psi_[i]) / (x_[i + 1] - x_[i]);
        double d = x - x_[i];
        double e0 = std::exp(-psi_[i]);
        if (std::fabs(s * d) < 1e-12) return e0 * d;
        return e0 * (-std::expm1(-s * d)) / s;
    }

    std::vector<double> x_, psi_, cum_;
    double left_slope_ = 0.0, right_slope_ = 0.0;
    std::string name_;
};

void validate_grid(const std::vector<double>& x, const std::vector<double>& v) {
    if (x.size() != v.size() || x.size() < 8) {
        throw Error(ErrorKind::BadGrid, "grid needs at least 8 rows with matching columns");
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) throw Error(ErrorKind::BadGrid, "grid x must be strictly increasing");
    }
    for (double y : v) {
        if (!std::isfinite(y)) throw Error(ErrorKind::BadGrid, "grid values must be finite");
    }
}

double parse_number(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::UsageError, "bad number '" + s + "' in " + context);
    }
}

}  // namespace

// ---------------------------------------------------------------------------

LogConcavity check_log_concavity(const MeasureModel& model) {
    const int n = 1000;
    std::vector<double> xs, ps;
    xs.reserve(n);
    for (int i = 1; i < n; ++i) {
        double u = static_cast<double>(i) / n;
        double x = u <= 0.5 ? model.quantile(u) : model.quantile_upper(1.0 - u);
        if (!xs.empty() && !(x > xs.back())) continue;
        xs.push_back(x);
        ps.push_back(model.psi(x));
    }
    LogConcavity out{CertificateStatus::verified, 0.0};
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        double pl = ps[i - 1], pm = ps[i], pr = ps[i + 1];
        if (std::isinf(pl) || std::isinf(pr)) continue;
        double second;
        if (std::isinf(pm)) {
            second = -kInf;
        } else {
            double hl = xs[i] - xs[i - 1], hr = xs[i + 1] - xs[i];
            second = 2.0 * ((pr - pm) / hr - (pm - pl) / hl) / (hl + hr);
        }
        if (second < -1e-6 && second < worst) {
            worst = second;
            out = {CertificateStatus::violated, xs[i]};
        }
    }
    return out;
}

bool check_even(const MeasureModel& model) {
    for (int i = 1; i < 200; ++i) {
        double t = 0.5 * static_cast<double>(i) / 200.0;
        double x = model.quantile_upper(t);
        if (!std::isfinite(x)) continue;
        double a = model.psi(x), b = model.psi(-x);
        if (std::isinf(a) && std::isinf(b)) continue;
        if (!(std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(a)))) return false;
    }
    return std::fabs(model.quantile(0.5)) <= 1e-9;
}

Measure1D::Measure1D(std::shared_ptr<const MeasureModel> model)
    : model_(std::move(model)) {
    even_ = check_even(*model_);
    certificate_ = check_log_concavity(*model_);
    name_ = model_->name();
}

double Measure1D::density(double x) const {
    double p = model_->psi(x);
    return std::isinf(p) ? 0.0 : std::exp(-p);
}

double Measure1D::quantile_density(double u) const {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    double x = u <= 0.5 ? model_->quantile(u) : model_->quantile_upper(1.0 - u);
    return density(x);
}

double mass(const Measure1D& m, double a, double b) {
    if (b < a) std::swap(a, b);
    double v;
    if (a == -kInf) {
        v = m.cdf(b);
    } else if (b == kInf) {
        v = m.sf(a);
    } else {
        v = m.cdf(b) - m.cdf(a);
    }
    return std::clamp(v, 0.0, 1.0);
}

double median(const Measure1D& m) { return m.quantile(0.5); }

MeasureSpec parse_measure_spec(const std::string& text) {
    MeasureSpec spec;
    spec.text = text;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "gaussian" && arg.empty()) {
        spec.kind = MeasureKind::gaussian;
    } else if (head == "exponential" && arg.empty()) {
        spec.kind = MeasureKind::exponential;
    } else if (head == "exp_alpha") {
        spec.kind = MeasureKind::exp_alpha;
        spec.alpha = parse_number(arg, text);
        if (!(spec.alpha > 0.0)) throw Error(ErrorKind::UsageError, "exp_alpha needs alpha > 0");
    } else if (head == "uniform") {
        spec.kind = MeasureKind::uniform;
        auto comma = arg.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::UsageError, "uniform needs a,b");
        spec.a = parse_number(arg.substr(0, comma), text);
        spec.b = parse_number(arg.substr(comma + 1), text);
        if (!(spec.a < spec.b)) throw Error(ErrorKind::UsageError, "uniform needs a < b");
    } else if (head == "cusp") {
        spec.kind = MeasureKind::cusp;
        spec.alpha = parse_number(arg, text);
        if (!(spec.alpha > 0.0)) throw Error(ErrorKind::UsageError, "cusp needs alpha > 0");
    } else if (head == "potential-grid" && !arg.empty()) {
        spec.kind = MeasureKind::potential_grid;
        spec.file = arg;
    } else if (head == "density-grid" && !arg.empty()) {
        spec.kind = MeasureKind::density_grid;
        spec.file = arg;
    } else {
        throw Error(ErrorKind::UsageError, "unknown measure spec '" + text + "'");
    }
    return spec;
}

void read_xy_csv(const std::string& path, const std::string& header, std::vector<double>& x,
                 std::vector<double>& y) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::BadGrid, "cannot open grid file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::BadGrid, "empty grid file");
    line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
    if (line != header) {
        throw Error(ErrorKind::BadGrid, "grid header must be '" + header + "'");
    }
    x.clear();
    y.clear();
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::BadGrid, "bad grid row '" + line + "'");
        auto trim = [](std::string s) {
            s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
            return s;
        };
        try {
            x.push_back(std::stod(trim(line.substr(0, comma))));
            y.push_back(std::stod(trim(line.substr(comma + 1))));
        } catch (const std::exception&) {
            throw Error(ErrorKind::BadGrid, "bad grid row '" + line + "'");
        }
    }
    validate_grid(x, y);
}

Measure1D measure_from_potential_grid(const std::vector<double>& x, const std::vector<double>& psi,
                                      const std::string& name) {
    validate_grid(x, psi);
    return Measure1D(std::make_shared<GridPotentialModel>(x, psi, name));
}

Measure1D measure_from_density_grid(const std::vector<double>& x, const std::vector<double>& rho,
                                    const std::string& name) {
    validate_grid(x, rho);
    std::vector<double> psi(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!(rho[i] > 0.0)) throw Error(ErrorKind::BadGrid, "density grid values must be positive");
        psi[i] = -std::log(rho[i]);
    }
    return Measure1D(std::make_shared<GridPotentialModel>(x, psi, name));
}

Measure1D build(const MeasureSpec& spec) {
    switch (spec.kind) {
        case MeasureKind::gaussian: return Measure1D(std::make_shared<GaussianModel>());
        case MeasureKind::exponential: return Measure1D(std::make_shared<ExponentialModel>());
        case MeasureKind::exp_alpha: return Measure1D(std::make_shared<ExpAlphaModel>(spec.alpha));
        case MeasureKind::uniform: return Measure1D(std::make_shared<UniformModel>(spec.a, spec.b));
        case MeasureKind::cusp: return Measure1D(std::make_shared<CuspModel>(spec.alpha));
        case MeasureKind::potential_grid: {
            std::vector<double> x, v;
            read_xy_csv(spec.file, "x,value", x, v);
            return measure_from_potential_grid(x, v, spec.text);
        }
        case MeasureKind::density_grid: {
            std::vector<double> x, v;
            read_xy_csv(spec.file, "x,value", x, v);
            return measure_from_density_grid(x, v, spec.text);
        }
    }
    throw Error(ErrorKind::UsageError, "unhandled measure kind");
}

Measure1D build(const std::string& text) { return build(parse_measure_spec(text)); }

}  // namespace isx
