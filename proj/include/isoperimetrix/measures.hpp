#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isoperimetrix/numerics.hpp"

namespace isx {

struct Support {
    double lo;
    double hi;
};

enum class CertificateStatus { verified, violated, unchecked };

struct LogConcavity {
    CertificateStatus status = CertificateStatus::unchecked;
    double witness = 0.0;  // location of the worst second difference when violated
};

// Backend for a one-dimensional probability measure with density exp(-psi).
class MeasureModel {
public:
    virtual ~MeasureModel() = default;
    virtual Support support() const = 0;
    // +inf off the closed support.
    virtual double psi(double x) const = 0;
    virtual double cdf(double x) const = 0;
    // 1 - F(x), computed without cancellation where possible.
    virtual double sf(double x) const { return 1.0 - cdf(x); }
    virtual double quantile(double u) const = 0;
    // Q(1-t) for small t, computed without forming 1-t where possible.
    virtual double quantile_upper(double t) const { return quantile(1.0 - t); }
    virtual std::string name() const = 0;
};

class Measure1D {
public:
    Measure1D() = default;
    // Runs the evenness and log-concavity checks.
    explicit Measure1D(std::shared_ptr<const MeasureModel> model);

    Support support() const { return model_->support(); }
    double psi(double x) const { return model_->psi(x); }
    // Zero off the closed support.
    double density(double x) const;
    double cdf(double x) const { return model_->cdf(x); }
    double sf(double x) const { return model_->sf(x); }
    double quantile(double u) const { return model_->quantile(u); }
    double quantile_upper(double t) const { return model_->quantile_upper(t); }
    // Density at the quantile, rho(Q(u)); the building block of half-line profiles.
    double quantile_density(double u) const;
    bool is_even() const { return even_; }
    const LogConcavity& log_concavity() const { return certificate_; }
    bool log_concave() const { return certificate_.status == CertificateStatus::verified; }
    const std::string& name() const { return name_; }

private:
    std::shared_ptr<const MeasureModel> model_;
    bool even_ = false;
    LogConcavity certificate_;
    std::string name_;
};

enum class MeasureKind { gaussian, exponential, exp_alpha, uniform, cusp, potential_grid, density_grid };

struct MeasureSpec {
    MeasureKind kind = MeasureKind::gaussian;
    double alpha = 1.0;
    double a = 0.0;
    double b = 1.0;
    std::string file;
    std::string text;  // the original spec string
};

MeasureSpec parse_measure_spec(const std::string& text);
Measure1D build(const MeasureSpec& spec);
Measure1D build(const std::string& text);

// Grid-specified measures. `values` are psi (potential) or the density itself.
Measure1D measure_from_potential_grid(const std::vector<double>& x, const std::vector<double>& psi,
                                      const std::string& name = "potential-grid");
Measure1D measure_from_density_grid(const std::vector<double>& x, const std::vector<double>& rho,
                                    const std::string& name = "density-grid");

// Reads a two-column CSV with header "x,value" (or the given header), >= 8 rows,
// strictly increasing first column.
void read_xy_csv(const std::string& path, const std::string& header, std::vector<double>& x,
                 std::vector<double>& y);

// F(b) - F(a) clamped to [0,1]; either limit may be infinite.
double mass(const Measure1D& m, double a, double b);
double median(const Measure1D& m);

// Second differences of psi on a quantile-spaced sample, tolerance -1e-6.
LogConcavity check_log_concavity(const MeasureModel& model);
bool check_even(const MeasureModel& model);

}  // namespace isx
