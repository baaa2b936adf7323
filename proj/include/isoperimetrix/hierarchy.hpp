#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoperimetrix/capacity.hpp"
#include "isoperimetrix/measures.hpp"
#include "isoperimetrix/orlicz.hpp"
#include "isoperimetrix/profiles.hpp"

namespace isx {

struct Factor {
    std::string label;
    double value;
    std::string citation;
    bool empirical = false;  // evaluated on this instance rather than a fixed proof constant
};

// A best-constant estimate [lo, hi] obtained from `seed` by multiplying factors.
struct ConstantLedger {
    std::string instance;
    double seed = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Factor> factors;
    std::vector<std::string> notes;

    // Appends a factor and rescales lo (and hi when `both`).
    void apply(const Factor& f, bool both = true);
    double product() const;
};

// lo / product(factors) == seed within 1e-12 relative.
bool ledger_audit(const ConstantLedger& l);

struct TransferResult {
    std::optional<Profile> profile;
    std::optional<CapacityBound> capacity;
    ConstantLedger ledger;
    std::vector<std::string> diagnostics;
};

// Orlicz-Sobolev constant D for (N, q), median form, to a lower bound on tilde I.
TransferResult os_to_iso(const OrliczFunction& n, double q, double d, const QuadratureConfig& cfg = {});

// inf over 0 < t < 1/2 of t^{1/r-1/p} / (integral over [t,inf) of N^(t)^r / (s^{r/p} N^(s)^r))^{1/r}.
ScanResult cnq_infimum(const OrliczFunction& n, double q, const QuadratureConfig& cfg = {});

struct IsoToOs {
    ConstantLedger ledger;  // lo = B D / 4 is the Orlicz-Sobolev constant
    double profile_constant;  // D = inf tilde(t) / (t^{1/p} N^(t))
    double b_infimum;         // inf of the (B-estimate) expression before the 1/4
};

IsoToOs iso_to_os(const Profile& p, const OrliczFunction& n, double q, const QuadratureConfig& cfg = {});

struct Transformed {
    OrliczFunction n2;
    TriState is_young;
    TriState ratio_nondecreasing;  // N2(t)^{1/p3}/t
    std::size_t young_violations;
    std::size_t ratio_violations;
    std::size_t nodes;
    double head_exponent;
    double tail_exponent;
};

// N2 with N2^(t) = (integral over [t,inf) of s^{-p2/p1} N1^(s)^{-p2} ds)^{-1/p2}.
Transformed transform_N2(const OrliczFunction& n1, double p1, double p2, double p3,
                         const QuadratureConfig& cfg = {});

struct CapToOs {
    ConstantLedger ledger;  // [D2/4, D2]
    double d2;
};
CapToOs cap_to_os(const CapacityBound& bound, const OrliczFunction& n, bool weak);
CapacityBound os_to_cap(const OrliczFunction& n, double q, double d, bool weak);

enum class QlsDirection { to_iso, from_iso };

struct QlsResult {
    TransferResult transfer;
    double cnq_inf = 0.0;          // (CNq) for the truncated phi_q
    double wedge_ratio_lo = 0.0;   // phi_q^(t) / (t log(1+1/t))^{1/q} on (0,1/2]
    double wedge_ratio_hi = 0.0;
    double shape_constant = 0.0;   // inf of bound(t) / (t log^{1/q}(1/t)) on (0,1/2)
};

// to_iso takes the expectation-form phi_q Orlicz-Sobolev constant; from_iso takes
// the constant c in tilde I(t) >= c t log^{1/q}(1/t).
QlsResult qls_bridge(double q, double d, QlsDirection dir, const QuadratureConfig& cfg = {});

struct ClosedForm {
    double c;
    double b;
};
ClosedForm closed_form_constants(double alpha, double q);

struct PoincareBracket {
    ConstantLedger ledger;  // lo, hi bracket for D_Poin
    double b_plus;
    double b_minus;
};
PoincareBracket poincare_bracket(const Measure1D& m, const QuadratureConfig& cfg = {});

struct LogSobolevSweep {
    double upper;       // smallest ratio ||f'||_2 / Ent(f^2)^{1/2} found
    std::string best;   // which test function attained it
    int tested;
};
// Upper bound on D_LS2 from exponential tilts and smoothed indicators.
LogSobolevSweep log_sobolev_sweep(const Measure1D& m);

std::string ledger_json(const ConstantLedger& l);

}  // namespace isx
