#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "isoperimetrix/hierarchy.hpp"
#include "isoperimetrix/numerics.hpp"

namespace isx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "report/v1";
inline constexpr const char* kVersion = "0.1.0";

// FNV-1a (64 bit) of the canonical text form of the quadrature settings.
std::string config_hash(const QuadratureConfig& cfg);

// Non-finite values become the strings "inf", "-inf" or "nan".
Json number(double v);

Json ledger_to_json(const ConstantLedger& l);

struct Report {
    std::vector<std::string> command;
    Json inputs = Json::object();
    Json result = Json::object();
    Json ledgers = Json::array();
    Json diagnostics = Json::array();
};

// Keys in fixed order; "generated_at" only when `timestamp` is set.
std::string render_report(const Report& r, const QuadratureConfig& cfg, bool timestamp);

}  // namespace isx
