#include "isoperimetrix/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>

namespace isx {

std::string config_hash(const QuadratureConfig& cfg) {
    char text[256];
    std::snprintf(text, sizeof text, "rel_tol=%.17g;abs_tol=%.17g;max_subdivisions=%zu;tail_cutoff_mass=%.17g",
                  cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions, cfg.tail_cutoff_mass);
    std::uint64_t h = 14695981039346656037ull;
    for (const char* c = text; *c; ++c) {
        h ^= static_cast<unsigned char>(*c);
        h *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json ledger_to_json(const ConstantLedger& l) {
    Json j;
    j["instance"] = l.instance;
    j["seed"] = number(l.seed);
    j["lo"] = number(l.lo);
    j["hi"] = number(l.hi);
    j["factors"] = Json::array();
    for (const auto& f : l.factors)
        j["factors"].push_back(
            {{"label", f.label}, {"value", number(f.value)}, {"citation", f.citation}, {"empirical", f.empirical}});
    j["notes"] = l.notes;
    j["audit"] = ledger_audit(l);
    return j;
}

std::string render_report(const Report& r, const QuadratureConfig& cfg, bool timestamp) {
    Json j;
    j["schema"] = kReportSchema;
    j["version"] = kVersion;
    j["command"] = r.command;
    j["config"] = {{"rel_tol", cfg.rel_tol},
                   {"abs_tol", cfg.abs_tol},
                   {"max_subdivisions", cfg.max_subdivisions},
                   {"tail_cutoff_mass", cfg.tail_cutoff_mass}};
    j["config_hash"] = config_hash(cfg);
    if (timestamp) {
        std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    j["constants_ledger"] = r.ledgers;
    j["diagnostics"] = r.diagnostics;
    return j.dump(2) + "\n";
}

}  // namespace isx
