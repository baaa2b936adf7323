#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isoperimetrix/numerics.hpp"

namespace isx {

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

// One verification suite: named checks plus the raw measurements they were
// decided from, so callers can apply thresholds of their own.
struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> checks;
    std::map<std::string, double> values;
    std::vector<std::string> log;

    bool pass() const;
};

// Restricts instance-parameterized suites (e.g. a single Maz'ya duality instance).
struct SuiteOptions {
    std::optional<std::string> measure;
    std::optional<std::string> orlicz;
    std::optional<double> a;
    std::optional<double> q;
    unsigned seed = 20240601;
    QuadratureConfig cfg;
};

// Suite names in their canonical order.
const std::vector<std::string>& suite_names();

// Throws UsageError for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

SuiteResult suite_exponential_anchors(const SuiteOptions& opts);
SuiteResult suite_gaussian_profile(const SuiteOptions& opts);
SuiteResult suite_mazya_duality(const SuiteOptions& opts);
SuiteResult suite_brackets(const SuiteOptions& opts);
SuiteResult suite_counterexample(const SuiteOptions& opts);
SuiteResult suite_consistency_loop(const SuiteOptions& opts);
SuiteResult suite_big_lemma(const SuiteOptions& opts);
SuiteResult suite_log_sobolev(const SuiteOptions& opts);
SuiteResult suite_tensorization(const SuiteOptions& opts);
SuiteResult suite_qls_uniformity(const SuiteOptions& opts);
SuiteResult suite_hierarchy_properties(const SuiteOptions& opts);

}  // namespace isx
