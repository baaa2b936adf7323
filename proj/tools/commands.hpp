#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoperimetrix/numerics.hpp"

namespace isx::cli {

enum class Format { json, csv };

// A parsed command line. Optional fields are only set when the flag was given.
struct Command {
    std::string verb;
    std::string action;  // sub-verb, e.g. "os-to-iso"; the suite name for verify
    std::vector<std::string> argv;  // echoed into the report

    std::optional<std::string> measure;
    std::optional<std::string> orlicz;
    std::optional<std::string> profile_from;
    std::optional<std::string> suite;
    std::optional<std::string> p1, p2, p3;  // exponents; "inf" allowed
    std::optional<double> q, alpha, d, a, b, t;
    std::optional<int> grid;
    std::string direction = "to-iso";
    bool weak = false;
    bool oracle = false;

    std::string out;
    Format format = Format::json;
    bool timestamp = true;
    QuadratureConfig cfg;
};

// Exit status: 0 success, 1 computation error, 2 failed verification.
int run(const Command& cmd);

}  // namespace isx::cli
