#pragma once

#include <stdexcept>
#include <string>

namespace isx {

enum class ErrorKind {
    NonConvergent,
    DivergentIntegral,
    NotBracketed,
    EmptyInterval,
    NonNormalizable,
    BadGrid,
    NotFinite,
    NotYoung,
    PredicateFails,
    NotConcave,
    NotSymmetric,
    NotVanishing,
    NotMonotone,
    IntegrabilityFails,
    AlphaTooSmall,
    QOutOfRange,
    InfiniteControlRate,
    UsageError,
};

const char* error_kind_name(ErrorKind kind);

// All library failures carry a kind so callers (CLI, tests) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace isx
