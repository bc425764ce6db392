// error.hpp
// Error type shared by every stse module.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stse {

enum class ErrorCode {
    // metrics
    InvalidSeries,
    TooFewPoints,
    NonPositiveEquity,
    TooFewObservations,
    ZeroVariance,
    // psr engine
    OutOfDomain,
    NonPositiveVarianceTerm,
    ThresholdNotExceeded,
    InvalidTrialCount,
    InvalidExpectedMax,
    TooFewTrials,
    // evaluator
    InvalidConfig,
    EmbargoViolation,
    // harness
    InvalidParams,
    EmptySource,
    InvalidStrategyParams,
    UnknownStrategy,
    WarmupTooLong,
    InsolventAccount,
    // io
    FileNotFound,
    MalformedHeader,
    MalformedRow,
    NonMonotonicTimestamps,
    MalformedConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> location = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code), location_(location) {}

    ErrorCode code() const noexcept { return code_; }

    // Line number for file errors, element/bar index for series errors.
    std::optional<std::size_t> location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> location_;
};

} // namespace stse
