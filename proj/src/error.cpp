#include "stse/error.hpp"

namespace stse {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonPositiveEquity: return "NonPositiveEquity";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NonPositiveVarianceTerm: return "NonPositiveVarianceTerm";
    case ErrorCode::ThresholdNotExceeded: return "ThresholdNotExceeded";
    case ErrorCode::InvalidTrialCount: return "InvalidTrialCount";
    case ErrorCode::InvalidExpectedMax: return "InvalidExpectedMax";
    case ErrorCode::TooFewTrials: return "TooFewTrials";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmbargoViolation: return "EmbargoViolation";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::InvalidStrategyParams: return "InvalidStrategyParams";
    case ErrorCode::UnknownStrategy: return "UnknownStrategy";
    case ErrorCode::WarmupTooLong: return "WarmupTooLong";
    case ErrorCode::InsolventAccount: return "InsolventAccount";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    }
    return "Unknown";
}

} // namespace stse
