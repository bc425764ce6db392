#include "stse/psr.hpp"

#include <cmath>
#include <numbers>

#include "stse/error.hpp"
#include "stse/normal.hpp"

namespace stse {

double sharpe_variance_term(double sr_hat, double skewness, double kurtosis) {
    return 1.0 - skewness * sr_hat + (kurtosis - 1.0) / 4.0 * sr_hat * sr_hat;
}

namespace {

double checked_variance_term(double sr_hat, double skewness, double kurtosis) {
    const double term = sharpe_variance_term(sr_hat, skewness, kurtosis);
    if (!(term > 0.0))
        throw Error(ErrorCode::NonPositiveVarianceTerm,
                    "skewness/kurtosis estimates give a non-positive Sharpe variance");
    return term;
}

} // namespace

double probabilistic_sharpe(double sr_hat, double sr_threshold, double skewness, double kurtosis,
                            double n) {
    if (!(n >= 2.0)) throw Error(ErrorCode::TooFewObservations, "PSR needs n >= 2");
    const double term = checked_variance_term(sr_hat, skewness, kurtosis);
    const double z = (sr_hat - sr_threshold) * std::sqrt(n - 1.0) / std::sqrt(term);
    return std_normal_cdf(z);
}

double min_track_record(double sr_hat, double sr_threshold, double skewness, double kurtosis,
                        double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw Error(ErrorCode::OutOfDomain, "confidence must lie in (0, 1)");
    if (!(sr_hat > sr_threshold))
        throw Error(ErrorCode::ThresholdNotExceeded,
                    "observed Sharpe ratio does not exceed the threshold");
    const double term = checked_variance_term(sr_hat, skewness, kurtosis);
    const double ratio = std_normal_quantile(confidence) / (sr_hat - sr_threshold);
    return 1.0 + term * ratio * ratio;
}

double psr(const MomentSummary& m, double sr_hat, double sr_threshold) {
    return probabilistic_sharpe(sr_hat, sr_threshold, m.skewness, m.kurtosis,
                                static_cast<double>(m.n));
}

SkillAssessment mtrl(const MomentSummary& m, double sr_hat, double sr_threshold, double confidence,
                     double periodicity, std::size_t floor) {
    if (!(periodicity > 0.0)) throw Error(ErrorCode::OutOfDomain, "periodicity must be positive");
    SkillAssessment a;
    a.sr_hat = sr_hat;
    a.sr_threshold = sr_threshold;
    a.confidence = confidence;
    a.n_observed = m.n;
    a.periodicity = periodicity;
    a.mtrl_observations = min_track_record(sr_hat, sr_threshold, m.skewness, m.kurtosis, confidence);
    a.psr = psr(m, sr_hat, sr_threshold);

    const double ceiled = std::ceil(a.mtrl_observations);
    // n* can be astronomically large for a hair-thin margin; saturate.
    constexpr double cap = 1e18;
    const auto raw = static_cast<std::size_t>(ceiled < cap ? ceiled : cap);
    a.mtrl_floored = raw < floor ? floor : raw;
    a.mtrl_years = static_cast<double>(a.mtrl_floored) / periodicity;
    return a;
}

TrialSelectionBound min_backtest_length(std::size_t n_trials, double expected_max_sharpe) {
    if (n_trials < 1) throw Error(ErrorCode::InvalidTrialCount, "need at least one trial");
    if (!(expected_max_sharpe > 0.0) || !std::isfinite(expected_max_sharpe))
        throw Error(ErrorCode::InvalidExpectedMax, "E[max_N] must be positive");
    TrialSelectionBound b;
    b.n_trials = n_trials;
    b.expected_max_sharpe = expected_max_sharpe;
    b.min_backtest_years =
        2.0 * std::log(static_cast<double>(n_trials)) / (expected_max_sharpe * expected_max_sharpe);
    return b;
}

double expected_max_sharpe(std::size_t n_trials) {
    if (n_trials < 2) throw Error(ErrorCode::TooFewTrials, "E[max_N] approximation needs N >= 2");
    constexpr double gamma = std::numbers::egamma;
    const double n = static_cast<double>(n_trials);
    return (1.0 - gamma) * std_normal_quantile(1.0 - 1.0 / n) +
           gamma * std_normal_quantile(1.0 - 1.0 / (n * std::numbers::e));
}

} // namespace stse
