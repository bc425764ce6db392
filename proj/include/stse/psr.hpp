// psr.hpp
// Probabilistic Sharpe Ratio, minimum track record length and minimum
// backtest length under multiple trials.
//
// Every Sharpe ratio here is per period (observation frequency). Thresholds
// must be expressed at the same frequency as the returns they are compared to.

#pragma once

#include <cstddef>
#include <optional>

#include "stse/metrics.hpp"

namespace stse {

inline constexpr std::size_t kMinTrackRecordFloor = 30;

// 1 - skew * SR + (kurt - 1) / 4 * SR^2, the non-normality correction of the
// Sharpe ratio's sampling variance.
double sharpe_variance_term(double sr_hat, double skewness, double kurtosis);

// Prob[SR > SR*] for a track record of `n` observations. `n` is real-valued so
// the mTRL duality can be checked at fractional n*. Throws
// NonPositiveVarianceTerm when the correction term is <= 0.
double probabilistic_sharpe(double sr_hat, double sr_threshold, double skewness, double kurtosis,
                            double n);

// Raw n* = 1 + term * (Z_alpha / (SR - SR*))^2. Throws ThresholdNotExceeded when
// sr_hat <= sr_threshold, OutOfDomain unless 0 < confidence < 1, and
// NonPositiveVarianceTerm as above.
double min_track_record(double sr_hat, double sr_threshold, double skewness, double kurtosis,
                        double confidence);

struct SkillAssessment {
    double sr_hat = 0.0;
    double sr_threshold = 0.0;
    double confidence = 0.0;
    double psr = 0.0;
    double mtrl_observations = 0.0;   // raw n*, possibly fractional
    std::size_t mtrl_floored = 0;     // max(ceil(n*), floor)
    double mtrl_years = 0.0;          // mtrl_floored / periodicity
    std::size_t n_observed = 0;
    double periodicity = 0.0;

    double observed_years() const { return static_cast<double>(n_observed) / periodicity; }
    bool passed() const { return psr >= confidence && n_observed >= mtrl_floored; }
};

// PSR using the sample size and higher moments in `m`.
double psr(const MomentSummary& m, double sr_hat, double sr_threshold);

// Full assessment at one threshold. Errors as for min_track_record.
SkillAssessment mtrl(const MomentSummary& m, double sr_hat, double sr_threshold, double confidence,
                     double periodicity, std::size_t floor = kMinTrackRecordFloor);

struct TrialSelectionBound {
    std::size_t n_trials = 1;
    double expected_max_sharpe = 0.0;
    double min_backtest_years = 0.0;
};

// MinBTL = 2 ln(N) / E[max_N]^2 years. Throws InvalidTrialCount for N < 1 and
// InvalidExpectedMax for E[max_N] <= 0.
TrialSelectionBound min_backtest_length(std::size_t n_trials, double expected_max_sharpe);

// Extension, not part of the MinBTL bound itself: the extreme-value
// approximation of E[max] over N independent standard normal Sharpe ratios,
//   (1 - g) * Phi^-1(1 - 1/N) + g * Phi^-1(1 - 1/(N e)),  g = Euler-Mascheroni,
// for callers without an external estimate. Throws TooFewTrials for N < 2.
double expected_max_sharpe(std::size_t n_trials);

} // namespace stse
