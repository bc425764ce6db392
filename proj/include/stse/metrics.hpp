// metrics.hpp
// Return series, equity curves, sample moments and the Sharpe ratio.
//
// Conventions used throughout the toolkit:
//   * returns are simple (arithmetic) per-period fractions, never log returns;
//   * std is the sample standard deviation (divide by n - 1);
//   * skewness and kurtosis use population central moments (divide by n), and
//     kurtosis is raw, so a Normal sample converges to 3;
//   * Sharpe ratios are computed at observation frequency. Annualisation is
//     for display only.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stse/time.hpp"

namespace stse {

class ReturnSeries {
public:
    // Throws InvalidSeries unless values is nonempty, every value is finite and
    // > -1, periodicity > 0, and timestamps (when given) match values in length
    // and are strictly increasing.
    ReturnSeries(std::vector<double> values, double periodicity, std::string label = {},
                 std::vector<Timestamp> timestamps = {});

    std::span<const double> values() const noexcept { return values_; }
    double periodicity() const noexcept { return periodicity_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t size() const noexcept { return values_.size(); }

    // Period-end timestamps; empty for series built from bare numbers.
    std::span<const Timestamp> timestamps() const noexcept { return timestamps_; }
    bool has_timestamps() const noexcept { return !timestamps_.empty(); }

    double years() const noexcept { return static_cast<double>(values_.size()) / periodicity_; }

    // Compounded return over the whole series, (prod(1 + r) - 1).
    double cumulative_return() const;

private:
    std::vector<double> values_;
    double periodicity_;
    std::string label_;
    std::vector<Timestamp> timestamps_;
};

struct EquityPoint {
    Timestamp time;
    double equity;
};

class EquityCurve {
public:
    EquityCurve() = default;
    // Throws InvalidSeries if timestamps are not strictly increasing.
    explicit EquityCurve(std::vector<EquityPoint> points);

    std::span<const EquityPoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

private:
    std::vector<EquityPoint> points_;
};

struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double stdev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

struct SharpeEstimate {
    double per_period = 0.0;
    double annualized = 0.0;
    double risk_free_per_period = 0.0;
};

enum class ReturnMode {
    // equity[i+1] / equity[i] - 1
    Simple,
    // (equity[i+1] - equity[i]) / equity[0]: P&L relative to the initial
    // deposit, defined even when the account goes through zero.
    PnlOnDeposit,
};

// Throws TooFewPoints for fewer than two points. In Simple mode a point with
// equity <= 0 throws NonPositiveEquity (location = point index); PnlOnDeposit
// only requires equity[0] > 0.
ReturnSeries equity_to_returns(const EquityCurve& curve, double periodicity,
                               ReturnMode mode = ReturnMode::Simple, std::string label = {});

// Throws TooFewObservations for n < 2 and ZeroVariance when every value is equal.
MomentSummary moments(std::span<const double> values);
inline MomentSummary moments(const ReturnSeries& series) { return moments(series.values()); }

// Throws ZeroVariance when stdev == 0.
SharpeEstimate sharpe(const MomentSummary& m, double periodicity, double risk_free_per_period = 0.0);
SharpeEstimate sharpe(const ReturnSeries& series, double risk_free_per_period = 0.0);

} // namespace stse
