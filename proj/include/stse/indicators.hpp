// indicators.hpp
// Streaming technical indicators. Each update() consumes one bar-close value
// and returns nullopt until the indicator has warmed up.

#pragma once

#include <cstddef>
#include <deque>
#include <optional>

namespace stse {

class Sma {
public:
    explicit Sma(std::size_t period);
    std::optional<double> update(double value);
    std::size_t period() const noexcept { return period_; }

private:
    std::size_t period_;
    std::deque<double> window_;
};

// Exponential moving average with alpha = 2 / (period + 1), seeded by the
// simple average of the first `period` values.
class Ema {
public:
    explicit Ema(std::size_t period);
    std::optional<double> update(double value);

private:
    std::size_t period_;
    double alpha_;
    Sma seed_;
    std::optional<double> value_;
};

// Simple moving average displaced forward by `shift` bars: the value at bar t
// is the SMA computed at bar t - shift.
class ShiftedSma {
public:
    ShiftedSma(std::size_t period, std::size_t shift);
    std::optional<double> update(double value);
    std::size_t warmup() const noexcept { return sma_.period() + shift_; }

private:
    Sma sma_;
    std::size_t shift_;
    std::deque<double> delayed_;
};

struct MacdValue {
    double macd = 0.0;     // EMA(fast) - EMA(slow)
    double signal = 0.0;   // EMA(signal) of macd
    double histogram() const { return macd - signal; }
};

class Macd {
public:
    Macd(std::size_t fast, std::size_t slow, std::size_t signal);
    std::optional<MacdValue> update(double close);
    std::size_t warmup() const noexcept { return slow_ + signal_ - 1; }

private:
    Ema fast_ema_, slow_ema_, signal_ema_;
    std::size_t slow_, signal_;
};

struct SarValue {
    double sar = 0.0;   // stop level for the next bar
    bool long_trend = true;
};

// Wilder's parabolic stop-and-reverse.
//   * bars 0 and 1 initialise: trend is long if close1 >= close0, the extreme
//     point (EP) is the best high/low of the two bars and the SAR starts at the
//     opposite extreme;
//   * each later bar first tests for a flip against the SAR in force. A flip
//     resets the SAR to the previous EP, the EP to the bar's extreme and the
//     acceleration factor (AF) to `step`;
//   * otherwise a new extreme raises AF by `step` up to `maximum`, and
//     SAR' = SAR + AF (EP - SAR), never inside the last two bars' range.
class ParabolicSar {
public:
    ParabolicSar(double step, double maximum);
    std::optional<SarValue> update(double high, double low, double close);

private:
    double step_, maximum_;
    std::size_t seen_ = 0;
    double prev_high_ = 0.0, prev_low_ = 0.0, prev_close_ = 0.0;
    bool long_ = true;
    double sar_ = 0.0, ep_ = 0.0, af_ = 0.0;
};

} // namespace stse
