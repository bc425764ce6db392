#include "stse/indicators.hpp"

#include <algorithm>

#include "stse/error.hpp"

namespace stse {

Sma::Sma(std::size_t period) : period_(period) {
    if (period_ < 1) throw Error(ErrorCode::InvalidStrategyParams, "SMA period must be >= 1");
}

std::optional<double> Sma::update(double value) {
    window_.push_back(value);
    if (window_.size() > period_) window_.pop_front();
    if (window_.size() < period_) return std::nullopt;
    double sum = 0.0;
    for (double v : window_) sum += v;
    return sum / static_cast<double>(period_);
}

Ema::Ema(std::size_t period)
    : period_(period), alpha_(2.0 / (static_cast<double>(period) + 1.0)), seed_(period) {}

std::optional<double> Ema::update(double value) {
    if (!value_) {
        value_ = seed_.update(value);
        return value_;
    }
    value_ = *value_ + alpha_ * (value - *value_);
    return value_;
}

ShiftedSma::ShiftedSma(std::size_t period, std::size_t shift) : sma_(period), shift_(shift) {}

std::optional<double> ShiftedSma::update(double value) {
    const auto current = sma_.update(value);
    if (!current) return std::nullopt;
    delayed_.push_back(*current);
    if (delayed_.size() <= shift_) return std::nullopt;
    const double out = delayed_.front();
    delayed_.pop_front();
    return out;
}

Macd::Macd(std::size_t fast, std::size_t slow, std::size_t signal)
    : fast_ema_(fast), slow_ema_(slow), signal_ema_(signal), slow_(slow), signal_(signal) {
    if (fast >= slow)
        throw Error(ErrorCode::InvalidStrategyParams, "MACD fast period must be below slow period");
}

std::optional<MacdValue> Macd::update(double close) {
    const auto fast = fast_ema_.update(close);
    const auto slow = slow_ema_.update(close);
    if (!fast || !slow) return std::nullopt;
    const double line = *fast - *slow;
    const auto signal = signal_ema_.update(line);
    if (!signal) return std::nullopt;
    return MacdValue{line, *signal};
}

ParabolicSar::ParabolicSar(double step, double maximum) : step_(step), maximum_(maximum) {
    if (!(step > 0.0) || !(step <= maximum))
        throw Error(ErrorCode::InvalidStrategyParams, "SAR requires 0 < step <= maximum");
}

std::optional<SarValue> ParabolicSar::update(double high, double low, double close) {
    ++seen_;
    if (seen_ == 1) {
        prev_high_ = high;
        prev_low_ = low;
        prev_close_ = close;
        return std::nullopt;
    }
    if (seen_ == 2) {
        long_ = close >= prev_close_;
        ep_ = long_ ? std::max(high, prev_high_) : std::min(low, prev_low_);
        sar_ = long_ ? std::min(low, prev_low_) : std::max(high, prev_high_);
        af_ = step_;
    } else if (long_) {
        if (low <= sar_) {
            long_ = false;
            sar_ = std::max({ep_, high, prev_high_});
            ep_ = low;
            af_ = step_;
        } else {
            if (high > ep_) {
                ep_ = high;
                af_ = std::min(af_ + step_, maximum_);
            }
            sar_ = std::min({sar_ + af_ * (ep_ - sar_), low, prev_low_});
        }
    } else {
        if (high >= sar_) {
            long_ = true;
            sar_ = std::min({ep_, low, prev_low_});
            ep_ = high;
            af_ = step_;
        } else {
            if (low < ep_) {
                ep_ = low;
                af_ = std::min(af_ + step_, maximum_);
            }
            sar_ = std::max({sar_ + af_ * (ep_ - sar_), high, prev_high_});
        }
    }
    prev_high_ = high;
    prev_low_ = low;
    prev_close_ = close;
    return SarValue{sar_, long_};
}

} // namespace stse
