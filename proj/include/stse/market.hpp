// market.hpp
// OHLC bars, price series and synthetic price generators.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stse/metrics.hpp"
#include "stse/time.hpp"

namespace stse {

struct Bar {
    Timestamp time;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;

    bool valid() const;
};

class PriceSeries {
public:
    PriceSeries() = default;
    // Throws InvalidParams on tick_size <= 0, an invalid bar (location = index)
    // or non-increasing timestamps.
    PriceSeries(std::vector<Bar> bars, std::string symbol, double tick_size);

    std::span<const Bar> bars() const noexcept { return bars_; }
    const Bar& operator[](std::size_t i) const { return bars_[i]; }
    std::size_t size() const noexcept { return bars_.size(); }
    const std::string& symbol() const noexcept { return symbol_; }
    double tick_size() const noexcept { return tick_size_; }

    // Bars whose timestamps fall in [from, to].
    PriceSeries slice(Timestamp from, Timestamp to) const;
    // First n bars.
    PriceSeries prefix(std::size_t n) const;

private:
    std::vector<Bar> bars_;
    std::string symbol_;
    double tick_size_ = 1.0;
};

// First synthetic bar date (a Monday). Later bars follow on business days.
inline constexpr std::chrono::sys_days kSyntheticStart{std::chrono::year{2018} /
                                                       std::chrono::January / 1};

struct GbmParams {
    std::size_t n_bars = 252;
    double drift = 0.0;        // per bar
    double volatility = 0.01;  // per bar
    double start_price = 100.0;
    double tick_size = 0.01;
    // Synthetic intrabar range: high = max(o, c) + f |c - o|,
    // low = max(min(o, c) - f |c - o|, min(o, c) / 2).
    double intrabar_factor = 0.5;
    std::string symbol = "SYNTH";
};

// Geometric Brownian motion closes: c_t = c_{t-1} exp(drift - vol^2/2 + vol Z_t),
// bar 0 opens at start_price and every later bar opens at the previous close.
// Fully determined by seed. Throws InvalidParams.
PriceSeries gbm_prices(std::uint64_t seed, const GbmParams& params);

// I.i.d. resampling (with replacement) of `source` returns into closes.
// Throws EmptySource / InvalidParams.
PriceSeries bootstrap_prices(std::uint64_t seed, std::span<const double> source,
                             std::size_t n_bars, double start_price, double tick_size = 0.01,
                             std::string symbol = "BOOT", double intrabar_factor = 0.5);
inline PriceSeries bootstrap_prices(std::uint64_t seed, const ReturnSeries& source,
                                    std::size_t n_bars, double start_price,
                                    double tick_size = 0.01) {
    return bootstrap_prices(seed, source.values(), n_bars, start_price, tick_size);
}

// Bar from an open/close pair using the synthetic intrabar rule above.
Bar synthetic_bar(Timestamp time, double open, double close, double intrabar_factor);

} // namespace stse
