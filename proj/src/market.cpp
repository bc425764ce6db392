#include "stse/market.hpp"

#include <algorithm>
#include <cmath>

#include "stse/error.hpp"
#include "stse/rng.hpp"

namespace stse {

bool Bar::valid() const {
    const bool finite = std::isfinite(open) && std::isfinite(high) && std::isfinite(low) &&
                        std::isfinite(close) && std::isfinite(volume);
    return finite && volume >= 0.0 && low <= std::min(open, close) &&
           std::max(open, close) <= high;
}

PriceSeries::PriceSeries(std::vector<Bar> bars, std::string symbol, double tick_size)
    : bars_(std::move(bars)), symbol_(std::move(symbol)), tick_size_(tick_size) {
    if (!(tick_size_ > 0.0) || !std::isfinite(tick_size_))
        throw Error(ErrorCode::InvalidParams, "tick_size must be positive");
    for (std::size_t i = 0; i < bars_.size(); ++i) {
        if (!bars_[i].valid())
            throw Error(ErrorCode::InvalidParams, "bar violates low <= open, close <= high", i);
        if (i > 0 && !(bars_[i - 1].time < bars_[i].time))
            throw Error(ErrorCode::InvalidParams, "bar timestamps not strictly increasing", i);
    }
}

PriceSeries PriceSeries::slice(Timestamp from, Timestamp to) const {
    std::vector<Bar> kept;
    for (const auto& b : bars_) {
        if (b.time >= from && b.time <= to) kept.push_back(b);
    }
    return PriceSeries(std::move(kept), symbol_, tick_size_);
}

PriceSeries PriceSeries::prefix(std::size_t n) const {
    n = std::min(n, bars_.size());
    return PriceSeries(std::vector<Bar>(bars_.begin(), bars_.begin() + static_cast<long>(n)),
                       symbol_, tick_size_);
}

Bar synthetic_bar(Timestamp time, double open, double close, double intrabar_factor) {
    const double body = std::abs(close - open);
    const double top = std::max(open, close);
    const double bottom = std::min(open, close);
    Bar b;
    b.time = time;
    b.open = open;
    b.close = close;
    b.high = top + intrabar_factor * body;
    b.low = std::max(bottom - intrabar_factor * body, 0.5 * bottom);
    b.volume = 1'000'000.0;
    return b;
}

PriceSeries gbm_prices(std::uint64_t seed, const GbmParams& p) {
    if (p.n_bars < 2) throw Error(ErrorCode::InvalidParams, "n_bars must be >= 2");
    if (!(p.volatility >= 0.0) || !std::isfinite(p.volatility))
        throw Error(ErrorCode::InvalidParams, "volatility must be >= 0");
    if (!(p.start_price > 0.0)) throw Error(ErrorCode::InvalidParams, "start_price must be > 0");
    if (!std::isfinite(p.drift)) throw Error(ErrorCode::InvalidParams, "drift must be finite");
    if (!(p.intrabar_factor >= 0.0)) throw Error(ErrorCode::InvalidParams, "intrabar_factor < 0");

    Rng rng(seed);
    const double step_drift = p.drift - 0.5 * p.volatility * p.volatility;
    std::vector<Bar> bars;
    bars.reserve(p.n_bars);
    double prev = p.start_price;
    for (std::size_t i = 0; i < p.n_bars; ++i) {
        const double z = rng.normal();
        const double close = prev * std::exp(step_drift + p.volatility * z);
        bars.push_back(synthetic_bar(nth_business_day(kSyntheticStart, i), prev, close,
                                     p.intrabar_factor));
        prev = close;
    }
    return PriceSeries(std::move(bars), p.symbol, p.tick_size);
}

PriceSeries bootstrap_prices(std::uint64_t seed, std::span<const double> source,
                             std::size_t n_bars, double start_price, double tick_size,
                             std::string symbol, double intrabar_factor) {
    if (source.empty()) throw Error(ErrorCode::EmptySource, "bootstrap source is empty");
    if (n_bars < 2) throw Error(ErrorCode::InvalidParams, "n_bars must be >= 2");
    if (!(start_price > 0.0)) throw Error(ErrorCode::InvalidParams, "start_price must be > 0");

    for (double r : source) {
        if (!std::isfinite(r) || !(r > -1.0))
            throw Error(ErrorCode::InvalidParams, "bootstrap source return must be > -1");
    }
    Rng rng(seed);
    const auto values = source;
    std::vector<Bar> bars;
    bars.reserve(n_bars);
    double prev = start_price;
    for (std::size_t i = 0; i < n_bars; ++i) {
        const double r = values[rng.below(values.size())];
        const double close = prev * (1.0 + r);
        bars.push_back(synthetic_bar(nth_business_day(kSyntheticStart, i), prev, close,
                                     intrabar_factor));
        prev = close;
    }
    return PriceSeries(std::move(bars), std::move(symbol), tick_size);
}

} // namespace stse
