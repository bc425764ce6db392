// backtest.hpp
// Deterministic single-asset backtest engine.
//
// Event loop, per bar t:
//   1. the order decided at the close of bar t-1 fills at open[t];
//   2. stop-loss / take-profit are tested against bar t's range. A bar that
//      opens beyond a level fills at the open; when both levels lie inside the
//      range the stop wins (worst case);
//   3. equity is marked at close[t] and short positions pay borrow cost;
//   4. the strategy sees bars [0, t] and emits the order for bar t+1.
// Costs are taken out of cash at execution, so equity only changes through
// mark-to-market and realized costs.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stse/market.hpp"
#include "stse/metrics.hpp"
#include "stse/strategies.hpp"

namespace stse {

struct PositionSizing {
    enum class Mode { EquityFraction, FixedUnits };
    Mode mode = Mode::EquityFraction;
    double value = 1.0;   // notional / equity, or units of the asset
};

struct BacktestConfig {
    double initial_deposit = 100000.0;
    double fixed_cost = 0.0;                 // per execution, account currency
    double proportional_cost = 0.0002;       // per execution, fraction of traded notional
    double short_borrow_per_period = 0.0001; // per close, fraction of short notional
    double leverage = 100.0;                 // notional <= leverage * equity
    PositionSizing sizing;
    bool allow_negative_equity = false;
    ReturnMode return_mode = ReturnMode::Simple;
    double periodicity = 252.0;

    // Throws InvalidParams.
    void validate() const;
};

enum class ExitReason { Signal, Reverse, StopLoss, TakeProfit };

std::string_view to_string(ExitReason reason);

struct Trade {
    Side side = Side::Long;
    double units = 0.0;
    std::size_t entry_bar = 0;
    std::size_t exit_bar = 0;
    Timestamp entry_time{};
    Timestamp exit_time{};
    double entry_price = 0.0;
    double exit_price = 0.0;
    double pnl = 0.0;     // price P&L, before costs
    double costs = 0.0;   // entry + exit execution costs plus borrow
    ExitReason reason = ExitReason::Signal;

    double net() const { return pnl - costs; }
};

struct OpenPosition {
    Side side = Side::Long;
    double units = 0.0;
    std::size_t entry_bar = 0;
    Timestamp entry_time{};
    double entry_price = 0.0;
    double costs = 0.0;
    double unrealized = 0.0;   // at the final close
};

struct BacktestResult {
    std::string strategy;
    std::string symbol;
    EquityCurve equity;   // one point per bar close
    std::vector<Trade> trades;
    std::optional<OpenPosition> open_position;
    ReturnSeries returns;

    double initial_deposit = 0.0;
    double realized_pnl = 0.0;
    double unrealized_pnl = 0.0;
    double total_costs = 0.0;

    double final_equity() const { return equity.points().back().equity; }
};

// Throws WarmupTooLong when prices.size() <= strategy warm-up, InvalidParams
// for a bad config, InvalidStrategyParams via the strategy, and
// InsolventAccount (location = bar index) when equity reaches <= 0 without
// allow_negative_equity.
BacktestResult run_backtest(const StrategySpec& strategy, const PriceSeries& prices,
                            const BacktestConfig& config);

} // namespace stse
