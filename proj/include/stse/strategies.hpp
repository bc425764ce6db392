// strategies.hpp
// Reference trading strategies. A strategy sees bars up to and including the
// current close and answers with an order that the engine fills at the next
// bar's open.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "stse/indicators.hpp"
#include "stse/market.hpp"
#include "stse/rng.hpp"

namespace stse {

enum class Side { Flat, Long, Short };

std::string_view to_string(Side side);

struct PositionView {
    Side side = Side::Flat;
    double units = 0.0;
    double entry_price = 0.0;
    std::size_t bars_held = 0;   // closes seen since the fill, fill bar included
    std::optional<double> stop;
    std::optional<double> target;
};

struct StrategyContext {
    std::span<const Bar> history;   // bars [0, t]; history.back() is the bar just closed
    PositionView position;
    double equity = 0.0;
    std::size_t consecutive_losses = 0;
    double tick_size = 1.0;
};

struct Order {
    enum class Action { Hold, EnterLong, EnterShort, Exit };
    Action action = Action::Hold;
    // Distances in points (tick_size units) from the fill price.
    std::optional<double> stop_loss_points;
    std::optional<double> take_profit_points;
    // New absolute stop for the open position; the engine only ever tightens.
    std::optional<double> trail_stop;
    // Position notional as a fraction of equity, overriding the config rule.
    std::optional<double> notional_fraction;
};

class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string_view name() const = 0;
    // Bars that must be seen before the first signal can fire.
    virtual std::size_t warmup() const = 0;
    // Called once per bar, in order, for every bar of the run.
    virtual Order on_bar(const StrategyContext& ctx) = 0;
};

// Working values follow the expert parameter sets of the reference study.
struct MacdParams {
    std::size_t period_fast = 12;
    std::size_t period_slow = 24;
    std::size_t period_signal = 9;
    double take_profit_points = 50;
    double stop_loss_points = 20;
};

struct MaCrossoverParams {
    std::size_t ma_period = 12;
    std::size_t ma_shift = 6;
    std::size_t trailing_ma_period = 12;
    std::size_t trailing_ma_shift = 0;
};

struct MaSarParams {
    std::size_t ma_period = 12;
    std::size_t ma_shift = 6;
    double sar_step = 0.02;
    double sar_maximum = 0.2;
};

struct MaSarSizedParams {
    std::size_t ma_period = 15;
    std::size_t ma_shift = 4;
    double sar_step = 0.02;
    double sar_maximum = 0.2;
    double percent = 10.0;          // position notional, % of equity
    double decrease_factor = 3.0;   // size cut after consecutive losses
};

struct RandomTraderParams {
    std::uint64_t seed = 1;
    std::size_t holding_period = 5;
};

using StrategySpec =
    std::variant<MacdParams, MaCrossoverParams, MaSarParams, MaSarSizedParams, RandomTraderParams>;

// "macd", "mama", "maps", "maps2", "random"
std::string_view strategy_name(const StrategySpec& spec);
// Default parameters for a strategy name; throws UnknownStrategy.
StrategySpec default_spec(std::string_view name);

// Throws InvalidStrategyParams.
void validate(const StrategySpec& spec);

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec);

// Fraction of `percent` of equity that MAPS2 trades after `losses` consecutive
// losing trades: percent/100 * (1 - losses / decrease_factor) once losses > 1,
// never below 1% of the base size.
double sized_fraction(const MaSarSizedParams& p, std::size_t losses);

} // namespace stse
