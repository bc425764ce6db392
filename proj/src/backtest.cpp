#include "stse/backtest.hpp"

#include <algorithm>
#include <cmath>

#include "stse/error.hpp"

namespace stse {

void BacktestConfig::validate() const {
    const auto bad = [](const char* what) { throw Error(ErrorCode::InvalidParams, what); };
    if (!(initial_deposit > 0.0) || !std::isfinite(initial_deposit))
        bad("initial_deposit must be positive");
    if (!(fixed_cost >= 0.0) || !(proportional_cost >= 0.0) || !(short_borrow_per_period >= 0.0))
        bad("costs must be >= 0");
    if (!(leverage >= 1.0)) bad("leverage must be >= 1");
    if (!(sizing.value > 0.0) || !std::isfinite(sizing.value)) bad("position size must be positive");
    if (!(periodicity > 0.0)) bad("periodicity must be positive");
}

std::string_view to_string(ExitReason reason) {
    switch (reason) {
    case ExitReason::Signal: return "signal";
    case ExitReason::Reverse: return "reverse";
    case ExitReason::StopLoss: return "stop_loss";
    case ExitReason::TakeProfit: return "take_profit";
    }
    return "signal";
}

namespace {

double direction(Side side) {
    return side == Side::Long ? 1.0 : side == Side::Short ? -1.0 : 0.0;
}

struct LivePosition {
    Side side = Side::Flat;
    double units = 0.0;
    std::size_t entry_bar = 0;
    Timestamp entry_time{};
    double entry_price = 0.0;
    double costs = 0.0;
    std::optional<double> stop;
    std::optional<double> target;
    std::size_t bars_held = 0;
};

struct PendingOrder {
    Order order;
    double equity = 0.0;   // equity at the decision close, used for sizing
};

class Engine {
public:
    Engine(const PriceSeries& prices, const BacktestConfig& config)
        : prices_(prices), config_(config), cash_(config.initial_deposit) {}

    void fill_pending(std::size_t t) {
        if (!pending_) return;
        const PendingOrder p = *pending_;
        pending_.reset();
        const Bar& bar = prices_[t];
        switch (p.order.action) {
        case Order::Action::Hold:
            return;
        case Order::Action::Exit:
            if (pos_) close(bar.open, t, ExitReason::Signal);
            return;
        case Order::Action::EnterLong:
        case Order::Action::EnterShort: {
            const Side want = p.order.action == Order::Action::EnterLong ? Side::Long : Side::Short;
            if (pos_ && pos_->side == want) return;
            if (pos_) close(bar.open, t, ExitReason::Reverse);
            open(want, bar.open, t, p);
            return;
        }
        }
    }

    void check_levels(std::size_t t) {
        if (!pos_) return;
        const Bar& bar = prices_[t];
        const auto& stop = pos_->stop;
        const auto& target = pos_->target;
        if (pos_->side == Side::Long) {
            if (stop && bar.open <= *stop) return close(bar.open, t, ExitReason::StopLoss);
            if (stop && bar.low <= *stop) return close(*stop, t, ExitReason::StopLoss);
            if (target && bar.open >= *target) return close(bar.open, t, ExitReason::TakeProfit);
            if (target && bar.high >= *target) return close(*target, t, ExitReason::TakeProfit);
        } else {
            if (stop && bar.open >= *stop) return close(bar.open, t, ExitReason::StopLoss);
            if (stop && bar.high >= *stop) return close(*stop, t, ExitReason::StopLoss);
            if (target && bar.open <= *target) return close(bar.open, t, ExitReason::TakeProfit);
            if (target && bar.low <= *target) return close(*target, t, ExitReason::TakeProfit);
        }
    }

    double mark(std::size_t t) {
        const double price = prices_[t].close;
        unrealized_ = 0.0;
        if (pos_) {
            if (pos_->side == Side::Short) {
                const double borrow = config_.short_borrow_per_period * pos_->units * price;
                charge(borrow);
                pos_->costs += borrow;
            }
            unrealized_ = direction(pos_->side) * pos_->units * (price - pos_->entry_price);
            ++pos_->bars_held;
        }
        return cash_ + unrealized_;
    }

    PositionView view() const {
        PositionView v;
        if (pos_) {
            v.side = pos_->side;
            v.units = pos_->units;
            v.entry_price = pos_->entry_price;
            v.bars_held = pos_->bars_held;
            v.stop = pos_->stop;
            v.target = pos_->target;
        }
        return v;
    }

    void accept(const Order& order, double equity) {
        if (order.trail_stop && pos_) {
            const double level = *order.trail_stop;
            auto& stop = pos_->stop;
            if (pos_->side == Side::Long && (!stop || level > *stop)) stop = level;
            if (pos_->side == Side::Short && (!stop || level < *stop)) stop = level;
        }
        if (order.action != Order::Action::Hold) pending_ = PendingOrder{order, equity};
    }

    std::size_t consecutive_losses() const { return losses_; }

    BacktestResult finish(std::string strategy, std::vector<EquityPoint> curve) {
        std::optional<OpenPosition> open_position;
        if (pos_) {
            open_position = OpenPosition{pos_->side,        pos_->units, pos_->entry_bar,
                                         pos_->entry_time,  pos_->entry_price,
                                         pos_->costs,       unrealized_};
        }
        EquityCurve equity(std::move(curve));
        std::string label = strategy + "@" + prices_.symbol();
        ReturnSeries returns =
            equity_to_returns(equity, config_.periodicity, config_.return_mode, label);
        return BacktestResult{std::move(strategy),
                              prices_.symbol(),
                              std::move(equity),
                              std::move(trades_),
                              open_position,
                              std::move(returns),
                              config_.initial_deposit,
                              realized_,
                              unrealized_,
                              total_costs_};
    }

private:
    double execution_cost(double units, double price) const {
        return config_.fixed_cost + config_.proportional_cost * units * price;
    }

    void charge(double amount) {
        cash_ -= amount;
        total_costs_ += amount;
    }

    void open(Side side, double price, std::size_t t, const PendingOrder& p) {
        const double equity = p.equity;
        if (!(equity > 0.0) || !(price > 0.0)) return;
        double units = 0.0;
        if (p.order.notional_fraction) {
            units = *p.order.notional_fraction * equity / price;
        } else if (config_.sizing.mode == PositionSizing::Mode::EquityFraction) {
            units = config_.sizing.value * equity / price;
        } else {
            units = config_.sizing.value;
        }
        units = std::min(units, config_.leverage * equity / price);
        if (!(units > 0.0)) return;

        LivePosition pos;
        pos.side = side;
        pos.units = units;
        pos.entry_bar = t;
        pos.entry_time = prices_[t].time;
        pos.entry_price = price;
        const double tick = prices_.tick_size();
        const double dir = direction(side);
        if (p.order.stop_loss_points) pos.stop = price - dir * *p.order.stop_loss_points * tick;
        if (p.order.take_profit_points) pos.target = price + dir * *p.order.take_profit_points * tick;
        const double cost = execution_cost(units, price);
        charge(cost);
        pos.costs = cost;
        pos_ = pos;
    }

    void close(double price, std::size_t t, ExitReason reason) {
        const LivePosition& pos = *pos_;
        const double cost = execution_cost(pos.units, price);
        const double pnl = direction(pos.side) * pos.units * (price - pos.entry_price);
        cash_ += pnl;
        realized_ += pnl;
        charge(cost);

        Trade trade;
        trade.side = pos.side;
        trade.units = pos.units;
        trade.entry_bar = pos.entry_bar;
        trade.exit_bar = t;
        trade.entry_time = pos.entry_time;
        trade.exit_time = prices_[t].time;
        trade.entry_price = pos.entry_price;
        trade.exit_price = price;
        trade.pnl = pnl;
        trade.costs = pos.costs + cost;
        trade.reason = reason;
        losses_ = trade.net() < 0.0 ? losses_ + 1 : 0;
        trades_.push_back(trade);
        pos_.reset();
    }

    const PriceSeries& prices_;
    const BacktestConfig& config_;
    double cash_;
    double realized_ = 0.0;
    double unrealized_ = 0.0;
    double total_costs_ = 0.0;
    std::size_t losses_ = 0;
    std::optional<LivePosition> pos_;
    std::optional<PendingOrder> pending_;
    std::vector<Trade> trades_;
};

} // namespace

BacktestResult run_backtest(const StrategySpec& spec, const PriceSeries& prices,
                            const BacktestConfig& config) {
    config.validate();
    auto strategy = make_strategy(spec);
    if (prices.size() <= strategy->warmup() || prices.size() < 2)
        throw Error(ErrorCode::WarmupTooLong,
                    "price series (" + std::to_string(prices.size()) +
                        " bars) is not longer than the strategy warm-up (" +
                        std::to_string(strategy->warmup()) + " bars)");

    Engine engine(prices, config);
    std::vector<EquityPoint> curve;
    curve.reserve(prices.size());
    const auto bars = prices.bars();

    for (std::size_t t = 0; t < prices.size(); ++t) {
        engine.fill_pending(t);
        engine.check_levels(t);
        const double equity = engine.mark(t);
        if (!(equity > 0.0) && !config.allow_negative_equity)
            throw Error(ErrorCode::InsolventAccount,
                        "equity reached " + std::to_string(equity) + " at " +
                            format_timestamp(bars[t].time),
                        t);
        curve.push_back({bars[t].time, equity});

        StrategyContext ctx;
        ctx.history = bars.first(t + 1);
        ctx.position = engine.view();
        ctx.equity = equity;
        ctx.consecutive_losses = engine.consecutive_losses();
        ctx.tick_size = prices.tick_size();
        engine.accept(strategy->on_bar(ctx), equity);
    }
    return engine.finish(std::string(strategy->name()), std::move(curve));
}

} // namespace stse
