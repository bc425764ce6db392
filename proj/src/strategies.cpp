#include "stse/strategies.hpp"

#include <cmath>

#include "stse/error.hpp"

namespace stse {

std::string_view to_string(Side side) {
    switch (side) {
    case Side::Flat: return "flat";
    case Side::Long: return "long";
    case Side::Short: return "short";
    }
    return "flat";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

Order::Action entry_for(int direction) {
    return direction > 0 ? Order::Action::EnterLong : Order::Action::EnterShort;
}

Side side_for(int direction) { return direction > 0 ? Side::Long : Side::Short; }

// Tracks which side of a moving average the close sits on and reports a
// change of side. The state before the first defined value counts as
// "no side", so the first strict side is a crossing.
class CrossTracker {
public:
    int update(double close, double ma) {
        const int now = sign_of(close - ma);
        const int crossed = (now != 0 && now != last_) ? now : 0;
        if (now != 0) last_ = now;
        return crossed;
    }

private:
    int last_ = 0;
};

class MacdStrategy final : public Strategy {
public:
    explicit MacdStrategy(const MacdParams& p)
        : p_(p), macd_(p.period_fast, p.period_slow, p.period_signal) {}

    std::string_view name() const override { return "macd"; }
    std::size_t warmup() const override { return macd_.warmup(); }

    Order on_bar(const StrategyContext& ctx) override {
        Order order;
        const auto value = macd_.update(ctx.history.back().close);
        if (!value) return order;
        const int now = sign_of(value->histogram());
        // First defined value crosses from zero.
        if (now != 0 && now != last_) {
            if (ctx.position.side != side_for(now)) {
                order.action = entry_for(now);
                order.stop_loss_points = p_.stop_loss_points;
                order.take_profit_points = p_.take_profit_points;
            }
            last_ = now;
        }
        return order;
    }

private:
    MacdParams p_;
    Macd macd_;
    int last_ = 0;
};

class MaCrossoverStrategy final : public Strategy {
public:
    explicit MaCrossoverStrategy(const MaCrossoverParams& p)
        : p_(p), signal_(p.ma_period, p.ma_shift), trail_(p.trailing_ma_period, p.trailing_ma_shift) {}

    std::string_view name() const override { return "mama"; }
    std::size_t warmup() const override { return signal_.warmup(); }

    Order on_bar(const StrategyContext& ctx) override {
        Order order;
        const double close = ctx.history.back().close;
        const auto ma = signal_.update(close);
        const auto trail = trail_.update(close);
        if (ma) {
            const int crossed = cross_.update(close, *ma);
            if (crossed != 0 && ctx.position.side != side_for(crossed)) {
                order.action = entry_for(crossed);
                return order;
            }
        }
        if (trail) {
            if (ctx.position.side == Side::Long && *trail < close) order.trail_stop = *trail;
            if (ctx.position.side == Side::Short && *trail > close) order.trail_stop = *trail;
        }
        return order;
    }

private:
    MaCrossoverParams p_;
    ShiftedSma signal_;
    ShiftedSma trail_;
    CrossTracker cross_;
};

class MaSarStrategy : public Strategy {
public:
    MaSarStrategy(std::size_t period, std::size_t shift, double step, double maximum)
        : signal_(period, shift), sar_(step, maximum) {}

    std::string_view name() const override { return "maps"; }
    std::size_t warmup() const override { return std::max<std::size_t>(signal_.warmup(), 2); }

    Order on_bar(const StrategyContext& ctx) override {
        Order order;
        const Bar& bar = ctx.history.back();
        const auto ma = signal_.update(bar.close);
        const auto sar = sar_.update(bar.high, bar.low, bar.close);
        if (ma) {
            const int crossed = cross_.update(bar.close, *ma);
            if (crossed != 0 && ctx.position.side != side_for(crossed)) {
                order.action = entry_for(crossed);
                size(order, ctx);
                return order;
            }
        }
        if (sar) {
            if (ctx.position.side == Side::Long && sar->sar < bar.close) order.trail_stop = sar->sar;
            if (ctx.position.side == Side::Short && sar->sar > bar.close) order.trail_stop = sar->sar;
        }
        return order;
    }

protected:
    virtual void size(Order&, const StrategyContext&) const {}

private:
    ShiftedSma signal_;
    ParabolicSar sar_;
    CrossTracker cross_;
};

class MaSarSizedStrategy final : public MaSarStrategy {
public:
    explicit MaSarSizedStrategy(const MaSarSizedParams& p)
        : MaSarStrategy(p.ma_period, p.ma_shift, p.sar_step, p.sar_maximum), p_(p) {}

    std::string_view name() const override { return "maps2"; }

protected:
    void size(Order& order, const StrategyContext& ctx) const override {
        order.notional_fraction = sized_fraction(p_, ctx.consecutive_losses);
    }

private:
    MaSarSizedParams p_;
};

class RandomTrader final : public Strategy {
public:
    explicit RandomTrader(const RandomTraderParams& p) : p_(p), rng_(p.seed) {}

    std::string_view name() const override { return "random"; }
    std::size_t warmup() const override { return 1; }

    Order on_bar(const StrategyContext& ctx) override {
        Order order;
        if (ctx.position.side == Side::Flat) {
            order.action = rng_.coin() ? Order::Action::EnterLong : Order::Action::EnterShort;
        } else if (ctx.position.bars_held >= p_.holding_period) {
            order.action = Order::Action::Exit;
        }
        return order;
    }

private:
    RandomTraderParams p_;
    Rng rng_;
};

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidStrategyParams, what);
}

void check_sar(double step, double maximum) {
    require(step > 0.0 && step <= maximum && std::isfinite(maximum),
            "SAR requires 0 < step <= maximum");
}

} // namespace

std::string_view strategy_name(const StrategySpec& spec) {
    return std::visit(Overloaded{
                          [](const MacdParams&) { return std::string_view{"macd"}; },
                          [](const MaCrossoverParams&) { return std::string_view{"mama"}; },
                          [](const MaSarParams&) { return std::string_view{"maps"}; },
                          [](const MaSarSizedParams&) { return std::string_view{"maps2"}; },
                          [](const RandomTraderParams&) { return std::string_view{"random"}; },
                      },
                      spec);
}

StrategySpec default_spec(std::string_view name) {
    if (name == "macd") return MacdParams{};
    if (name == "mama") return MaCrossoverParams{};
    if (name == "maps") return MaSarParams{};
    if (name == "maps2") return MaSarSizedParams{};
    if (name == "random") return RandomTraderParams{};
    throw Error(ErrorCode::UnknownStrategy, "unknown strategy '" + std::string(name) + "'");
}

void validate(const StrategySpec& spec) {
    std::visit(Overloaded{
                   [](const MacdParams& p) {
                       require(p.period_fast >= 1 && p.period_slow >= 1 && p.period_signal >= 1,
                               "MACD periods must be >= 1");
                       require(p.period_fast < p.period_slow, "MACD fast period must be below slow");
                       require(p.take_profit_points > 0 && p.stop_loss_points > 0,
                               "MACD take-profit and stop-loss must be positive");
                   },
                   [](const MaCrossoverParams& p) {
                       require(p.ma_period >= 1 && p.trailing_ma_period >= 1,
                               "MA periods must be >= 1");
                   },
                   [](const MaSarParams& p) {
                       require(p.ma_period >= 1, "MA period must be >= 1");
                       check_sar(p.sar_step, p.sar_maximum);
                   },
                   [](const MaSarSizedParams& p) {
                       require(p.ma_period >= 1, "MA period must be >= 1");
                       check_sar(p.sar_step, p.sar_maximum);
                       require(p.percent > 0 && p.percent <= 100, "percent must lie in (0, 100]");
                       require(p.decrease_factor >= 0, "decrease factor must be >= 0");
                   },
                   [](const RandomTraderParams& p) {
                       require(p.holding_period >= 1, "holding period must be >= 1");
                   },
               },
               spec);
}

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec) {
    validate(spec);
    return std::visit(
        Overloaded{
            [](const MacdParams& p) -> std::unique_ptr<Strategy> {
                return std::make_unique<MacdStrategy>(p);
            },
            [](const MaCrossoverParams& p) -> std::unique_ptr<Strategy> {
                return std::make_unique<MaCrossoverStrategy>(p);
            },
            [](const MaSarParams& p) -> std::unique_ptr<Strategy> {
                return std::make_unique<MaSarStrategy>(p.ma_period, p.ma_shift, p.sar_step,
                                                       p.sar_maximum);
            },
            [](const MaSarSizedParams& p) -> std::unique_ptr<Strategy> {
                return std::make_unique<MaSarSizedStrategy>(p);
            },
            [](const RandomTraderParams& p) -> std::unique_ptr<Strategy> {
                return std::make_unique<RandomTrader>(p);
            },
        },
        spec);
}

double sized_fraction(const MaSarSizedParams& p, std::size_t losses) {
    const double base = p.percent / 100.0;
    double scale = 1.0;
    if (p.decrease_factor > 0.0 && losses > 1)
        scale = 1.0 - static_cast<double>(losses) / p.decrease_factor;
    return base * std::max(scale, 0.01);
}

} // namespace stse
