#include <array>
#include <catch_amalgamated.hpp>

#include <cmath>

#include "stse/backtest.hpp"
#include "stse/error.hpp"
#include "stse/rng.hpp"

using namespace stse;

namespace {

PriceSeries bars_from(std::vector<std::array<double, 4>> ohlc, double tick = 0.01) {
    std::vector<Bar> bars;
    for (std::size_t i = 0; i < ohlc.size(); ++i) {
        auto [o, h, l, c] = ohlc[i];
        bars.push_back({nth_business_day(kSyntheticStart, i), o, h, l, c, 1.0});
    }
    return PriceSeries(std::move(bars), "T", tick);
}

void check_accounting(const BacktestResult& r) {
    const double rhs = r.initial_deposit + r.realized_pnl + r.unrealized_pnl - r.total_costs;
    CHECK(std::abs(r.final_equity() - rhs) <= 1e-9 * std::abs(r.final_equity()));
    double trade_costs = 0, trade_pnl = 0;
    for (const auto& t : r.trades) {
        trade_costs += t.costs;
        trade_pnl += t.pnl;
    }
    if (r.open_position) trade_costs += r.open_position->costs;
    CHECK(trade_costs == Catch::Approx(r.total_costs).epsilon(1e-9));
    CHECK(trade_pnl == Catch::Approx(r.realized_pnl).epsilon(1e-9).margin(1e-9));
}

StrategySpec random_spec(std::uint64_t seed) {
    RandomTraderParams p;
    p.seed = seed;
    return p;
}

} // namespace

TEST_CASE("orders fill at the next open") {
    // random trader decides on bar 0 and fills at bar 1's open
    const auto prices = bars_from({{10, 10, 10, 10}, {11, 12, 10.5, 11.5}, {11.5, 12, 11, 12},
                                   {12, 13, 11.5, 12.5}, {12.5, 13, 12, 13}, {13, 13, 12, 12},
                                   {12, 13, 11, 12.5}, {12.5, 13, 12, 12.5}, {12.5, 13, 12, 12.5}});
    BacktestConfig cfg;
    cfg.proportional_cost = 0;
    cfg.short_borrow_per_period = 0;
    const auto r = run_backtest(random_spec(3), prices, cfg);
    REQUIRE(!r.trades.empty());
    CHECK(r.trades[0].entry_bar == 1);
    CHECK(r.trades[0].entry_price == 11.0);
    CHECK(r.equity.points()[0].equity == cfg.initial_deposit);
    check_accounting(r);
}

TEST_CASE("stop-loss wins when both levels lie inside one bar") {
    std::vector<std::array<double, 4>> ohlc;
    double p = 100.0;
    for (int i = 0; i < 32; ++i) {
        const double next = p * 1.001;
        ohlc.push_back({p, next, p, next});
        p = next;
    }
    // MACD goes long at bar 32's open; that bar spans both the 20-tick stop
    // and the 50-tick target.
    ohlc.push_back({p, p + 5.0, p - 5.0, p});
    for (int i = 0; i < 3; ++i) ohlc.push_back({p, p, p, p});
    BacktestConfig cfg;
    cfg.proportional_cost = 0;
    const auto r = run_backtest(MacdParams{}, bars_from(ohlc), cfg);
    REQUIRE(!r.trades.empty());
    CHECK(r.trades[0].entry_bar == 32);
    CHECK(r.trades[0].exit_bar == 32);
    CHECK(r.trades[0].reason == ExitReason::StopLoss);
    CHECK(r.trades[0].exit_price == Catch::Approx(p - 0.20).epsilon(1e-14));
}

TEST_CASE("gaps through the stop fill at the open") {
    std::vector<std::array<double, 4>> ohlc;
    double p = 100.0;
    for (int i = 0; i < 33; ++i) {
        const double next = p * 1.001;
        ohlc.push_back({p, next, p, next});
        p = next;
    }
    ohlc.push_back({p - 3.0, p - 2.5, p - 3.5, p - 3.0});
    ohlc.push_back({p - 3.0, p - 2.5, p - 3.5, p - 3.0});
    BacktestConfig cfg;
    cfg.proportional_cost = 0;
    MacdParams m;
    m.take_profit_points = 100000;
    const auto r = run_backtest(m, bars_from(ohlc), cfg);
    REQUIRE(!r.trades.empty());
    CHECK(r.trades[0].entry_bar == 32);
    CHECK(r.trades[0].exit_bar == 33);
    CHECK(r.trades[0].reason == ExitReason::StopLoss);
    CHECK(r.trades[0].exit_price == p - 3.0);
}

TEST_CASE("accounting identity across strategies and costs") {
    Rng pick(42);
    const char* names[] = {"macd", "mama", "maps", "maps2", "random"};
    for (int k = 0; k < 40; ++k) {
        GbmParams g;
        g.n_bars = 200 + pick.below(300);
        g.volatility = 0.005 + 0.02 * pick.uniform();
        BacktestConfig cfg;
        cfg.fixed_cost = 5.0 * pick.uniform();
        cfg.proportional_cost = 0.001 * pick.uniform();
        cfg.short_borrow_per_period = 0.0005 * pick.uniform();
        cfg.allow_negative_equity = true;
        const auto r = run_backtest(default_spec(names[k % 5]), gbm_prices(derive_seed(1, k), g), cfg);
        check_accounting(r);
    }
}

TEST_CASE("prefix replay never changes earlier decisions") {
    GbmParams g;
    g.n_bars = 400;
    g.volatility = 0.015;
    const auto prices = gbm_prices(77, g);
    for (const char* n : {"macd", "mama", "maps", "maps2", "random"}) {
        const auto full = run_backtest(default_spec(n), prices, BacktestConfig{});
        for (std::size_t k : {60u, 150u, 399u}) {
            const auto part = run_backtest(default_spec(n), prices.prefix(k), BacktestConfig{});
            for (std::size_t i = 0; i < k; ++i)
                REQUIRE(part.equity.points()[i].equity == full.equity.points()[i].equity);
            for (const auto& t : part.trades) {
                REQUIRE(t.exit_bar < k);
            }
            std::size_t closed = 0;
            for (const auto& t : full.trades) closed += t.exit_bar < k ? 1 : 0;
            REQUIRE(part.trades.size() == closed);
            for (std::size_t i = 0; i < closed; ++i) {
                CHECK(part.trades[i].pnl == full.trades[i].pnl);
                CHECK(part.trades[i].entry_bar == full.trades[i].entry_bar);
            }
        }
    }
}

TEST_CASE("costs never increase final equity with fixed position sizes") {
    // Decisions of these strategies never look at equity, so with a fixed
    // unit size every cost only subtracts from the same sequence of trades.
    GbmParams g;
    g.n_bars = 500;
    const auto prices = gbm_prices(8, g);
    for (const char* n : {"macd", "mama", "maps", "random"}) {
        BacktestConfig free;
        free.sizing = {PositionSizing::Mode::FixedUnits, 100.0};
        free.proportional_cost = 0;
        free.short_borrow_per_period = 0;
        const auto base = run_backtest(default_spec(n), prices, free);
        REQUIRE(!base.trades.empty());
        double prev = base.final_equity();
        for (double c : {0.0001, 0.0005, 0.002}) {
            BacktestConfig cfg = free;
            cfg.proportional_cost = c;
            const auto r = run_backtest(default_spec(n), prices, cfg);
            CHECK(r.final_equity() < prev);
            CHECK(r.trades.size() == base.trades.size());
            prev = r.final_equity();
        }
        const std::pair<double BacktestConfig::*, std::array<double, 3>> sweeps[] = {
            {&BacktestConfig::fixed_cost, {0.5, 5.0, 50.0}},
            {&BacktestConfig::short_borrow_per_period, {1e-5, 1e-4, 1e-3}}};
        for (const auto& [field, values] : sweeps) {
            double last = base.final_equity();
            for (double c : values) {
                BacktestConfig cfg = free;
                cfg.*field = c;
                const double e = run_backtest(default_spec(n), prices, cfg).final_equity();
                CHECK(e <= last);
                last = e;
            }
        }
    }
}

TEST_CASE("costs shrink compounding positions") {
    // With equity-proportional sizing, costs also shrink later positions, so a
    // losing path can end higher after costs. Only the traded notional is
    // guaranteed to move one way.
    GbmParams g;
    g.n_bars = 500;
    const auto prices = gbm_prices(8, g);
    BacktestConfig free;
    free.proportional_cost = 0;
    BacktestConfig costly = free;
    costly.proportional_cost = 0.002;
    const auto a = run_backtest(RandomTraderParams{}, prices, free);
    const auto b = run_backtest(RandomTraderParams{}, prices, costly);
    REQUIRE(a.trades.size() == b.trades.size());
    CHECK(b.trades.front().units == a.trades.front().units);
    CHECK(b.trades.back().units < a.trades.back().units);
    CHECK(b.total_costs > a.total_costs);
}

TEST_CASE("random trader without costs is a martingale") {
    GbmParams g;
    g.n_bars = 252;
    g.volatility = 0.01;
    BacktestConfig cfg;
    cfg.proportional_cost = 0;
    cfg.short_borrow_per_period = 0;
    const int runs = 10000;
    double sum = 0, sum2 = 0;
    for (int k = 0; k < runs; ++k) {
        const auto r = run_backtest(random_spec(derive_seed(9, 2 * k + 1)),
                                    gbm_prices(derive_seed(9, 2 * k), g), cfg);
        const double x = r.final_equity() / cfg.initial_deposit - 1.0;
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sum2 / runs - mean * mean) / runs);
    CHECK(std::abs(mean) < 4 * se);
}

TEST_CASE("backtest errors") {
    GbmParams g;
    g.n_bars = 20;
    const auto short_prices = gbm_prices(1, g);
    try {
        run_backtest(MacdParams{}, short_prices, BacktestConfig{});
        FAIL("expected WarmupTooLong");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WarmupTooLong);
    }
    BacktestConfig bad;
    bad.leverage = 0.5;
    CHECK_THROWS_AS(run_backtest(random_spec(1), short_prices, bad), Error);

    // a fully invested short into a steady rally goes insolvent on the second up bar
    const auto up = bars_from({{10, 10, 10, 10}, {10, 10, 10, 10}, {10, 16, 10, 16}, {16, 22, 16, 22},
                               {22, 22, 22, 22}});
    BacktestConfig lev;
    lev.sizing.value = 1.0;
    bool insolvent_seen = false;
    for (std::uint64_t s = 1; s < 40 && !insolvent_seen; ++s) {
        try {
            run_backtest(random_spec(s), up, lev);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InsolventAccount);
            CHECK(e.location() == 3u);
            insolvent_seen = true;
        }
    }
    CHECK(insolvent_seen);
    lev.allow_negative_equity = true;
    lev.return_mode = ReturnMode::PnlOnDeposit;
    for (std::uint64_t s = 1; s < 40; ++s) CHECK_NOTHROW(run_backtest(random_spec(s), up, lev));
}

TEST_CASE("short positions pay borrow") {
    const auto flat = bars_from(std::vector<std::array<double, 4>>(30, {10, 10, 10, 10}));
    BacktestConfig cfg;
    cfg.proportional_cost = 0;
    cfg.short_borrow_per_period = 0.001;
    for (std::uint64_t s = 1; s < 20; ++s) {
        const auto r = run_backtest(random_spec(s), flat, cfg);
        double borrow_expected = 0;
        for (const auto& t : r.trades)
            if (t.side == Side::Short) borrow_expected += 0.001 * t.units * 10.0 * (t.exit_bar - t.entry_bar);
        if (!r.open_position || r.open_position->side != Side::Short)
            CHECK(r.total_costs == Catch::Approx(borrow_expected).epsilon(1e-12).margin(1e-12));
        check_accounting(r);
    }
}
