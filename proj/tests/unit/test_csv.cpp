#include <catch_amalgamated.hpp>

#include <sstream>

#include "stse/csv.hpp"
#include "stse/error.hpp"

using namespace stse;

namespace {

Error error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    FAIL("no error thrown");
    return Error(ErrorCode::InvalidSeries, "");
}

ReturnSeries returns_from(const std::string& text) {
    std::istringstream in(text);
    return parse_returns_csv(in, 252, "x");
}

} // namespace

TEST_CASE("valid returns file") {
    const auto s = returns_from("date,return\n2020-01-02,0.01\n2020-01-03,-0.02\n2020-01-06,0.005\n");
    REQUIRE(s.size() == 3);
    CHECK(s.values()[1] == -0.02);
    CHECK(format_timestamp(s.timestamps()[2]) == "2020-01-06");
    CHECK(returns_from("date,return\r\n2020-01-02,0.01\r\n\n").size() == 1);
}

TEST_CASE("returns file errors carry line numbers") {
    auto dup = error_of([] { returns_from("date,return\n2020-01-02,0.01\n2020-01-02,0.02\n"); });
    CHECK(dup.code() == ErrorCode::NonMonotonicTimestamps);
    CHECK(dup.location() == 3u);

    auto neg = error_of([] { returns_from("date,return\n2020-01-02,-1.5\n"); });
    CHECK(neg.code() == ErrorCode::MalformedRow);
    CHECK(neg.location() == 2u);

    CHECK(error_of([] { returns_from("day,ret\n2020-01-02,0.1\n"); }).code() == ErrorCode::MalformedHeader);
    CHECK(error_of([] { returns_from(""); }).code() == ErrorCode::MalformedHeader);
    CHECK(error_of([] { returns_from("date,return\n"); }).code() == ErrorCode::MalformedRow);
    CHECK(error_of([] { returns_from("date,return\n2020-01-02,abc\n"); }).code() == ErrorCode::MalformedRow);
    CHECK(error_of([] { returns_from("date,return\n2020-01-02,0.1,3\n"); }).code() == ErrorCode::MalformedRow);
    CHECK(error_of([] { returns_from("date,return\nyesterday,0.1\n"); }).code() == ErrorCode::MalformedRow);
    CHECK(error_of([] { returns_from("date,return\n2020-01-02,0.1\n\n2020-01-03,0.1\n"); }).code() ==
          ErrorCode::MalformedRow);
    CHECK(error_of([] { parse_returns_csv(std::string("/nonexistent/r.csv"), 252); }).code() ==
          ErrorCode::FileNotFound);
}

TEST_CASE("equity and OHLC files") {
    std::istringstream eq("date,equity\n2020-01-02,100\n2020-01-03,110\n");
    const auto c = parse_equity_csv(eq);
    REQUIRE(c.size() == 2);
    CHECK(c.points()[1].equity == 110);

    std::istringstream ohlc("date,open,high,low,close,volume\n2020-01-02,1,2,0.5,1.5,100\n"
                            "2020-01-03T12:00:00,1.5,1.6,1.4,1.45,50\n");
    const auto p = parse_ohlc_csv(ohlc, "EURUSD", 0.0001);
    REQUIRE(p.size() == 2);
    CHECK(p.symbol() == "EURUSD");
    CHECK(p[1].close == 1.45);

    std::istringstream bad("date,open,high,low,close,volume\n2020-01-02,1,0.9,0.5,1.5,100\n");
    CHECK(error_of([&] { parse_ohlc_csv(bad, "X", 0.01); }).code() == ErrorCode::MalformedRow);
}

TEST_CASE("writers round-trip exactly") {
    const std::vector<double> v{0.1, -0.3333333333333333, 1e-17, 0.123456789012345678};
    std::vector<Timestamp> t;
    for (std::size_t i = 0; i < v.size(); ++i) t.push_back(nth_business_day(kSyntheticStart, i));
    const ReturnSeries s(v, 252, "x", t);
    std::ostringstream out;
    write_returns_csv(out, s);
    const auto back = returns_from(out.str());
    REQUIRE(back.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(back.values()[i] == v[i]);
        CHECK(back.timestamps()[i] == t[i]);
    }

    GbmParams g;
    g.n_bars = 30;
    const auto prices = gbm_prices(3, g);
    std::ostringstream po;
    write_ohlc_csv(po, prices);
    std::istringstream pi(po.str());
    const auto pb = parse_ohlc_csv(pi, "SYNTH", 0.01);
    REQUIRE(pb.size() == prices.size());
    for (std::size_t i = 0; i < pb.size(); ++i) {
        CHECK(pb[i].open == prices[i].open);
        CHECK(pb[i].high == prices[i].high);
        CHECK(pb[i].low == prices[i].low);
        CHECK(pb[i].close == prices[i].close);
    }
}

TEST_CASE("format_exact is shortest round-trip") {
    CHECK(format_exact(0.1) == "0.1");
    CHECK(format_exact(100.0) == "100");
    CHECK(std::stod(format_exact(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("trades writer") {
    GbmParams g;
    g.n_bars = 100;
    const auto r = run_backtest(RandomTraderParams{}, gbm_prices(2, g), BacktestConfig{});
    std::ostringstream out;
    write_trades_csv(out, r);
    std::istringstream in(out.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == r.trades.size() + 1);
}
