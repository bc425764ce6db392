#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "stse/error.hpp"
#include "stse/metrics.hpp"
#include "stse/rng.hpp"

using namespace stse;
using Catch::Approx;

namespace {

EquityCurve curve(std::vector<double> eq) {
    std::vector<EquityPoint> pts;
    for (std::size_t i = 0; i < eq.size(); ++i)
        pts.push_back({Timestamp{std::chrono::seconds{86400 * static_cast<long>(i)}}, eq[i]});
    return EquityCurve(std::move(pts));
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidSeries;
}

} // namespace

TEST_CASE("equity_to_returns divides consecutive points") {
    auto r = equity_to_returns(curve({100, 110, 99}), 252);
    REQUIRE(r.size() == 2);
    CHECK(r.values()[0] == Approx(0.10).margin(1e-15));
    CHECK(r.values()[1] == Approx(-0.10).margin(1e-15));
    CHECK(r.periodicity() == 252);

    CHECK(equity_to_returns(curve({100, 100}), 252).values()[0] == 0.0);

    auto r3 = equity_to_returns(curve({100, 105, 105, 126}), 12);
    CHECK(r3.values()[0] == Approx(0.05).margin(1e-15));
    CHECK(r3.values()[1] == 0.0);
    CHECK(r3.values()[2] == Approx(0.20).margin(1e-15));
    REQUIRE(r3.has_timestamps());
    CHECK(r3.timestamps()[0] == curve({1, 1}).points()[1].time);
}

TEST_CASE("equity_to_returns errors") {
    CHECK(code_of([] { equity_to_returns(curve({100}), 252); }) == ErrorCode::TooFewPoints);
    try {
        equity_to_returns(curve({100, 50, 0, 10}), 252);
        FAIL("expected NonPositiveEquity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveEquity);
        CHECK(e.location() == 2u);
    }
    auto pnl = equity_to_returns(curve({100, 50, -10, 20}), 252, ReturnMode::PnlOnDeposit);
    CHECK(pnl.values()[1] == Approx(-0.6));
}

TEST_CASE("compounding returns reproduces the equity ratio") {
    Rng rng(5);
    std::vector<double> eq{1000.0};
    for (int i = 0; i < 500; ++i) eq.push_back(eq.back() * (1.0 + 0.02 * rng.normal()));
    auto r = equity_to_returns(curve(eq), 252);
    const double ratio = eq.back() / eq.front();
    CHECK(std::abs((1.0 + r.cumulative_return()) / ratio - 1.0) <= 1e-12);
}

TEST_CASE("ReturnSeries validation") {
    CHECK(code_of([] { ReturnSeries({}, 252); }) == ErrorCode::InvalidSeries);
    CHECK(code_of([] { ReturnSeries({0.1, -1.0}, 252); }) == ErrorCode::InvalidSeries);
    CHECK(code_of([] { ReturnSeries({0.1, NAN}, 252); }) == ErrorCode::InvalidSeries);
    CHECK(code_of([] { ReturnSeries({0.1}, 0); }) == ErrorCode::InvalidSeries);
}

TEST_CASE("moments of an alternating series") {
    const std::vector<double> x{1, -1, 1, -1};
    auto m = moments(x);
    CHECK(m.n == 4);
    CHECK(m.mean == 0.0);
    // sample (n-1) standard deviation: sqrt(4/3)
    CHECK(m.stdev == Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-15));
    CHECK(m.skewness == Approx(0.0).margin(1e-15));
    CHECK(m.kurtosis == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("moments against a direct two-pass oracle") {
    const std::vector<double> x{0.01, -0.02, 0.035, 0.0, -0.004, 0.021, -0.013};
    const double n = static_cast<double>(x.size());
    double mean = 0;
    for (double v : x) mean += v / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d / n;
        m3 += d * d * d / n;
        m4 += d * d * d * d / n;
    }
    auto m = moments(x);
    CHECK(m.mean == Approx(mean).epsilon(1e-13));
    CHECK(m.stdev == Approx(std::sqrt(m2 * n / (n - 1))).epsilon(1e-13));
    CHECK(m.skewness == Approx(m3 / std::pow(m2, 1.5)).epsilon(1e-12));
    CHECK(m.kurtosis == Approx(m4 / (m2 * m2)).epsilon(1e-12));
}

TEST_CASE("moments errors") {
    const std::vector<double> c{0.01, 0.01, 0.01, 0.01};
    CHECK(code_of([&] { moments(c); }) == ErrorCode::ZeroVariance);
    const std::vector<double> one{0.01};
    CHECK(code_of([&] { moments(one); }) == ErrorCode::TooFewObservations);
}

TEST_CASE("moments of a million normal draws") {
    Rng rng(2024);
    std::vector<double> x(1000000);
    for (auto& v : x) v = rng.normal();
    auto m = moments(x);
    CHECK(std::abs(m.skewness) < 0.01);
    CHECK(std::abs(m.kurtosis - 3.0) < 0.03);
}

TEST_CASE("location shift moves only the mean") {
    Rng rng(3);
    std::vector<double> x(200), y(200);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 0.01 * rng.normal();
        y[i] = x[i] + 0.25;
    }
    auto a = moments(x), b = moments(y);
    CHECK(b.mean == Approx(a.mean + 0.25).epsilon(1e-13));
    CHECK(b.stdev == Approx(a.stdev).epsilon(1e-9));
    CHECK(b.skewness == Approx(a.skewness).margin(1e-6));
    CHECK(b.kurtosis == Approx(a.kurtosis).epsilon(1e-6));
}

TEST_CASE("sharpe ratio") {
    MomentSummary m{100, 0.001, 0.01, 0.0, 3.0};
    auto s = sharpe(m, 252);
    CHECK(s.per_period == Approx(0.1).epsilon(1e-14));

    MomentSummary t{100, 0.026, 1.0, 0.0, 3.0};
    CHECK(sharpe(t, 252).annualized == Approx(0.41273720452607613212).epsilon(1e-14));

    CHECK(sharpe(m, 252, 0.001).per_period == 0.0);
}

TEST_CASE("sharpe is scale invariant with zero risk-free rate") {
    Rng rng(11);
    std::vector<double> x(300), y(300);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = 0.0005 + 0.01 * rng.normal();
        y[i] = 3.5 * x[i];
    }
    CHECK(sharpe(ReturnSeries(y, 252)).per_period ==
          Approx(sharpe(ReturnSeries(x, 252)).per_period).epsilon(1e-12));
}

TEST_CASE("sample Sharpe over many normal series is unbiased") {
    const double true_sr = 0.1;
    double sr_sum = 0, kurt_sum = 0;
    const int reps = 10000;
    for (int k = 0; k < reps; ++k) {
        Rng rng(derive_seed(77, k));
        std::vector<double> x(300);
        for (auto& v : x) v = 0.01 * (true_sr + rng.normal());
        auto m = moments(x);
        sr_sum += sharpe(m, 252).per_period;
        kurt_sum += m.kurtosis;
    }
    CHECK(std::abs(sr_sum / reps / true_sr - 1.0) < 0.02);
    CHECK(std::abs(kurt_sum / reps - 3.0) < 0.05);
}
