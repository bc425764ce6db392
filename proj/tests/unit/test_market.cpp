#include <catch_amalgamated.hpp>

#include <cmath>

#include "stse/error.hpp"
#include "stse/market.hpp"
#include "stse/metrics.hpp"
#include "stse/rng.hpp"

using namespace stse;

namespace {

bool same(const PriceSeries& a, const PriceSeries& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Bar &x = a[i], &y = b[i];
        if (x.time != y.time || x.open != y.open || x.high != y.high || x.low != y.low ||
            x.close != y.close || x.volume != y.volume)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("zero volatility and drift give constant prices") {
    GbmParams p;
    p.volatility = 0.0;
    p.n_bars = 50;
    const auto s = gbm_prices(1, p);
    REQUIRE(s.size() == 50);
    for (const auto& b : s.bars()) {
        CHECK(b.open == 100.0);
        CHECK(b.close == 100.0);
        CHECK(b.high == 100.0);
        CHECK(b.low == 100.0);
    }
}

TEST_CASE("gbm is seed-deterministic and bars are consistent") {
    GbmParams p;
    p.n_bars = 300;
    const auto a = gbm_prices(9, p), b = gbm_prices(9, p), c = gbm_prices(10, p);
    CHECK(same(a, b));
    CHECK_FALSE(same(a, c));
    CHECK(a[0].open == p.start_price);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Bar& bar = a[i];
        CHECK(bar.valid());
        CHECK(bar.low <= std::min(bar.open, bar.close));
        CHECK(std::max(bar.open, bar.close) <= bar.high);
        if (i > 0) {
            CHECK(bar.open == a[i - 1].close);
            CHECK(bar.time > a[i - 1].time);
        }
    }
}

TEST_CASE("gbm log growth carries the Ito correction") {
    GbmParams p;
    p.n_bars = 252;
    p.volatility = 0.01;
    const int paths = 10000;
    double sum = 0;
    for (int k = 0; k < paths; ++k) {
        const auto s = gbm_prices(derive_seed(31, k), p);
        sum += std::log(s[s.size() - 1].close / p.start_price);
    }
    const double expected = -0.5 * p.volatility * p.volatility * 252;
    const double se = p.volatility * std::sqrt(252.0) / std::sqrt(paths);
    CHECK(std::abs(sum / paths - expected) < 4 * se);
}

TEST_CASE("gbm parameter errors") {
    GbmParams p;
    p.n_bars = 1;
    CHECK_THROWS_AS(gbm_prices(1, p), Error);
    p = GbmParams{};
    p.volatility = -0.1;
    CHECK_THROWS_AS(gbm_prices(1, p), Error);
    p = GbmParams{};
    p.start_price = 0.0;
    CHECK_THROWS_AS(gbm_prices(1, p), Error);
}

TEST_CASE("bootstrap of a constant return") {
    const std::vector<double> src{0.003};
    const auto s = bootstrap_prices(4, src, 100, 50.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].close / s[i].open - 1.0 == Catch::Approx(0.003).epsilon(1e-12));
    }
    CHECK(same(s, bootstrap_prices(4, src, 100, 50.0)));
}

TEST_CASE("bootstrap errors") {
    const std::vector<double> empty;
    try {
        bootstrap_prices(1, empty, 10, 1.0);
        FAIL("expected EmptySource");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySource);
    }
}

TEST_CASE("bootstrap moments converge to the source moments") {
    Rng rng(8);
    std::vector<double> src(500);
    for (auto& r : src) {
        const double z = rng.normal();
        r = 0.01 * z + 0.004 * (z * z - 1.0);   // skewed source
    }
    const auto target = moments(src);
    const auto s = bootstrap_prices(3, src, 1000000, 100.0);
    std::vector<double> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = s[i].close / s[i].open - 1.0;
    const auto m = moments(r);
    CHECK(m.mean == Catch::Approx(target.mean).margin(3e-5));
    CHECK(m.stdev == Catch::Approx(target.stdev).epsilon(0.01));
    CHECK(m.skewness == Catch::Approx(target.skewness).margin(0.03));
    CHECK(m.kurtosis == Catch::Approx(target.kurtosis).margin(0.1));
}

TEST_CASE("price series slicing and invariants") {
    GbmParams p;
    p.n_bars = 20;
    const auto s = gbm_prices(1, p);
    const auto sl = s.slice(s[5].time, s[9].time);
    REQUIRE(sl.size() == 5);
    CHECK(sl[0].close == s[5].close);
    CHECK(s.prefix(3).size() == 3);

    std::vector<Bar> bad{s[0], s[0]};
    CHECK_THROWS_AS(PriceSeries(bad, "X", 0.01), Error);
    CHECK_THROWS_AS(PriceSeries({s[0]}, "X", 0.0), Error);
    Bar broken = s[1];
    broken.high = broken.low - 1.0;
    CHECK_THROWS_AS(PriceSeries({s[0], broken}, "X", 0.01), Error);
}
