#include <catch_amalgamated.hpp>

#include <cmath>
#include <utility>

#include "stse/error.hpp"
#include "stse/normal.hpp"

using namespace stse;

namespace {

// 40-digit reference values of the standard normal CDF.
const std::pair<double, double> kCdfReference[] = {
    {-37.0, 5.725571222524576822683193e-300},
    {-10.0, 7.619853024160526065973343e-24},
    {-5.0, 2.866515718791939116737523e-7},
    {-1.5, 0.06680720126885806600449404},
    {-0.5, 0.3085375387259868963622954},
    {0.3, 0.617911422188952637306529},
    {1.0, 0.8413447460685429485852325},
    {1.644853626, 0.9499999999018692521760349},
    {2.5, 0.9937903346742238648330219},
    {6.0, 0.9999999990134123549623019},
    {8.5, 0.9999999999999999905204652},
};

// Bisection on an erfc-based CDF, independent of the library's quantile.
double bisect_quantile(double p) {
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -40, hi = 40;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("cdf matches high-precision references") {
    for (auto [x, ref] : kCdfReference) {
        INFO("x = " << x);
        CHECK(std::abs(std_normal_cdf(x) - ref) <= 1e-12);
        if (ref < 1e-3) CHECK(std::abs(std_normal_cdf(x) / ref - 1.0) < 1e-12);
    }
    CHECK(std_normal_cdf(0.0) == 0.5);
}

TEST_CASE("cdf reflection and saturation") {
    for (double x = -8.0; x <= 8.0; x += 0.037) {
        CHECK(std::abs(std_normal_cdf(-x) - (1.0 - std_normal_cdf(x))) <= 1e-15);
    }
    CHECK(std_normal_cdf(-50.0) == 0.0);
    CHECK(std_normal_cdf(50.0) == 1.0);
}

TEST_CASE("quantile matches references") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK(std_normal_quantile(0.95) == Catch::Approx(1.644853626951472714863849).epsilon(1e-14));
    CHECK(std_normal_quantile(0.975) == Catch::Approx(1.959963984540054235524594).epsilon(1e-14));
    CHECK(std_normal_quantile(0.99) == Catch::Approx(2.326347874040841100885606).epsilon(1e-14));
    CHECK(std_normal_quantile(0.9) == Catch::Approx(1.281551565544600466965103).epsilon(1e-14));
    CHECK(std_normal_quantile(0.001) == Catch::Approx(-3.0902323061678135415404).epsilon(1e-13));
    CHECK(std_normal_quantile(1e-10) == Catch::Approx(-6.361340902404056204695376).epsilon(1e-12));
}

TEST_CASE("quantile inverts the cdf") {
    for (double p = 1e-6; p < 1.0; p += 0.0173) {
        INFO("p = " << p);
        CHECK(std::abs(std_normal_cdf(std_normal_quantile(p)) - p) <= 1e-10);
        CHECK(std::abs(std_normal_quantile(p) - bisect_quantile(p)) <= 1e-9);
    }
}

TEST_CASE("quantile domain") {
    for (double p : {0.0, 1.0, -0.1, 1.1, std::nan("")}) {
        CHECK_THROWS_AS(std_normal_quantile(p), Error);
    }
}

TEST_CASE("pdf") {
    CHECK(std_normal_pdf(0.0) == Catch::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(std_normal_pdf(1.3) == Catch::Approx(std_normal_pdf(-1.3)).epsilon(1e-15));
}
