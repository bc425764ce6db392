#include <catch_amalgamated.hpp>

#include "stse/time.hpp"

using namespace stse;
using namespace std::chrono;

TEST_CASE("parse_timestamp accepts dates and date-times") {
    auto d = parse_timestamp("2018-01-02");
    REQUIRE(d);
    CHECK(*d == sys_days{year{2018} / January / 2});

    auto t = parse_timestamp("2018-01-02T13:45:10");
    REQUIRE(t);
    CHECK(*t == sys_days{year{2018} / January / 2} + hours{13} + minutes{45} + seconds{10});
    CHECK(parse_timestamp("2018-01-02T13:45:10Z") == t);
}

TEST_CASE("parse_timestamp rejects malformed text") {
    for (const char* bad : {"", "2018-13-01", "2018-02-30", "18-01-01", "2018-01-01 ", "2018/01/01",
                            "2018-01-01T25:00:00", "2018-01-01T10:00"}) {
        INFO(bad);
        CHECK_FALSE(parse_timestamp(bad));
    }
}

TEST_CASE("format_timestamp round-trips") {
    CHECK(format_timestamp(*parse_timestamp("2019-06-30")) == "2019-06-30");
    CHECK(format_timestamp(*parse_timestamp("2019-06-30T00:00:01")) == "2019-06-30T00:00:01");
}

TEST_CASE("nth_business_day skips weekends") {
    const sys_days monday{year{2018} / January / 1};
    CHECK(nth_business_day(monday, 0) == monday);
    CHECK(nth_business_day(monday, 4) == sys_days{year{2018} / January / 5});
    CHECK(nth_business_day(monday, 5) == sys_days{year{2018} / January / 8});
    CHECK(nth_business_day(monday, 10) == sys_days{year{2018} / January / 15});
}
