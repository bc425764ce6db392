#include "stse/time.hpp"

#include <charconv>
#include <cstdio>

namespace stse {

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
}

} // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    int y = 0, mo = 0, d = 0;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, mo) || !read_int(text, 8, 2, d))
        return std::nullopt;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;

    int hh = 0, mm = 0, ss = 0;
    std::string_view rest = text.substr(10);
    if (!rest.empty()) {
        if (rest.back() == 'Z') rest.remove_suffix(1);
        if (rest.size() != 9 || (rest[0] != 'T' && rest[0] != ' ') || rest[3] != ':' ||
            rest[6] != ':')
            return std::nullopt;
        if (!read_int(rest, 1, 2, hh) || !read_int(rest, 4, 2, mm) || !read_int(rest, 7, 2, ss))
            return std::nullopt;
        if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    }
    return Timestamp{sys_days{ymd}} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day ymd{day_start};
    const auto tod = ts - day_start;
    char buf[32];
    if (tod.count() == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    } else {
        const hh_mm_ss<seconds> hms{tod};
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld",
                      static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                      static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()),
                      static_cast<long>(hms.minutes().count()),
                      static_cast<long>(hms.seconds().count()));
    }
    return buf;
}

Timestamp nth_business_day(std::chrono::sys_days first, std::size_t n) {
    using namespace std::chrono;
    // roll forward to Monday..Friday
    while (weekday{first}.iso_encoding() > 5) first += days{1};
    const auto offset = weekday{first}.iso_encoding() - 1;   // 0 = Monday
    const std::size_t total = offset + n;
    const auto weeks = static_cast<long>(total / 5);
    const auto rem = static_cast<long>(total % 5);
    const sys_days monday = first - days{offset};
    return Timestamp{monday + days{weeks * 7 + rem}};
}

} // namespace stse
