// time.hpp
// ISO-8601 timestamps at one-second resolution.

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace stse {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS" and the same with a trailing 'Z'.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// Date-only form when the time of day is midnight.
std::string format_timestamp(Timestamp ts);

// Monday..Friday dates starting at `first` (rolled forward to a weekday).
Timestamp nth_business_day(std::chrono::sys_days first, std::size_t n);

} // namespace stse
