// csv.hpp
// Strict CSV ingestion and emission for returns, equity, OHLC bars and
// trade logs. Parsing never skips a row: any malformed line is an error that
// carries its 1-based line number.
//
//   returns: date,return
//   equity:  date,equity
//   ohlc:    date,open,high,low,close,volume
//
// Dates are ISO-8601. CRLF line endings and a trailing newline are accepted.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "stse/backtest.hpp"
#include "stse/market.hpp"
#include "stse/metrics.hpp"

namespace stse {

// Throws MalformedHeader, MalformedRow(line), NonMonotonicTimestamps(line).
ReturnSeries parse_returns_csv(std::istream& in, double periodicity, std::string label = {});
EquityCurve parse_equity_csv(std::istream& in);
PriceSeries parse_ohlc_csv(std::istream& in, std::string symbol, double tick_size);

// File variants; throw FileNotFound when the path cannot be opened. The label
// / symbol defaults to the file stem.
ReturnSeries parse_returns_csv(const std::string& path, double periodicity);
EquityCurve parse_equity_csv(const std::string& path);
PriceSeries parse_ohlc_csv(const std::string& path, double tick_size);

// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

void write_returns_csv(std::ostream& out, const ReturnSeries& series);
void write_equity_csv(std::ostream& out, const EquityCurve& curve);
void write_ohlc_csv(std::ostream& out, const PriceSeries& prices);
void write_trades_csv(std::ostream& out, const BacktestResult& result);

} // namespace stse
