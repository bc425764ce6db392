#include "stse/csv.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "stse/error.hpp"

namespace stse {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Reads lines, dropping one trailing '\r'. Blank lines are only allowed at
// the end of the file.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) {
                ++blank_run_;
                continue;
            }
            if (blank_run_ > 0)
                throw Error(ErrorCode::MalformedRow, "blank line inside data", number_ - 1);
            return true;
        }
        return false;
    }

    std::size_t line_number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
    std::size_t blank_run_ = 0;
};

void expect_header(LineReader& reader, std::string_view header) {
    std::string line;
    if (!reader.next(line)) throw Error(ErrorCode::MalformedHeader, "file is empty", 1);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (line != header)
        throw Error(ErrorCode::MalformedHeader,
                    "expected header '" + std::string(header) + "', found '" + line + "'",
                    reader.line_number());
}

double parse_number(std::string_view text, std::size_t line, const char* what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw Error(ErrorCode::MalformedRow,
                    std::string("bad ") + what + " '" + std::string(text) + "'", line);
    return value;
}

Timestamp parse_date(std::string_view text, std::size_t line) {
    const auto ts = parse_timestamp(text);
    if (!ts) throw Error(ErrorCode::MalformedRow, "bad date '" + std::string(text) + "'", line);
    return *ts;
}

void check_order(const std::optional<Timestamp>& previous, Timestamp current, std::size_t line) {
    if (previous && !(*previous < current))
        throw Error(ErrorCode::NonMonotonicTimestamps,
                    "timestamp " + format_timestamp(current) + " does not follow " +
                        format_timestamp(*previous),
                    line);
}

std::vector<std::string_view> fields_of(const std::string& line, std::size_t expected,
                                        std::size_t number) {
    auto fields = split(line);
    if (fields.size() != expected)
        throw Error(ErrorCode::MalformedRow,
                    "expected " + std::to_string(expected) + " fields, found " +
                        std::to_string(fields.size()),
                    number);
    return fields;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
    return in;
}

} // namespace

ReturnSeries parse_returns_csv(std::istream& in, double periodicity, std::string label) {
    LineReader reader(in);
    expect_header(reader, "date,return");
    std::vector<double> values;
    std::vector<Timestamp> stamps;
    std::optional<Timestamp> previous;
    std::string line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        const auto f = fields_of(line, 2, n);
        const Timestamp ts = parse_date(f[0], n);
        const double r = parse_number(f[1], n, "return");
        if (!(r > -1.0))
            throw Error(ErrorCode::MalformedRow, "return must be > -1", n);
        check_order(previous, ts, n);
        previous = ts;
        values.push_back(r);
        stamps.push_back(ts);
    }
    if (values.empty()) throw Error(ErrorCode::MalformedRow, "no data rows", reader.line_number() + 1);
    return ReturnSeries(std::move(values), periodicity, std::move(label), std::move(stamps));
}

EquityCurve parse_equity_csv(std::istream& in) {
    LineReader reader(in);
    expect_header(reader, "date,equity");
    std::vector<EquityPoint> points;
    std::optional<Timestamp> previous;
    std::string line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        const auto f = fields_of(line, 2, n);
        const Timestamp ts = parse_date(f[0], n);
        const double equity = parse_number(f[1], n, "equity");
        check_order(previous, ts, n);
        previous = ts;
        points.push_back({ts, equity});
    }
    if (points.empty()) throw Error(ErrorCode::MalformedRow, "no data rows", reader.line_number() + 1);
    return EquityCurve(std::move(points));
}

PriceSeries parse_ohlc_csv(std::istream& in, std::string symbol, double tick_size) {
    LineReader reader(in);
    expect_header(reader, "date,open,high,low,close,volume");
    std::vector<Bar> bars;
    std::optional<Timestamp> previous;
    std::string line;
    while (reader.next(line)) {
        const std::size_t n = reader.line_number();
        const auto f = fields_of(line, 6, n);
        Bar bar;
        bar.time = parse_date(f[0], n);
        bar.open = parse_number(f[1], n, "open");
        bar.high = parse_number(f[2], n, "high");
        bar.low = parse_number(f[3], n, "low");
        bar.close = parse_number(f[4], n, "close");
        bar.volume = parse_number(f[5], n, "volume");
        if (!bar.valid() || !(bar.low > 0.0))
            throw Error(ErrorCode::MalformedRow,
                        "bar must satisfy 0 < low <= open, close <= high and volume >= 0", n);
        check_order(previous, bar.time, n);
        previous = bar.time;
        bars.push_back(bar);
    }
    if (bars.empty()) throw Error(ErrorCode::MalformedRow, "no data rows", reader.line_number() + 1);
    return PriceSeries(std::move(bars), std::move(symbol), tick_size);
}

ReturnSeries parse_returns_csv(const std::string& path, double periodicity) {
    auto in = open_or_throw(path);
    return parse_returns_csv(in, periodicity, std::filesystem::path(path).stem().string());
}

EquityCurve parse_equity_csv(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_equity_csv(in);
}

PriceSeries parse_ohlc_csv(const std::string& path, double tick_size) {
    auto in = open_or_throw(path);
    return parse_ohlc_csv(in, std::filesystem::path(path).stem().string(), tick_size);
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_returns_csv(std::ostream& out, const ReturnSeries& series) {
    out << "date,return\n";
    const auto values = series.values();
    const auto stamps = series.timestamps();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Timestamp ts = series.has_timestamps() ? stamps[i] : nth_business_day(kSyntheticStart, i);
        out << format_timestamp(ts) << ',' << format_exact(values[i]) << '\n';
    }
}

void write_equity_csv(std::ostream& out, const EquityCurve& curve) {
    out << "date,equity\n";
    for (const auto& p : curve.points())
        out << format_timestamp(p.time) << ',' << format_exact(p.equity) << '\n';
}

void write_ohlc_csv(std::ostream& out, const PriceSeries& prices) {
    out << "date,open,high,low,close,volume\n";
    for (const auto& b : prices.bars()) {
        out << format_timestamp(b.time) << ',' << format_exact(b.open) << ','
            << format_exact(b.high) << ',' << format_exact(b.low) << ','
            << format_exact(b.close) << ',' << format_exact(b.volume) << '\n';
    }
}

void write_trades_csv(std::ostream& out, const BacktestResult& result) {
    out << "entry_date,exit_date,side,units,entry_price,exit_price,pnl,costs,reason\n";
    for (const auto& t : result.trades) {
        out << format_timestamp(t.entry_time) << ',' << format_timestamp(t.exit_time) << ','
            << to_string(t.side) << ',' << format_exact(t.units) << ','
            << format_exact(t.entry_price) << ',' << format_exact(t.exit_price) << ','
            << format_exact(t.pnl) << ',' << format_exact(t.costs) << ',' << to_string(t.reason)
            << '\n';
    }
}

} // namespace stse
