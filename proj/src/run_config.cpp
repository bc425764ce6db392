#include "stse/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "stse/error.hpp"

namespace stse {

namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& message) {
    throw Error(ErrorCode::MalformedConfig, message);
}

void check_object(const json& j, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) malformed(std::string(where) + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            malformed("unknown key '" + key + "' in " + std::string(where));
    }
}

template <class T>
void read(const json& j, const char* key, T& out, std::string_view where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        malformed("bad value for '" + std::string(key) + "' in " + std::string(where));
    }
}

Timestamp read_time(const json& j, const char* key, std::string_view where) {
    if (!j.contains(key) || !j.at(key).is_string())
        malformed(std::string(where) + "." + key + " must be an ISO-8601 string");
    const auto ts = parse_timestamp(j.at(key).get<std::string>());
    if (!ts) malformed(std::string(where) + "." + key + " is not a valid date");
    return *ts;
}

Answer parse_answer(const std::string& text, std::string_view where) {
    if (text == "yes") return Answer::Yes;
    if (text == "no") return Answer::No;
    if (text == "unknown") return Answer::Unknown;
    malformed(std::string(where) + " must be yes, no or unknown");
}

EvaluationConfig parse_evaluation(const json& j) {
    check_object(j, "evaluation",
                 {"thresholds", "primary_threshold", "confidence", "min_observations",
                  "periodicity", "risk_free_per_period"});
    EvaluationConfig c;
    read(j, "thresholds", c.sr_thresholds, "evaluation");
    read(j, "primary_threshold", c.primary_threshold, "evaluation");
    read(j, "confidence", c.confidence, "evaluation");
    read(j, "min_observations", c.min_observations, "evaluation");
    read(j, "periodicity", c.periodicity, "evaluation");
    read(j, "risk_free_per_period", c.risk_free_per_period, "evaluation");
    return c;
}

ConditionsChecklist parse_checklist(const json& j) {
    const auto& names = ConditionsChecklist::names();
    if (!j.is_object()) malformed("checklist must be an object");
    ConditionsChecklist c;
    auto entries = c.entries();
    for (const auto& [key, value] : j.items()) {
        const auto it = std::find(names.begin(), names.end(), key);
        if (it == names.end()) malformed("unknown checklist entry '" + key + "'");
        ChecklistEntry& entry = *entries[static_cast<std::size_t>(it - names.begin())];
        const std::string where = "checklist." + key;
        if (value.is_string()) {
            entry.answer = parse_answer(value.get<std::string>(), where);
        } else {
            check_object(value, where, {"answer", "note"});
            std::string answer = "unknown";
            read(value, "answer", answer, where);
            entry.answer = parse_answer(answer, where);
            read(value, "note", entry.note, where);
        }
    }
    return c;
}

TrainingWindow parse_window(const json& j) {
    check_object(j, "training_window", {"start", "end", "embargo_periods"});
    TrainingWindow w;
    w.start = read_time(j, "start", "training_window");
    w.end = read_time(j, "end", "training_window");
    read(j, "embargo_periods", w.embargo_periods, "training_window");
    return w;
}

BacktestConfig parse_backtest(const json& j) {
    check_object(j, "backtest",
                 {"initial_deposit", "fixed_cost", "proportional_cost", "short_borrow_per_period",
                  "leverage", "position_sizing", "allow_negative_equity", "return_mode"});
    BacktestConfig c;
    read(j, "initial_deposit", c.initial_deposit, "backtest");
    read(j, "fixed_cost", c.fixed_cost, "backtest");
    read(j, "proportional_cost", c.proportional_cost, "backtest");
    read(j, "short_borrow_per_period", c.short_borrow_per_period, "backtest");
    read(j, "leverage", c.leverage, "backtest");
    read(j, "allow_negative_equity", c.allow_negative_equity, "backtest");
    if (j.contains("position_sizing")) {
        const auto& s = j.at("position_sizing");
        check_object(s, "backtest.position_sizing", {"mode", "value"});
        std::string mode = "equity_fraction";
        read(s, "mode", mode, "backtest.position_sizing");
        if (mode == "equity_fraction") c.sizing.mode = PositionSizing::Mode::EquityFraction;
        else if (mode == "fixed_units") c.sizing.mode = PositionSizing::Mode::FixedUnits;
        else malformed("position_sizing.mode must be equity_fraction or fixed_units");
        read(s, "value", c.sizing.value, "backtest.position_sizing");
    }
    if (j.contains("return_mode")) {
        std::string mode;
        read(j, "return_mode", mode, "backtest");
        if (mode == "simple") c.return_mode = ReturnMode::Simple;
        else if (mode == "pnl_on_deposit") c.return_mode = ReturnMode::PnlOnDeposit;
        else malformed("backtest.return_mode must be simple or pnl_on_deposit");
    }
    return c;
}

GbmParams parse_gbm(const json& j, const std::string& symbol) {
    check_object(j, "gbm",
                 {"n_bars", "drift", "volatility", "start_price", "tick_size", "intrabar_factor"});
    GbmParams g;
    g.symbol = symbol;
    read(j, "n_bars", g.n_bars, "gbm");
    read(j, "drift", g.drift, "gbm");
    read(j, "volatility", g.volatility, "gbm");
    read(j, "start_price", g.start_price, "gbm");
    read(j, "tick_size", g.tick_size, "gbm");
    read(j, "intrabar_factor", g.intrabar_factor, "gbm");
    return g;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

AssetSpec parse_asset(const json& j, const std::filesystem::path& base) {
    check_object(j, "asset", {"symbol", "gbm", "prices", "tick_size", "bootstrap"});
    AssetSpec a;
    read(j, "symbol", a.symbol, "asset");
    if (a.symbol.empty()) malformed("asset.symbol is required");
    read(j, "tick_size", a.tick_size, "asset");
    int sources = 0;
    if (j.contains("gbm")) {
        a.gbm = parse_gbm(j.at("gbm"), a.symbol);
        ++sources;
    }
    if (j.contains("prices")) {
        std::string p;
        read(j, "prices", p, "asset");
        a.prices_path = resolve(base, p);
        ++sources;
    }
    if (j.contains("bootstrap")) {
        const auto& b = j.at("bootstrap");
        check_object(b, "asset.bootstrap", {"returns", "n_bars", "start_price", "tick_size"});
        BootstrapSource s;
        std::string p;
        read(b, "returns", p, "asset.bootstrap");
        if (p.empty()) malformed("asset.bootstrap.returns is required");
        s.returns_path = resolve(base, p);
        read(b, "n_bars", s.n_bars, "asset.bootstrap");
        read(b, "start_price", s.start_price, "asset.bootstrap");
        read(b, "tick_size", s.tick_size, "asset.bootstrap");
        a.bootstrap = s;
        ++sources;
    }
    if (sources != 1) malformed("asset '" + a.symbol + "' needs exactly one of gbm, prices, bootstrap");
    return a;
}

StrategySpec strategy_from_json(std::string_view name, const json& p) {
    StrategySpec spec = default_spec(name);
    const std::string where = "params of " + std::string(name);
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MacdParams>) {
                check_object(p, where,
                             {"period_fast", "period_slow", "period_signal", "take_profit",
                              "stop_loss"});
                read(p, "period_fast", s.period_fast, where);
                read(p, "period_slow", s.period_slow, where);
                read(p, "period_signal", s.period_signal, where);
                read(p, "take_profit", s.take_profit_points, where);
                read(p, "stop_loss", s.stop_loss_points, where);
            } else if constexpr (std::is_same_v<T, MaCrossoverParams>) {
                check_object(p, where,
                             {"ma_period", "ma_shift", "trailing_ma_period", "trailing_ma_shift"});
                read(p, "ma_period", s.ma_period, where);
                read(p, "ma_shift", s.ma_shift, where);
                read(p, "trailing_ma_period", s.trailing_ma_period, where);
                read(p, "trailing_ma_shift", s.trailing_ma_shift, where);
            } else if constexpr (std::is_same_v<T, MaSarParams>) {
                check_object(p, where, {"ma_period", "ma_shift", "sar_step", "sar_maximum"});
                read(p, "ma_period", s.ma_period, where);
                read(p, "ma_shift", s.ma_shift, where);
                read(p, "sar_step", s.sar_step, where);
                read(p, "sar_maximum", s.sar_maximum, where);
            } else if constexpr (std::is_same_v<T, MaSarSizedParams>) {
                check_object(p, where,
                             {"ma_period", "ma_shift", "sar_step", "sar_maximum", "percent",
                              "decrease_factor"});
                read(p, "ma_period", s.ma_period, where);
                read(p, "ma_shift", s.ma_shift, where);
                read(p, "sar_step", s.sar_step, where);
                read(p, "sar_maximum", s.sar_maximum, where);
                read(p, "percent", s.percent, where);
                read(p, "decrease_factor", s.decrease_factor, where);
            } else {
                check_object(p, where, {"seed", "holding_period"});
                read(p, "seed", s.seed, where);
                read(p, "holding_period", s.holding_period, where);
            }
        },
        spec);
    validate(spec);
    return spec;
}

SweepSpec parse_sweep(const json& j, const std::filesystem::path& base) {
    check_object(j, "sweep", {"strategies", "assets", "date_ranges", "seeds", "expected_max_sharpe"});
    SweepSpec s;
    if (j.contains("strategies")) {
        if (!j.at("strategies").is_array()) malformed("sweep.strategies must be an array");
        for (const auto& e : j.at("strategies")) {
            check_object(e, "strategy", {"name", "label", "params"});
            std::string name;
            read(e, "name", name, "strategy");
            StrategyEntry entry{strategy_from_json(name, e.value("params", json::object())),
                                display_label(name)};
            read(e, "label", entry.label, "strategy");
            s.strategies.push_back(std::move(entry));
        }
    }
    if (j.contains("assets")) {
        if (!j.at("assets").is_array()) malformed("sweep.assets must be an array");
        for (const auto& a : j.at("assets")) s.assets.push_back(parse_asset(a, base));
    }
    if (j.contains("date_ranges")) {
        if (!j.at("date_ranges").is_array()) malformed("sweep.date_ranges must be an array");
        for (const auto& r : j.at("date_ranges")) {
            check_object(r, "date_range", {"from", "to"});
            DateRange d{read_time(r, "from", "date_range"), read_time(r, "to", "date_range")};
            if (!(d.from <= d.to)) malformed("date_range.from is after date_range.to");
            s.date_ranges.push_back(d);
        }
    }
    read(j, "seeds", s.seeds, "sweep");
    if (s.seeds.empty()) malformed("sweep.seeds must not be empty");
    if (j.contains("expected_max_sharpe") && !j.at("expected_max_sharpe").is_null()) {
        double e = 0.0;
        read(j, "expected_max_sharpe", e, "sweep");
        s.expected_max_sharpe = e;
    }
    return s;
}

OutputSpec parse_output(const json& j, const std::filesystem::path& base) {
    check_object(j, "output", {"directory", "formats"});
    OutputSpec o;
    if (j.contains("directory")) {
        std::string d;
        read(j, "directory", d, "output");
        o.directory = resolve(base, d);
    }
    if (j.contains("formats")) {
        std::vector<std::string> names;
        read(j, "formats", names, "output");
        o.formats.clear();
        for (const auto& n : names) o.formats.push_back(parse_report_format(n));
    }
    return o;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    check_object(doc, "run configuration",
                 {"evaluation", "checklist", "training_window", "backtest", "sweep", "output"});
    RunConfig c;
    if (doc.contains("evaluation")) c.evaluation = parse_evaluation(doc.at("evaluation"));
    if (doc.contains("checklist")) c.checklist = parse_checklist(doc.at("checklist"));
    if (doc.contains("training_window")) c.evaluation.training_window = parse_window(doc.at("training_window"));
    if (doc.contains("backtest")) c.backtest = parse_backtest(doc.at("backtest"));
    if (doc.contains("sweep")) c.sweep = parse_sweep(doc.at("sweep"), base_dir);
    if (doc.contains("output")) c.output = parse_output(doc.at("output"), base_dir);
    c.backtest.periodicity = c.evaluation.periodicity;
    c.evaluation.validate();
    c.backtest.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_file(path), path.parent_path());
}

StrategySpec parse_strategy_params(std::string_view name, std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    return strategy_from_json(name, doc);
}

StrategySpec load_strategy_params(std::string_view name, const std::filesystem::path& path) {
    return parse_strategy_params(name, read_file(path));
}

GbmParams parse_synthetic_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view model = spec.substr(0, colon);
    if (model != "gbm") malformed("synthetic spec must start with 'gbm:'");
    GbmParams g;
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) malformed("synthetic spec item '" + std::string(item) + "' lacks '='");
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);
        if (key == "symbol") {
            g.symbol = std::string(value);
            continue;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
            malformed("synthetic spec value '" + std::string(value) + "' is not a number");
        if (key == "n_bars") {
            if (!(v >= 0) || v != std::floor(v)) malformed("n_bars must be a whole number");
            g.n_bars = static_cast<std::size_t>(v);
        } else if (key == "drift") g.drift = v;
        else if (key == "volatility") g.volatility = v;
        else if (key == "start_price") g.start_price = v;
        else if (key == "tick_size") g.tick_size = v;
        else if (key == "intrabar_factor") g.intrabar_factor = v;
        else malformed("unknown synthetic spec key '" + std::string(key) + "'");
    }
    return g;
}

std::string display_label(std::string_view strategy_name) {
    std::string out(strategy_name);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

} // namespace stse
