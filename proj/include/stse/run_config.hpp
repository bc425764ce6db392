// run_config.hpp
// JSON run configuration binding every input of an evaluation or sweep:
// evaluation thresholds, checklist answers, training window and embargo,
// backtest costs, strategies x assets x date ranges x seeds, and outputs.
// Unknown keys are rejected so typos cannot silently fall back to defaults.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stse/backtest.hpp"
#include "stse/evaluator.hpp"
#include "stse/market.hpp"
#include "stse/report.hpp"
#include "stse/strategies.hpp"

namespace stse {

struct BootstrapSource {
    std::filesystem::path returns_path;
    std::size_t n_bars = 252;
    double start_price = 100.0;
    double tick_size = 0.01;
};

struct AssetSpec {
    std::string symbol;
    std::optional<GbmParams> gbm;
    std::optional<std::filesystem::path> prices_path;   // OHLC CSV
    std::optional<BootstrapSource> bootstrap;
    double tick_size = 0.01;                            // for prices_path
};

struct DateRange {
    Timestamp from;
    Timestamp to;
};

struct StrategyEntry {
    StrategySpec spec;
    std::string label;
};

struct SweepSpec {
    std::vector<StrategyEntry> strategies;
    std::vector<AssetSpec> assets;
    std::vector<DateRange> date_ranges;   // empty: whole series
    std::vector<std::uint64_t> seeds{1};
    std::optional<double> expected_max_sharpe;
};

struct OutputSpec {
    std::filesystem::path directory = "stse_out";
    std::vector<ReportFormat> formats{ReportFormat::Markdown};
};

struct RunConfig {
    EvaluationConfig evaluation;
    ConditionsChecklist checklist;
    BacktestConfig backtest;
    SweepSpec sweep;
    OutputSpec output;
};

// Relative paths inside the document resolve against base_dir. Throws
// MalformedConfig (and InvalidConfig / InvalidStrategyParams from validation).
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Parameters given as a JSON object; missing keys keep the defaults.
StrategySpec parse_strategy_params(std::string_view name, std::string_view json_text);
StrategySpec load_strategy_params(std::string_view name, const std::filesystem::path& path);

// "gbm:n_bars=756,drift=0,volatility=0.006,start_price=1.2,tick_size=0.0001"
GbmParams parse_synthetic_spec(std::string_view spec);

// Upper-case display label: "macd" -> "MACD".
std::string display_label(std::string_view strategy_name);

} // namespace stse
