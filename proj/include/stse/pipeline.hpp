// pipeline.hpp
// Scenario sweeps: expand strategies x assets x date ranges x seeds into
// backtest jobs, run them, evaluate the resulting track records and build the
// report rows.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stse/backtest.hpp"
#include "stse/evaluator.hpp"
#include "stse/report.hpp"
#include "stse/run_config.hpp"

namespace stse {

struct ScenarioJob {
    std::string label;       // strategy label, e.g. "MACD"
    std::string group;       // asset symbol, plus range/seed when those vary
    StrategySpec strategy;
    std::size_t asset_index = 0;
    std::optional<DateRange> range;
    std::uint64_t seed = 0;  // sweep seed this job belongs to

    // Deterministic file-name stem, e.g. "EURUSD__MACD".
    std::string stem() const;
};

// Jobs are ordered asset-major (assets, then ranges, then seeds, then
// strategies) so each group's strategies are adjacent.
std::vector<ScenarioJob> expand_sweep(const RunConfig& config);

// Prices for one job. Synthetic assets draw from derive_seed(seed, asset_index)
// so every strategy on an asset sees the same path.
PriceSeries load_asset(const AssetSpec& asset, std::uint64_t seed, std::size_t asset_index,
                       double periodicity);

struct ScenarioRun {
    ScenarioJob job;
    std::optional<BacktestResult> result;
    std::optional<std::string> error;
};

// Never throws; failures land in ScenarioRun::error.
ScenarioRun run_scenario(const ScenarioJob& job, const RunConfig& config);

struct SweepOutcome {
    std::vector<ScenarioRun> runs;
    MatrixResult matrix;            // evaluated scenarios, successful runs only
    std::vector<ReportRow> rows;    // one per job, job order
    std::vector<std::string> notes; // MinBTL summary and warnings
};

// Runs and evaluates a whole sweep. `parallel` selects the OpenMP kernels.
SweepOutcome run_sweep_pipeline(const RunConfig& config, bool parallel = true);

// Writes scenarios/<stem>.equity.csv and trades/<stem>.trades.csv for every
// successful run, and report.<ext> per configured format.
void write_sweep_outputs(const SweepOutcome& outcome, const RunConfig& config);

std::string report_extension(ReportFormat format);

} // namespace stse
