// kernels.hpp
// Data-parallel loops of the toolkit. Every kernel has a serial reference
// (suffix _serial) and an OpenMP version with the same signature. Work items
// get independent seeds and write to their own slot, and reductions run in
// index order afterwards, so both versions return bit-identical results.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stse/backtest.hpp"
#include "stse/evaluator.hpp"
#include "stse/pipeline.hpp"

namespace stse {

// --- batch evaluation -------------------------------------------------------

MatrixResult evaluate_matrix(const std::vector<Scenario>& scenarios, const EvaluationConfig& config,
                             const ConditionsChecklist& checklist,
                             std::optional<double> expected_max = std::nullopt);

// --- scenario sweeps --------------------------------------------------------

std::vector<ScenarioRun> run_sweep_serial(const std::vector<ScenarioJob>& jobs,
                                          const RunConfig& config);
std::vector<ScenarioRun> run_sweep(const std::vector<ScenarioJob>& jobs, const RunConfig& config);

// --- PSR false-positive calibration -----------------------------------------

// i.i.d. Gaussian series with a known per-period Sharpe ratio; counts how
// often PSR(threshold) >= confidence.
struct CalibrationSpec {
    std::size_t n_series = 10000;
    std::size_t n_obs = 300;
    double true_sharpe = 0.0;
    double volatility = 0.01;
    double threshold = 0.0;
    double confidence = 0.95;
    std::uint64_t seed = 1;
};

struct CalibrationResult {
    std::size_t series = 0;
    std::size_t rejections = 0;   // PSR >= confidence
    double mean_sharpe = 0.0;
    double mean_kurtosis = 0.0;

    double rate() const { return series ? static_cast<double>(rejections) / series : 0.0; }
};

CalibrationResult psr_calibration_serial(const CalibrationSpec& spec);
CalibrationResult psr_calibration(const CalibrationSpec& spec);

// --- random-trader baseline -------------------------------------------------

// Random trader on driftless GBM, one fresh path and trader seed per run.
struct BaselineSpec {
    std::size_t runs = 1000;
    GbmParams prices;
    BacktestConfig backtest;
    EvaluationConfig evaluation;
    ConditionsChecklist checklist = ConditionsChecklist::all(Answer::Yes);
    std::size_t holding_period = 5;
    std::uint64_t seed = 1;
};

struct BaselineResult {
    std::size_t runs = 0;
    std::size_t skillful = 0;     // PerhapsSkillful verdicts
    std::size_t failed = 0;       // runs that threw
    double mean_final_equity = 0.0;
    std::vector<double> final_equity;   // per run, run order
};

BaselineResult random_baseline_serial(const BaselineSpec& spec);
BaselineResult random_baseline(const BaselineSpec& spec);

} // namespace stse
