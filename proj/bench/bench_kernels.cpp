// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the
// thread count; the serial variants ignore it.

#include <benchmark/benchmark.h>

#include <vector>

#include "stse/evaluator.hpp"
#include "stse/kernels.hpp"
#include "stse/pipeline.hpp"
#include "stse/rng.hpp"
#include "stse/run_config.hpp"

using namespace stse;

namespace {

CalibrationSpec calibration_spec(benchmark::State& state) {
    CalibrationSpec spec;
    spec.n_series = static_cast<std::size_t>(state.range(0));
    return spec;
}

void BM_CalibrationSerial(benchmark::State& state) {
    const auto spec = calibration_spec(state);
    for (auto _ : state) benchmark::DoNotOptimize(psr_calibration_serial(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CalibrationOmp(benchmark::State& state) {
    const auto spec = calibration_spec(state);
    for (auto _ : state) benchmark::DoNotOptimize(psr_calibration(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

BaselineSpec baseline_spec(benchmark::State& state) {
    BaselineSpec spec;
    spec.runs = static_cast<std::size_t>(state.range(0));
    spec.prices.n_bars = 756;
    spec.backtest.proportional_cost = 0.0002;
    spec.backtest.fixed_cost = 1.0;
    return spec;
}

void BM_BaselineSerial(benchmark::State& state) {
    const auto spec = baseline_spec(state);
    for (auto _ : state) benchmark::DoNotOptimize(random_baseline_serial(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BaselineOmp(benchmark::State& state) {
    const auto spec = baseline_spec(state);
    for (auto _ : state) benchmark::DoNotOptimize(random_baseline(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<Scenario> matrix_scenarios(std::size_t count) {
    std::vector<Scenario> out;
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng(derive_seed(9, k));
        std::vector<double> v(1000);
        for (auto& x : v) x = 0.0005 + 0.01 * rng.normal();
        out.push_back({ReturnSeries(v, 252), "s" + std::to_string(k)});
    }
    return out;
}

void BM_MatrixSerial(benchmark::State& state) {
    const auto scenarios = matrix_scenarios(static_cast<std::size_t>(state.range(0)));
    const EvaluationConfig cfg;
    const auto checklist = ConditionsChecklist::all(Answer::Yes);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_matrix_serial(scenarios, cfg, checklist));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MatrixOmp(benchmark::State& state) {
    const auto scenarios = matrix_scenarios(static_cast<std::size_t>(state.range(0)));
    const EvaluationConfig cfg;
    const auto checklist = ConditionsChecklist::all(Answer::Yes);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_matrix(scenarios, cfg, checklist));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Sweep(benchmark::State& state, bool parallel) {
    const auto cfg = load_run_config(STSE_SOURCE_DIR "/configs/fx_sweep.json");
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep_pipeline(cfg, parallel));
}

} // namespace

BENCHMARK(BM_CalibrationSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CalibrationOmp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BaselineSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BaselineOmp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MatrixSerial)->Arg(25)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatrixOmp)->Arg(25)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Sweep, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, omp, true)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
