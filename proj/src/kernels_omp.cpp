#include <omp.h>

#include <vector>

#include "kernel_items.hpp"

namespace stse {

MatrixResult evaluate_matrix(const std::vector<Scenario>& scenarios, const EvaluationConfig& config,
                             const ConditionsChecklist& checklist,
                             std::optional<double> expected_max) {
    if (scenarios.empty()) throw Error(ErrorCode::InvalidConfig, "no scenarios to evaluate");
    config.validate();
    MatrixResult result;
    result.scenarios.resize(scenarios.size());
    const auto n = static_cast<long>(scenarios.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        result.scenarios[static_cast<std::size_t>(i)] =
            evaluate_isolated(scenarios[static_cast<std::size_t>(i)], config, checklist);
    }
    attach_min_backtest(result, scenarios, expected_max);
    return result;
}

std::vector<ScenarioRun> run_sweep(const std::vector<ScenarioJob>& jobs, const RunConfig& config) {
    std::vector<std::optional<ScenarioRun>> slots(jobs.size());
    const auto n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        slots[k] = run_scenario(jobs[k], config);
    }
    std::vector<ScenarioRun> runs;
    runs.reserve(jobs.size());
    for (auto& s : slots) runs.push_back(std::move(*s));
    return runs;
}

CalibrationResult psr_calibration(const CalibrationSpec& spec) {
    std::vector<detail::CalibrationItem> items(spec.n_series);
    const auto n = static_cast<long>(spec.n_series);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        items[static_cast<std::size_t>(i)] =
            detail::calibration_item(spec, static_cast<std::size_t>(i));
    }
    return detail::reduce(spec, items);
}

BaselineResult random_baseline(const BaselineSpec& spec) {
    std::vector<detail::BaselineItem> items(spec.runs);
    const auto n = static_cast<long>(spec.runs);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        items[static_cast<std::size_t>(i)] =
            detail::baseline_item(spec, static_cast<std::size_t>(i));
    }
    return detail::reduce(items);
}

} // namespace stse
