#include <vector>

#include "kernel_items.hpp"
#include "stse/rng.hpp"

namespace stse {

namespace detail {

CalibrationItem calibration_item(const CalibrationSpec& spec, std::size_t index) {
    Rng rng(derive_seed(spec.seed, index));
    std::vector<double> returns(spec.n_obs);
    const double mean = spec.true_sharpe * spec.volatility;
    for (auto& r : returns) r = mean + spec.volatility * rng.normal();
    const MomentSummary m = moments(returns);
    const double sr = sharpe(m, 1.0).per_period;
    return {psr(m, sr, spec.threshold) >= spec.confidence, sr, m.kurtosis};
}

BaselineItem baseline_item(const BaselineSpec& spec, std::size_t index) {
    BaselineItem item;
    try {
        const PriceSeries prices = gbm_prices(derive_seed(spec.seed, 2 * index), spec.prices);
        RandomTraderParams trader;
        trader.seed = derive_seed(spec.seed, 2 * index + 1);
        trader.holding_period = spec.holding_period;
        const BacktestResult result = run_backtest(trader, prices, spec.backtest);
        item.final_equity = result.final_equity();
        const EvaluationVerdict v = evaluate(result.returns, spec.evaluation, spec.checklist);
        item.skillful = v.outcome == Outcome::PerhapsSkillful;
        item.ok = true;
    } catch (const std::exception&) {
        item.ok = false;
    }
    return item;
}

CalibrationResult reduce(const CalibrationSpec& spec, const std::vector<CalibrationItem>& items) {
    CalibrationResult out;
    out.series = spec.n_series;
    double sr_sum = 0.0, kurt_sum = 0.0;
    for (const auto& it : items) {
        out.rejections += it.rejected ? 1 : 0;
        sr_sum += it.sharpe;
        kurt_sum += it.kurtosis;
    }
    if (!items.empty()) {
        out.mean_sharpe = sr_sum / static_cast<double>(items.size());
        out.mean_kurtosis = kurt_sum / static_cast<double>(items.size());
    }
    return out;
}

BaselineResult reduce(const std::vector<BaselineItem>& items) {
    BaselineResult out;
    out.runs = items.size();
    double sum = 0.0;
    std::size_t ok = 0;
    for (const auto& it : items) {
        out.final_equity.push_back(it.final_equity);
        if (!it.ok) {
            ++out.failed;
            continue;
        }
        ++ok;
        sum += it.final_equity;
        out.skillful += it.skillful ? 1 : 0;
    }
    out.mean_final_equity = ok ? sum / static_cast<double>(ok) : 0.0;
    return out;
}

} // namespace detail

std::vector<ScenarioRun> run_sweep_serial(const std::vector<ScenarioJob>& jobs,
                                          const RunConfig& config) {
    std::vector<ScenarioRun> runs;
    runs.reserve(jobs.size());
    for (const auto& job : jobs) runs.push_back(run_scenario(job, config));
    return runs;
}

CalibrationResult psr_calibration_serial(const CalibrationSpec& spec) {
    std::vector<detail::CalibrationItem> items(spec.n_series);
    for (std::size_t i = 0; i < spec.n_series; ++i) items[i] = detail::calibration_item(spec, i);
    return detail::reduce(spec, items);
}

BaselineResult random_baseline_serial(const BaselineSpec& spec) {
    std::vector<detail::BaselineItem> items(spec.runs);
    for (std::size_t i = 0; i < spec.runs; ++i) items[i] = detail::baseline_item(spec, i);
    return detail::reduce(items);
}

} // namespace stse
