#include "stse/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stse/error.hpp"

namespace stse {

void EvaluationConfig::validate() const {
    if (sr_thresholds.empty()) throw Error(ErrorCode::InvalidConfig, "no Sharpe ratio thresholds");
    for (double t : sr_thresholds) {
        if (!std::isfinite(t)) throw Error(ErrorCode::InvalidConfig, "threshold is not finite");
    }
    if (std::find(sr_thresholds.begin(), sr_thresholds.end(), primary_threshold) ==
        sr_thresholds.end())
        throw Error(ErrorCode::InvalidConfig, "primary threshold missing from sr_thresholds");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw Error(ErrorCode::InvalidConfig, "confidence must lie in (0, 1)");
    if (min_observations < 1) throw Error(ErrorCode::InvalidConfig, "min_observations must be >= 1");
    if (!(periodicity > 0.0)) throw Error(ErrorCode::InvalidConfig, "periodicity must be positive");
    if (!std::isfinite(risk_free_per_period))
        throw Error(ErrorCode::InvalidConfig, "risk-free rate is not finite");
    if (training_window) {
        if (!(training_window->start <= training_window->end))
            throw Error(ErrorCode::InvalidConfig, "training window ends before it starts");
        if (!(training_window->embargo_periods >= 0.0))
            throw Error(ErrorCode::InvalidConfig, "embargo must be non-negative");
    }
}

const std::array<std::string_view, ConditionsChecklist::kSize>& ConditionsChecklist::names() {
    static const std::array<std::string_view, kSize> n{
        "volume_impact_negligible",      "shorting_costs_modeled",
        "transaction_costs_included",    "survivor_bias_criteria_stated",
        "data_leakage_embargo_applied",  "risk_measurement_present"};
    return n;
}

std::array<const ChecklistEntry*, ConditionsChecklist::kSize> ConditionsChecklist::entries() const {
    return {&volume_impact_negligible,      &shorting_costs_modeled,
            &transaction_costs_included,    &survivor_bias_criteria_stated,
            &data_leakage_embargo_applied,  &risk_measurement_present};
}

std::array<ChecklistEntry*, ConditionsChecklist::kSize> ConditionsChecklist::entries() {
    return {&volume_impact_negligible,      &shorting_costs_modeled,
            &transaction_costs_included,    &survivor_bias_criteria_stated,
            &data_leakage_embargo_applied,  &risk_measurement_present};
}

bool ConditionsChecklist::all_yes() const {
    const auto e = entries();
    return std::all_of(e.begin(), e.end(), [](const auto* x) { return x->answer == Answer::Yes; });
}

bool ConditionsChecklist::any_no() const {
    const auto e = entries();
    return std::any_of(e.begin(), e.end(), [](const auto* x) { return x->answer == Answer::No; });
}

ConditionsChecklist ConditionsChecklist::all(Answer answer) {
    ConditionsChecklist c;
    for (auto* e : c.entries()) e->answer = answer;
    return c;
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::ProbablyBad: return "ProbablyBad";
    case Outcome::LongerTrackRecordRequired: return "LongerTrackRecordRequired";
    case Outcome::PerhapsSkillful: return "PerhapsSkillful";
    }
    return "Unknown";
}

std::string_view to_string(ReasonCode code) {
    switch (code) {
    case ReasonCode::DegenerateReturns: return "DegenerateReturns";
    case ReasonCode::ChecklistFailed: return "ChecklistFailed";
    case ReasonCode::ChecklistIncomplete: return "ChecklistIncomplete";
    case ReasonCode::BelowObservationFloor: return "BelowObservationFloor";
    case ReasonCode::ThresholdNotExceeded: return "ThresholdNotExceeded";
    case ReasonCode::PathologicalMoments: return "PathologicalMoments";
    case ReasonCode::TrackRecordTooShort: return "TrackRecordTooShort";
    case ReasonCode::SkillDemonstrated: return "SkillDemonstrated";
    }
    return "Unknown";
}

std::string_view to_string(Answer answer) {
    switch (answer) {
    case Answer::Unknown: return "unknown";
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    }
    return "unknown";
}

const ThresholdResult& EvaluationVerdict::at(double sr_threshold) const {
    for (const auto& t : thresholds) {
        if (t.sr_threshold == sr_threshold) return t;
    }
    throw Error(ErrorCode::InvalidConfig, "threshold not evaluated");
}

void check_embargo(const ReturnSeries& series, const EvaluationConfig& config) {
    if (!config.training_window) return;
    if (!series.has_timestamps())
        throw Error(ErrorCode::EmbargoViolation,
                    "series has no timestamps but a training window is declared");
    const auto& window = *config.training_window;
    const double period_seconds = 365.25 * 86400.0 / series.periodicity();
    const auto gap = std::chrono::seconds(
        static_cast<long long>(std::ceil(window.embargo_periods * period_seconds)));
    const Timestamp blocked_until = window.end + gap;

    const auto stamps = series.timestamps();
    for (std::size_t i = 0; i < stamps.size(); ++i) {
        if (stamps[i] >= window.start && stamps[i] <= blocked_until) {
            throw Error(ErrorCode::EmbargoViolation,
                        "observation at " + format_timestamp(stamps[i]) +
                            " falls inside the training window or its embargo (ends " +
                            format_timestamp(blocked_until) + ")",
                        i);
        }
    }
}

EvaluationVerdict evaluate(const ReturnSeries& series, const EvaluationConfig& config,
                           const ConditionsChecklist& checklist) {
    config.validate();
    check_embargo(series, config);

    EvaluationVerdict v;
    v.checklist = checklist;
    v.n_observed = series.size();
    v.periodicity = series.periodicity();
    v.cumulative_return = series.cumulative_return();
    for (double t : config.sr_thresholds) v.thresholds.push_back(ThresholdResult{t, {}, {}, false});

    const bool checklist_failed = checklist.any_no();
    if (checklist_failed) v.reasons.push_back(ReasonCode::ChecklistFailed);
    else if (!checklist.all_yes()) v.reasons.push_back(ReasonCode::ChecklistIncomplete);

    const auto decide = [&](Outcome outcome, ReasonCode reason) {
        v.reasons.push_back(reason);
        v.outcome = checklist_failed ? Outcome::ProbablyBad : outcome;
        return v;
    };

    if (series.size() < 2) return decide(Outcome::LongerTrackRecordRequired,
                                         ReasonCode::BelowObservationFloor);
    try {
        v.moments = moments(series);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroVariance) throw;
        return decide(Outcome::ProbablyBad, ReasonCode::DegenerateReturns);
    }
    v.sharpe = sharpe(*v.moments, series.periodicity(), config.risk_free_per_period);
    const double sr = v.sharpe->per_period;
    const MomentSummary& m = *v.moments;

    for (auto& t : v.thresholds) {
        try {
            t.psr = psr(m, sr, t.sr_threshold);
            if (sr > t.sr_threshold) {
                t.assessment = mtrl(m, sr, t.sr_threshold, config.confidence, series.periodicity(),
                                    config.min_observations);
                t.passed = t.assessment->passed();
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NonPositiveVarianceTerm) throw;
            t.psr.reset();
            t.assessment.reset();
        }
    }

    if (series.size() < config.min_observations)
        return decide(Outcome::LongerTrackRecordRequired, ReasonCode::BelowObservationFloor);

    const ThresholdResult& primary = v.at(config.primary_threshold);
    if (!primary.psr)
        return decide(Outcome::LongerTrackRecordRequired, ReasonCode::PathologicalMoments);
    if (!(sr > config.primary_threshold))
        return decide(Outcome::ProbablyBad, ReasonCode::ThresholdNotExceeded);

    const SkillAssessment& a = *primary.assessment;
    if (primary.passed) {
        if (checklist.all_yes()) return decide(Outcome::PerhapsSkillful, ReasonCode::SkillDemonstrated);
        v.outcome = checklist_failed ? Outcome::ProbablyBad : Outcome::LongerTrackRecordRequired;
        return v;
    }
    if (a.n_observed >= a.mtrl_floored && a.psr < a.confidence)
        return decide(Outcome::ProbablyBad, ReasonCode::ThresholdNotExceeded);
    return decide(Outcome::LongerTrackRecordRequired, ReasonCode::TrackRecordTooShort);
}

ScenarioOutcome evaluate_isolated(const Scenario& scenario, const EvaluationConfig& config,
                                  const ConditionsChecklist& checklist) {
    ScenarioOutcome out;
    out.label = scenario.label;
    try {
        out.verdict = evaluate(scenario.series, config, checklist);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

void attach_min_backtest(MatrixResult& result, const std::vector<Scenario>& scenarios,
                         std::optional<double> expected_max) {
    result.longest_years = 0.0;
    for (const auto& s : scenarios) result.longest_years = std::max(result.longest_years, s.series.years());

    const std::size_t n = scenarios.size();
    if (!expected_max && n >= 2) expected_max = expected_max_sharpe(n);
    if (!expected_max) return;
    result.min_backtest = min_backtest_length(n, *expected_max);
    if (result.longest_years < result.min_backtest->min_backtest_years) {
        std::ostringstream msg;
        msg << "longest track record (" << result.longest_years << " years) is shorter than MinBTL ("
            << result.min_backtest->min_backtest_years << " years) for " << n << " trials";
        result.warning = msg.str();
    }
}

MatrixResult evaluate_matrix_serial(const std::vector<Scenario>& scenarios,
                                    const EvaluationConfig& config,
                                    const ConditionsChecklist& checklist,
                                    std::optional<double> expected_max) {
    if (scenarios.empty()) throw Error(ErrorCode::InvalidConfig, "no scenarios to evaluate");
    MatrixResult result;
    result.scenarios.reserve(scenarios.size());
    for (const auto& s : scenarios) result.scenarios.push_back(evaluate_isolated(s, config, checklist));
    attach_min_backtest(result, scenarios, expected_max);
    return result;
}

} // namespace stse
