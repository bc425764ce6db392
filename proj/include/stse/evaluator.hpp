// evaluator.hpp
// Significance evaluation of a track record: conditions checklist, per-threshold
// skill assessments and the three-way verdict.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stse/metrics.hpp"
#include "stse/psr.hpp"
#include "stse/time.hpp"

namespace stse {

struct TrainingWindow {
    Timestamp start;
    Timestamp end;
    // Gap after `end`, in observation periods, during which evaluation data
    // is not allowed to start. One period lasts 365.25 days / periodicity.
    double embargo_periods = 1.0;
};

struct EvaluationConfig {
    std::vector<double> sr_thresholds{0.0, 0.1};
    // The verdict is decided at this threshold; it must appear in sr_thresholds.
    double primary_threshold = 0.0;
    double confidence = 0.95;
    std::size_t min_observations = kMinTrackRecordFloor;
    // Observations per year assumed when building series from files. The
    // evaluator itself uses the periodicity carried by each ReturnSeries.
    double periodicity = 252.0;
    double risk_free_per_period = 0.0;
    std::optional<TrainingWindow> training_window;

    // Throws InvalidConfig.
    void validate() const;
};

enum class Answer { Unknown, Yes, No };

struct ChecklistEntry {
    Answer answer = Answer::Unknown;
    std::string note;
};

// Operator-attested conditions. Unknown never counts as yes.
struct ConditionsChecklist {
    ChecklistEntry volume_impact_negligible;
    ChecklistEntry shorting_costs_modeled;
    ChecklistEntry transaction_costs_included;
    ChecklistEntry survivor_bias_criteria_stated;
    ChecklistEntry data_leakage_embargo_applied;
    ChecklistEntry risk_measurement_present;

    static constexpr std::size_t kSize = 6;
    static const std::array<std::string_view, kSize>& names();
    std::array<const ChecklistEntry*, kSize> entries() const;
    std::array<ChecklistEntry*, kSize> entries();

    bool all_yes() const;
    bool any_no() const;

    static ConditionsChecklist all(Answer answer);
};

enum class Outcome { ProbablyBad, LongerTrackRecordRequired, PerhapsSkillful };

enum class ReasonCode {
    DegenerateReturns,        // zero variance: the strategy never moved the equity
    ChecklistFailed,          // some checklist entry answered no
    ChecklistIncomplete,      // some checklist entry unknown
    BelowObservationFloor,    // fewer observations than min_observations
    ThresholdNotExceeded,     // SR <= SR* at the primary threshold
    PathologicalMoments,      // non-positive Sharpe variance term
    TrackRecordTooShort,      // n_observed < mTRL at the primary threshold
    SkillDemonstrated,        // PSR >= alpha with a long enough record
};

std::string_view to_string(Outcome outcome);
std::string_view to_string(ReasonCode code);
std::string_view to_string(Answer answer);

// Assessment at one threshold. psr / mTRL fields are nullopt when undefined
// (degenerate series, pathological moments, or SR <= SR* for the mTRL).
struct ThresholdResult {
    double sr_threshold = 0.0;
    std::optional<double> psr;
    std::optional<SkillAssessment> assessment;   // present when mTRL is finite
    bool passed = false;
};

struct EvaluationVerdict {
    Outcome outcome = Outcome::LongerTrackRecordRequired;
    std::vector<ThresholdResult> thresholds;   // same order as config.sr_thresholds
    ConditionsChecklist checklist;
    std::vector<ReasonCode> reasons;
    std::size_t n_observed = 0;
    double periodicity = 0.0;
    double cumulative_return = 0.0;
    std::optional<MomentSummary> moments;
    std::optional<SharpeEstimate> sharpe;

    const ThresholdResult& at(double sr_threshold) const;
};

// Throws EmbargoViolation when the series overlaps the training window plus
// embargo, or carries no timestamps while a window is declared.
void check_embargo(const ReturnSeries& series, const EvaluationConfig& config);

// Deterministic; no clock or RNG involved. Throws InvalidConfig and
// EmbargoViolation; every statistical degeneracy becomes a verdict instead.
EvaluationVerdict evaluate(const ReturnSeries& series, const EvaluationConfig& config,
                           const ConditionsChecklist& checklist);

struct Scenario {
    ReturnSeries series;
    std::string label;
};

struct ScenarioOutcome {
    std::string label;
    std::optional<EvaluationVerdict> verdict;
    std::optional<std::string> error;   // set instead of verdict when the scenario failed
};

struct MatrixResult {
    std::vector<ScenarioOutcome> scenarios;   // input order
    std::optional<TrialSelectionBound> min_backtest;
    double longest_years = 0.0;
    std::optional<std::string> warning;
};

// Batch evaluation plus the MinBTL check for N = scenario count. When
// expected_max is not supplied it comes from expected_max_sharpe(N) (N >= 2).
// The OpenMP version lives in kernels.hpp; this is the reference path.
MatrixResult evaluate_matrix_serial(const std::vector<Scenario>& scenarios,
                                    const EvaluationConfig& config,
                                    const ConditionsChecklist& checklist,
                                    std::optional<double> expected_max = std::nullopt);

// Fills in the MinBTL bound and warning of an already evaluated batch.
void attach_min_backtest(MatrixResult& result, const std::vector<Scenario>& scenarios,
                         std::optional<double> expected_max);

// Evaluate one scenario, converting exceptions into ScenarioOutcome::error.
ScenarioOutcome evaluate_isolated(const Scenario& scenario, const EvaluationConfig& config,
                                  const ConditionsChecklist& checklist);

} // namespace stse
