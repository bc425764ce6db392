// report.hpp
// Evaluation reports shaped like the classic strategy tables: Return, Sharpe
// Ratio, then PSR(t) and mTRL(t) for every configured threshold t.
//
// Return convention: compounded return over the evaluated series, in percent.
// Undefined values (degenerate series, SR <= t for an mTRL, failed scenarios)
// are rendered as "NaN". Markdown uses 3 decimals; CSV and JSON carry the
// shortest exact representation so they parse back bit for bit.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stse/evaluator.hpp"

namespace stse {

struct ThresholdCell {
    double threshold = 0.0;
    std::optional<double> psr;
    std::optional<double> mtrl_years;
    bool pass = false;   // psr >= confidence and observed years >= mTRL

    bool operator==(const ThresholdCell&) const = default;
};

struct ReportRow {
    std::string label;
    std::string group;   // markdown prints one table per group
    std::string outcome; // verdict name, or "Error"
    std::vector<std::string> reasons;
    std::size_t n_observations = 0;
    double years_observed = 0.0;
    double confidence = 0.95;
    std::optional<double> return_pct;
    std::optional<double> sharpe_per_period;
    std::vector<ThresholdCell> thresholds;

    bool operator==(const ReportRow&) const = default;
};

ReportRow make_row(std::string label, std::string group, const EvaluationVerdict& verdict,
                   double confidence);

// Row for a scenario that failed before a verdict existed.
ReportRow make_error_row(std::string label, std::string group, const std::string& message,
                         const EvaluationConfig& config);

enum class ReportFormat { Csv, Markdown, Json };

// Throws InvalidConfig for an unknown name ("csv", "markdown"/"md", "json").
ReportFormat parse_report_format(std::string_view name);

// Deterministic for identical rows. `notes` are appended to markdown and JSON.
std::string emit_report(std::span<const ReportRow> rows, ReportFormat format,
                        std::span<const std::string> notes = {});

// Inverse of the CSV emitter. Throws MalformedHeader / MalformedRow.
std::vector<ReportRow> parse_report_csv(std::istream& in);

// "0", "0.1", "-0.05": threshold labels used in column names.
std::string threshold_label(double threshold);

} // namespace stse
