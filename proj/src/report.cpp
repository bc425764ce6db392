#include "stse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stse/csv.hpp"
#include "stse/error.hpp"

namespace stse {

namespace {

constexpr const char* kUndefined = "NaN";

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fixed3(const std::optional<double>& v) { return v ? fixed3(*v) : kUndefined; }

std::string exact(const std::optional<double>& v) { return v ? format_exact(*v) : kUndefined; }

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_quoted(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) throw Error(ErrorCode::MalformedRow, "unterminated quote", line_no);
    fields.push_back(std::move(current));
    return fields;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<double> column_thresholds(std::span<const ReportRow> rows) {
    std::vector<double> out;
    for (const auto& c : rows.front().thresholds) out.push_back(c.threshold);
    return out;
}

const ThresholdCell* find_cell(const ReportRow& row, double threshold) {
    for (const auto& c : row.thresholds) {
        if (c.threshold == threshold) return &c;
    }
    return nullptr;
}

std::string emit_csv(std::span<const ReportRow> rows) {
    const auto thresholds = column_thresholds(rows);
    std::ostringstream out;
    out << "label,group,outcome,reasons,n_observations,years_observed,confidence,"
           "return_pct_compounded,sharpe_per_period";
    for (double t : thresholds) {
        const auto l = threshold_label(t);
        out << ",psr_" << l << ",mtrl_years_" << l << ",pass_" << l;
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.label) << ',' << csv_field(r.group) << ',' << csv_field(r.outcome) << ','
            << csv_field(join(r.reasons, ';')) << ',' << r.n_observations << ','
            << format_exact(r.years_observed) << ',' << format_exact(r.confidence) << ','
            << exact(r.return_pct) << ',' << exact(r.sharpe_per_period);
        for (double t : thresholds) {
            const auto* c = find_cell(r, t);
            out << ',' << (c ? exact(c->psr) : kUndefined) << ','
                << (c ? exact(c->mtrl_years) : kUndefined) << ','
                << (c && c->pass ? "true" : "false");
        }
        out << '\n';
    }
    return out.str();
}

std::string emit_markdown(std::span<const ReportRow> rows, std::span<const std::string> notes) {
    const auto thresholds = column_thresholds(rows);
    std::vector<std::string> groups;
    for (const auto& r : rows) {
        if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) groups.push_back(r.group);
    }

    std::ostringstream out;
    bool first_table = true;
    for (const auto& group : groups) {
        std::vector<const ReportRow*> members;
        for (const auto& r : rows) {
            if (r.group == group) members.push_back(&r);
        }
        if (!first_table) out << '\n';
        first_table = false;
        if (!group.empty()) out << "### " << group << "\n\n";

        out << "| Metric |";
        for (const auto* r : members) out << ' ' << r->label << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < members.size(); ++i) out << "---:|";
        out << '\n';

        const auto line = [&](const std::string& name, auto&& cell) {
            out << "| " << name << " |";
            for (const auto* r : members) out << ' ' << cell(*r) << " |";
            out << '\n';
        };
        line("Return (%, compounded)", [](const ReportRow& r) { return fixed3(r.return_pct); });
        line("Sharpe Ratio (per period)",
             [](const ReportRow& r) { return fixed3(r.sharpe_per_period); });
        for (double t : thresholds) {
            const auto l = threshold_label(t);
            const auto marked = [t](const ReportRow& r, bool psr_cell) {
                const auto* c = find_cell(r, t);
                if (!c) return std::string(kUndefined);
                std::string text = fixed3(psr_cell ? c->psr : c->mtrl_years);
                if (c->pass) text += " PASS";
                return text;
            };
            line("PSR(" + l + ")", [&](const ReportRow& r) { return marked(r, true); });
            line("mTRL(" + l + ") (years)", [&](const ReportRow& r) { return marked(r, false); });
        }
        line("Observed (years)", [](const ReportRow& r) { return fixed3(r.years_observed); });
        line("Verdict", [](const ReportRow& r) { return r.outcome; });
    }

    out << "\nThresholds are per-period Sharpe ratios. PASS: PSR >= "
        << format_exact(rows.front().confidence)
        << " and the observed track record is at least mTRL long.\n";
    for (const auto& n : notes) out << "\n> " << n << '\n';
    return out.str();
}

std::string emit_json(std::span<const ReportRow> rows, std::span<const std::string> notes) {
    using json = nlohmann::ordered_json;
    const auto value = [](const std::optional<double>& v) -> json {
        return v ? json(*v) : json(kUndefined);
    };
    json doc;
    doc["return_convention"] = "compounded percent over the evaluated series";
    json out_rows = json::array();
    for (const auto& r : rows) {
        json row;
        row["label"] = r.label;
        row["group"] = r.group;
        row["outcome"] = r.outcome;
        row["reasons"] = r.reasons;
        row["n_observations"] = r.n_observations;
        row["years_observed"] = r.years_observed;
        row["confidence"] = r.confidence;
        row["return_pct"] = value(r.return_pct);
        row["sharpe_per_period"] = value(r.sharpe_per_period);
        json cells = json::array();
        for (const auto& c : r.thresholds) {
            json cell;
            cell["threshold"] = c.threshold;
            cell["psr"] = value(c.psr);
            cell["mtrl_years"] = value(c.mtrl_years);
            cell["pass"] = c.pass;
            cells.push_back(std::move(cell));
        }
        row["thresholds"] = std::move(cells);
        out_rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(out_rows);
    doc["notes"] = std::vector<std::string>(notes.begin(), notes.end());
    return doc.dump(2) + "\n";
}

std::optional<double> parse_optional(const std::string& text, std::size_t line) {
    if (text == kUndefined) return std::nullopt;
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw Error(ErrorCode::MalformedRow, "bad number '" + text + "'", line);
    return v;
}

} // namespace

std::string threshold_label(double threshold) { return format_exact(threshold); }

ReportRow make_row(std::string label, std::string group, const EvaluationVerdict& verdict,
                   double confidence) {
    ReportRow row;
    row.label = std::move(label);
    row.group = std::move(group);
    row.outcome = std::string(to_string(verdict.outcome));
    for (auto r : verdict.reasons) row.reasons.emplace_back(to_string(r));
    row.n_observations = verdict.n_observed;
    row.years_observed = static_cast<double>(verdict.n_observed) / verdict.periodicity;
    row.confidence = confidence;
    row.return_pct = verdict.cumulative_return * 100.0;
    if (verdict.sharpe) row.sharpe_per_period = verdict.sharpe->per_period;
    for (const auto& t : verdict.thresholds) {
        ThresholdCell cell;
        cell.threshold = t.sr_threshold;
        cell.psr = t.psr;
        if (t.assessment) cell.mtrl_years = t.assessment->mtrl_years;
        cell.pass = t.passed;
        row.thresholds.push_back(cell);
    }
    return row;
}

ReportRow make_error_row(std::string label, std::string group, const std::string& message,
                         const EvaluationConfig& config) {
    ReportRow row;
    row.label = std::move(label);
    row.group = std::move(group);
    row.outcome = "Error";
    // ';' separates reasons in the CSV column
    std::string reason = message;
    std::replace(reason.begin(), reason.end(), ';', ',');
    row.reasons.push_back(std::move(reason));
    row.confidence = config.confidence;
    for (double t : config.sr_thresholds) row.thresholds.push_back(ThresholdCell{t, {}, {}, false});
    return row;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    if (name == "json") return ReportFormat::Json;
    throw Error(ErrorCode::InvalidConfig, "unknown report format '" + std::string(name) + "'");
}

std::string emit_report(std::span<const ReportRow> rows, ReportFormat format,
                        std::span<const std::string> notes) {
    if (rows.empty()) throw Error(ErrorCode::InvalidConfig, "report needs at least one row");
    switch (format) {
    case ReportFormat::Csv: return emit_csv(rows);
    case ReportFormat::Markdown: return emit_markdown(rows, notes);
    case ReportFormat::Json: return emit_json(rows, notes);
    }
    return {};
}

std::vector<ReportRow> parse_report_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    const auto next = [&]() {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next()) throw Error(ErrorCode::MalformedHeader, "file is empty", 1);
    const auto header = split_quoted(line, line_no);
    static const std::vector<std::string> fixed{
        "label",      "group",          "outcome",    "reasons", "n_observations",
        "years_observed", "confidence", "return_pct_compounded", "sharpe_per_period"};
    if (header.size() < fixed.size() || (header.size() - fixed.size()) % 3 != 0 ||
        !std::equal(fixed.begin(), fixed.end(), header.begin()))
        throw Error(ErrorCode::MalformedHeader, "not a report CSV header", line_no);

    std::vector<double> thresholds;
    for (std::size_t i = fixed.size(); i < header.size(); i += 3) {
        const std::string& h = header[i];
        if (h.rfind("psr_", 0) != 0)
            throw Error(ErrorCode::MalformedHeader, "expected psr_<threshold> column", line_no);
        const auto t = parse_optional(h.substr(4), line_no);
        if (!t) throw Error(ErrorCode::MalformedHeader, "bad threshold column", line_no);
        const auto l = threshold_label(*t);
        if (header[i + 1] != "mtrl_years_" + l || header[i + 2] != "pass_" + l)
            throw Error(ErrorCode::MalformedHeader, "threshold columns out of order", line_no);
        thresholds.push_back(*t);
    }

    std::vector<ReportRow> rows;
    while (next()) {
        const auto f = split_quoted(line, line_no);
        if (f.size() != header.size())
            throw Error(ErrorCode::MalformedRow, "wrong number of fields", line_no);
        ReportRow r;
        r.label = f[0];
        r.group = f[1];
        r.outcome = f[2];
        if (!f[3].empty()) {
            std::stringstream reasons(f[3]);
            std::string item;
            while (std::getline(reasons, item, ';')) r.reasons.push_back(item);
        }
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), n);
        if (f[4].empty() || ec != std::errc{} || ptr != f[4].data() + f[4].size())
            throw Error(ErrorCode::MalformedRow, "bad n_observations", line_no);
        r.n_observations = n;
        const auto years = parse_optional(f[5], line_no);
        const auto conf = parse_optional(f[6], line_no);
        if (!years || !conf) throw Error(ErrorCode::MalformedRow, "years/confidence undefined", line_no);
        r.years_observed = *years;
        r.confidence = *conf;
        r.return_pct = parse_optional(f[7], line_no);
        r.sharpe_per_period = parse_optional(f[8], line_no);
        for (std::size_t k = 0; k < thresholds.size(); ++k) {
            const std::size_t base = fixed.size() + 3 * k;
            ThresholdCell c;
            c.threshold = thresholds[k];
            c.psr = parse_optional(f[base], line_no);
            c.mtrl_years = parse_optional(f[base + 1], line_no);
            if (f[base + 2] != "true" && f[base + 2] != "false")
                throw Error(ErrorCode::MalformedRow, "pass flag must be true/false", line_no);
            c.pass = f[base + 2] == "true";
            r.thresholds.push_back(c);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace stse
