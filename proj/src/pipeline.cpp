#include "stse/pipeline.hpp"

#include <cstdio>
#include <fstream>

#include "stse/csv.hpp"
#include "stse/error.hpp"
#include "stse/kernels.hpp"
#include "stse/rng.hpp"

namespace stse {

namespace {

std::string sanitize(std::string_view s) {
    std::string out;
    for (char c : s) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                          c == '-' || c == '.';
        out.push_back(keep ? c : '_');
    }
    return out;
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

std::string ScenarioJob::stem() const { return sanitize(group) + "__" + sanitize(label); }

std::vector<ScenarioJob> expand_sweep(const RunConfig& config) {
    const SweepSpec& sw = config.sweep;
    if (sw.strategies.empty() || sw.assets.empty() || sw.seeds.empty())
        throw Error(ErrorCode::InvalidConfig, "sweep needs at least one strategy, asset and seed");

    std::vector<std::optional<DateRange>> ranges;
    if (sw.date_ranges.empty()) ranges.push_back(std::nullopt);
    for (const auto& r : sw.date_ranges) ranges.push_back(r);

    std::vector<ScenarioJob> jobs;
    for (std::size_t a = 0; a < sw.assets.size(); ++a) {
        for (const auto& range : ranges) {
            for (auto seed : sw.seeds) {
                std::string group = sw.assets[a].symbol;
                if (sw.date_ranges.size() > 1)
                    group += " " + format_timestamp(range->from) + ".." + format_timestamp(range->to);
                if (sw.seeds.size() > 1) group += " seed=" + std::to_string(seed);
                for (const auto& s : sw.strategies) {
                    jobs.push_back({s.label, group, s.spec, a, range, seed});
                }
            }
        }
    }
    return jobs;
}

PriceSeries load_asset(const AssetSpec& asset, std::uint64_t seed, std::size_t asset_index,
                       double periodicity) {
    const std::uint64_t s = derive_seed(seed, asset_index);
    if (asset.gbm) {
        GbmParams p = *asset.gbm;
        p.symbol = asset.symbol;
        return gbm_prices(s, p);
    }
    if (asset.prices_path) {
        PriceSeries raw = parse_ohlc_csv(asset.prices_path->string(), asset.tick_size);
        return PriceSeries(std::vector<Bar>(raw.bars().begin(), raw.bars().end()), asset.symbol,
                           asset.tick_size);
    }
    if (asset.bootstrap) {
        const auto& b = *asset.bootstrap;
        const ReturnSeries src = parse_returns_csv(b.returns_path.string(), periodicity);
        return bootstrap_prices(s, src.values(), b.n_bars, b.start_price, b.tick_size, asset.symbol);
    }
    throw Error(ErrorCode::InvalidConfig, "asset '" + asset.symbol + "' has no price source");
}

ScenarioRun run_scenario(const ScenarioJob& job, const RunConfig& config) {
    ScenarioRun run{job, std::nullopt, std::nullopt};
    try {
        PriceSeries prices = load_asset(config.sweep.assets.at(job.asset_index), job.seed,
                                        job.asset_index, config.evaluation.periodicity);
        if (job.range) prices = prices.slice(job.range->from, job.range->to);
        StrategySpec spec = job.strategy;
        if (auto* rt = std::get_if<RandomTraderParams>(&spec))
            rt->seed = derive_seed(rt->seed ^ job.seed, job.asset_index);
        run.result = run_backtest(spec, prices, config.backtest);
    } catch (const std::exception& e) {
        run.error = e.what();
    }
    return run;
}

SweepOutcome run_sweep_pipeline(const RunConfig& config, bool parallel) {
    config.evaluation.validate();
    SweepOutcome out;
    const auto jobs = expand_sweep(config);
    out.runs = parallel ? run_sweep(jobs, config) : run_sweep_serial(jobs, config);

    std::vector<Scenario> scenarios;
    std::vector<std::size_t> scenario_of(out.runs.size(), SIZE_MAX);
    for (std::size_t i = 0; i < out.runs.size(); ++i) {
        if (!out.runs[i].result) continue;
        scenario_of[i] = scenarios.size();
        scenarios.push_back({out.runs[i].result->returns, out.runs[i].job.stem()});
    }

    if (!scenarios.empty()) {
        out.matrix = parallel ? evaluate_matrix(scenarios, config.evaluation, config.checklist,
                                                config.sweep.expected_max_sharpe)
                              : evaluate_matrix_serial(scenarios, config.evaluation,
                                                       config.checklist,
                                                       config.sweep.expected_max_sharpe);
    }

    for (std::size_t i = 0; i < out.runs.size(); ++i) {
        const auto& run = out.runs[i];
        const auto& job = run.job;
        if (scenario_of[i] == SIZE_MAX) {
            out.rows.push_back(make_error_row(job.label, job.group, *run.error, config.evaluation));
            continue;
        }
        const auto& so = out.matrix.scenarios[scenario_of[i]];
        if (so.verdict)
            out.rows.push_back(make_row(job.label, job.group, *so.verdict,
                                        config.evaluation.confidence));
        else
            out.rows.push_back(make_error_row(job.label, job.group, *so.error, config.evaluation));
    }

    if (out.matrix.min_backtest) {
        const auto& b = *out.matrix.min_backtest;
        out.notes.push_back("MinBTL for " + std::to_string(b.n_trials) + " trials: " +
                            fixed3(b.min_backtest_years) + " years (expected max annualized SR " +
                            fixed3(b.expected_max_sharpe) + "); longest track record " +
                            fixed3(out.matrix.longest_years) + " years.");
        if (out.matrix.warning)
            out.notes.push_back("Warning: longest track record is shorter than MinBTL; the best "
                                "scenario may be a selection artefact.");
    }
    std::size_t failed = 0;
    for (const auto& r : out.rows) failed += r.outcome == "Error" ? 1 : 0;
    if (failed) out.notes.push_back(std::to_string(failed) + " scenario(s) failed; see Error rows.");
    return out;
}

std::string report_extension(ReportFormat format) {
    switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "md";
    case ReportFormat::Json: return "json";
    }
    return "txt";
}

void write_sweep_outputs(const SweepOutcome& outcome, const RunConfig& config) {
    namespace fs = std::filesystem;
    const fs::path dir = config.output.directory;
    fs::create_directories(dir / "scenarios");
    fs::create_directories(dir / "trades");
    for (const auto& run : outcome.runs) {
        if (!run.result) continue;
        std::ofstream eq(dir / "scenarios" / (run.job.stem() + ".equity.csv"), std::ios::binary);
        write_equity_csv(eq, run.result->equity);
        std::ofstream tr(dir / "trades" / (run.job.stem() + ".trades.csv"), std::ios::binary);
        write_trades_csv(tr, *run.result);
    }
    for (auto format : config.output.formats) {
        std::ofstream rep(dir / ("report." + report_extension(format)), std::ios::binary);
        rep << emit_report(outcome.rows, format, outcome.notes);
        if (!rep) throw Error(ErrorCode::InvalidConfig, "cannot write report to " + dir.string());
    }
}

} // namespace stse
