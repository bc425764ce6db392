// stse: evaluate track records, run backtests and sweeps, and print the
// minimum track record / backtest length helpers.
//
// stdout carries only the report; diagnostics go to stderr.
// Exit codes: 0 PerhapsSkillful, 10 LongerTrackRecordRequired, 20 ProbablyBad,
// 2 usage, 3 input/parse, 4 other runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stse/csv.hpp"
#include "stse/error.hpp"
#include "stse/evaluator.hpp"
#include "stse/pipeline.hpp"
#include "stse/psr.hpp"
#include "stse/report.hpp"
#include "stse/run_config.hpp"

namespace fs = std::filesystem;
using namespace stse;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitRuntime = 4;

int exit_code(Outcome outcome) {
    switch (outcome) {
    case Outcome::PerhapsSkillful: return 0;
    case Outcome::LongerTrackRecordRequired: return 10;
    case Outcome::ProbablyBad: return 20;
    }
    return kExitRuntime;
}

int exit_code(const Error& e) {
    switch (e.code()) {
    case ErrorCode::UnknownStrategy:
        return kExitUsage;
    case ErrorCode::FileNotFound:
    case ErrorCode::MalformedHeader:
    case ErrorCode::MalformedRow:
    case ErrorCode::NonMonotonicTimestamps:
    case ErrorCode::MalformedConfig:
    case ErrorCode::InvalidSeries:
    case ErrorCode::NonPositiveEquity:
    case ErrorCode::TooFewPoints:
    case ErrorCode::EmptySource:
        return kExitInput;
    default:
        return kExitRuntime;
    }
}

RunConfig load_config_or_default(const std::string& path) {
    return path.empty() ? RunConfig{} : load_run_config(path);
}

struct EvaluateArgs {
    std::string returns, equity, config, format = "markdown";
    std::optional<double> periodicity;
};

int cmd_evaluate(const EvaluateArgs& a) {
    RunConfig cfg = load_config_or_default(a.config);
    if (a.periodicity) cfg.evaluation.periodicity = *a.periodicity;
    const ReportFormat format = parse_report_format(a.format);
    const double per = cfg.evaluation.periodicity;

    std::string label;
    std::optional<ReturnSeries> series;
    if (!a.returns.empty()) {
        label = fs::path(a.returns).stem().string();
        series = parse_returns_csv(a.returns, per);
    } else {
        label = fs::path(a.equity).stem().string();
        series = equity_to_returns(parse_equity_csv(a.equity), per, cfg.backtest.return_mode, label);
    }
    const EvaluationVerdict v = evaluate(*series, cfg.evaluation, cfg.checklist);
    const std::vector<ReportRow> rows{make_row(label, label, v, cfg.evaluation.confidence)};
    std::cout << emit_report(rows, format);
    for (auto r : v.reasons) std::cerr << "reason: " << to_string(r) << '\n';
    return exit_code(v.outcome);
}

struct BacktestArgs {
    std::string strategy, params, prices, synthetic, config, out = ".", format = "markdown";
    std::uint64_t seed = 1;
    double tick_size = 0.01;
};

int cmd_backtest(const BacktestArgs& a) {
    RunConfig cfg = load_config_or_default(a.config);
    const ReportFormat format = parse_report_format(a.format);
    const StrategySpec spec =
        a.params.empty() ? default_spec(a.strategy) : load_strategy_params(a.strategy, a.params);
    validate(spec);

    AssetSpec asset;
    if (!a.prices.empty()) {
        asset.symbol = fs::path(a.prices).stem().string();
        asset.prices_path = a.prices;
        asset.tick_size = a.tick_size;
    } else {
        asset.gbm = parse_synthetic_spec(a.synthetic);
        asset.symbol = asset.gbm->symbol;
    }
    cfg.sweep.assets = {asset};
    cfg.sweep.strategies = {{spec, display_label(a.strategy)}};
    cfg.sweep.seeds = {a.seed};
    cfg.sweep.date_ranges.clear();

    const ScenarioJob job = expand_sweep(cfg).front();
    const ScenarioRun run = run_scenario(job, cfg);
    if (!run.result) {
        std::cerr << "stse: backtest failed: " << *run.error << '\n';
        return kExitRuntime;
    }
    const BacktestResult& res = *run.result;

    fs::create_directories(a.out);
    const fs::path base = fs::path(a.out) / job.stem();
    {
        std::ofstream f(base.string() + ".equity.csv", std::ios::binary);
        write_equity_csv(f, res.equity);
    }
    {
        std::ofstream f(base.string() + ".trades.csv", std::ios::binary);
        write_trades_csv(f, res);
    }
    {
        std::ofstream f(base.string() + ".returns.csv", std::ios::binary);
        write_returns_csv(f, res.returns);
    }
    std::cerr << "wrote " << base.string() << ".{equity,trades,returns}.csv (" << res.trades.size()
              << " trades, final equity " << res.final_equity() << ")\n";

    const EvaluationVerdict v = evaluate(res.returns, cfg.evaluation, cfg.checklist);
    const std::vector<ReportRow> rows{make_row(job.label, job.group, v, cfg.evaluation.confidence)};
    std::cout << emit_report(rows, format);
    return exit_code(v.outcome);
}

struct SweepArgs {
    std::string config, out;
    std::vector<std::string> formats;
    bool serial = false;
};

int cmd_sweep(const SweepArgs& a) {
    RunConfig cfg = load_run_config(a.config);
    if (!a.out.empty()) cfg.output.directory = a.out;
    if (!a.formats.empty()) {
        cfg.output.formats.clear();
        for (const auto& f : a.formats) cfg.output.formats.push_back(parse_report_format(f));
    }
    const SweepOutcome outcome = run_sweep_pipeline(cfg, !a.serial);
    write_sweep_outputs(outcome, cfg);
    std::cout << emit_report(outcome.rows, cfg.output.formats.front(), outcome.notes);
    for (const auto& run : outcome.runs)
        if (run.error) std::cerr << "scenario " << run.job.stem() << " failed: " << *run.error << '\n';
    std::cerr << "wrote " << outcome.runs.size() << " scenarios to " << cfg.output.directory.string()
              << '\n';
    return 0;
}

struct MintrackArgs {
    double sr = 0.0, threshold = 0.0, alpha = 0.95, skew = 0.0, kurt = 3.0, periodicity = 252.0;
};

int cmd_mintrack(const MintrackArgs& a) {
    if (!(a.periodicity > 0)) throw Error(ErrorCode::InvalidConfig, "periodicity must be positive");
    const double n_star = min_track_record(a.sr, a.threshold, a.skew, a.kurt, a.alpha);
    MomentSummary m{2, 0.0, 1.0, a.skew, a.kurt};
    const SkillAssessment s = mtrl(m, a.sr, a.threshold, a.alpha, a.periodicity);
    std::cout << "n_star," << format_exact(n_star) << '\n'
              << "n_floored," << s.mtrl_floored << '\n'
              << "years," << format_exact(s.mtrl_years) << '\n';
    return 0;
}

struct MinbtlArgs {
    std::size_t trials = 0;
    std::optional<double> emax;
};

int cmd_minbtl(const MinbtlArgs& a) {
    const double e = a.emax ? *a.emax : expected_max_sharpe(a.trials);
    const TrialSelectionBound b = min_backtest_length(a.trials, e);
    std::cout << "trials," << b.n_trials << '\n'
              << "expected_max_sharpe," << format_exact(b.expected_max_sharpe) << '\n'
              << "years," << format_exact(b.min_backtest_years) << '\n';
    return 0;
}

struct ReportArgs {
    std::string input, format = "markdown";
};

int cmd_report(const ReportArgs& a) {
    const ReportFormat format = parse_report_format(a.format);
    std::ifstream in(a.input, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + a.input);
    const auto rows = parse_report_csv(in);
    std::cout << emit_report(rows, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strategy track-record evaluation: PSR, minimum track record, backtests"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"csv", "markdown", "md", "json"};

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a return or equity track record");
    auto* opt_returns = evaluate_cmd->add_option("--returns", ev.returns, "CSV of timestamp,return")
                            ->check(CLI::ExistingFile);
    auto* opt_equity = evaluate_cmd->add_option("--equity", ev.equity, "CSV of timestamp,equity")
                           ->check(CLI::ExistingFile);
    opt_returns->excludes(opt_equity);
    evaluate_cmd->add_option("--config", ev.config, "JSON run configuration")->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--format", ev.format)->check(CLI::IsMember(formats));
    evaluate_cmd->add_option("--periodicity", ev.periodicity, "Observations per year");

    BacktestArgs bt;
    auto* backtest_cmd = app.add_subcommand("backtest", "Backtest one strategy on one price series");
    backtest_cmd->add_option("--strategy", bt.strategy, "macd | mama | maps | maps2 | random")
        ->required()
        ->check(CLI::IsMember({"macd", "mama", "maps", "maps2", "random"}));
    backtest_cmd->add_option("--params", bt.params, "JSON strategy parameters")
        ->check(CLI::ExistingFile);
    auto* opt_prices = backtest_cmd->add_option("--prices", bt.prices, "OHLC CSV")
                           ->check(CLI::ExistingFile);
    auto* opt_synth = backtest_cmd->add_option("--synthetic", bt.synthetic,
                                               "gbm:n_bars=..,drift=..,volatility=..");
    opt_prices->excludes(opt_synth);
    backtest_cmd->add_option("--seed", bt.seed);
    backtest_cmd->add_option("--config", bt.config, "JSON run configuration")
        ->check(CLI::ExistingFile);
    backtest_cmd->add_option("--out", bt.out, "Output directory");
    backtest_cmd->add_option("--tick-size", bt.tick_size, "Tick size of --prices");
    backtest_cmd->add_option("--format", bt.format)->check(CLI::IsMember(formats));

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a strategies x assets sweep");
    sweep_cmd->add_option("--config", sw.config, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sw.out, "Output directory (overrides config)");
    sweep_cmd->add_option("--format", sw.formats, "Report format(s)")->check(CLI::IsMember(formats));
    sweep_cmd->add_flag("--serial", sw.serial, "Use the serial reference kernels");

    MintrackArgs mt;
    auto* mintrack_cmd = app.add_subcommand("mintrack", "Minimum track record length");
    mintrack_cmd->add_option("--sr", mt.sr, "Observed per-period Sharpe ratio")->required();
    mintrack_cmd->add_option("--threshold", mt.threshold, "Per-period threshold");
    mintrack_cmd->add_option("--alpha", mt.alpha, "Confidence level");
    mintrack_cmd->add_option("--skew", mt.skew);
    mintrack_cmd->add_option("--kurt", mt.kurt, "Raw kurtosis (3 for Normal)");
    mintrack_cmd->add_option("--periodicity", mt.periodicity, "Observations per year");

    MinbtlArgs mb;
    auto* minbtl_cmd = app.add_subcommand("minbtl", "Minimum backtest length for N trials");
    minbtl_cmd->add_option("--trials", mb.trials)->required();
    minbtl_cmd->add_option("--emax", mb.emax, "Expected max annualized Sharpe over the trials");

    ReportArgs rp;
    auto* report_cmd = app.add_subcommand("report", "Re-render a CSV report");
    report_cmd->add_option("--input", rp.input, "Report CSV")->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--format", rp.format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*evaluate_cmd) {
            if (ev.returns.empty() && ev.equity.empty()) {
                std::cerr << "stse evaluate: one of --returns or --equity is required\n";
                return kExitUsage;
            }
            return cmd_evaluate(ev);
        }
        if (*backtest_cmd) {
            if (bt.prices.empty() && bt.synthetic.empty()) {
                std::cerr << "stse backtest: one of --prices or --synthetic is required\n";
                return kExitUsage;
            }
            return cmd_backtest(bt);
        }
        if (*sweep_cmd) return cmd_sweep(sw);
        if (*mintrack_cmd) return cmd_mintrack(mt);
        if (*minbtl_cmd) return cmd_minbtl(mb);
        if (*report_cmd) return cmd_report(rp);
    } catch (const Error& e) {
        std::cerr << "stse: " << e.what();
        if (e.location()) {
            const bool file_error = exit_code(e) == kExitInput && e.code() != ErrorCode::InvalidSeries &&
                                    e.code() != ErrorCode::NonPositiveEquity;
            std::cerr << (file_error ? " (line " : " (index ") << *e.location() << ')';
        }
        std::cerr << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "stse: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
