#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

#include "stse/csv.hpp"
#include "stse/error.hpp"
#include "stse/pipeline.hpp"

using namespace stse;
namespace fs = std::filesystem;

namespace {

RunConfig bundled() { return load_run_config(STSE_SOURCE_DIR "/configs/fx_sweep.json"); }

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(STSE_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("sweep expansion is asset-major with unique stems") {
    const auto jobs = expand_sweep(bundled());
    REQUIRE(jobs.size() == 25);
    CHECK(jobs[0].group == "EURUSD");
    CHECK(jobs[0].label == "MACD");
    CHECK(jobs[4].label == "RANDOM");
    CHECK(jobs[5].group == "EURJPY");
    CHECK(jobs[0].stem() == "EURUSD__MACD");
    std::set<std::string> stems;
    for (const auto& j : jobs) stems.insert(j.stem());
    CHECK(stems.size() == 25);
}

TEST_CASE("multiple seeds and ranges extend the group") {
    auto cfg = bundled();
    cfg.sweep.seeds = {1, 2};
    cfg.sweep.date_ranges = {{*parse_timestamp("2018-01-01"), *parse_timestamp("2018-12-31")},
                             {*parse_timestamp("2019-01-01"), *parse_timestamp("2019-12-31")}};
    const auto jobs = expand_sweep(cfg);
    REQUIRE(jobs.size() == 100);
    CHECK(jobs[0].group == "EURUSD 2018-01-01..2018-12-31 seed=1");
    std::set<std::string> stems;
    for (const auto& j : jobs) stems.insert(j.stem());
    CHECK(stems.size() == 100);
}

TEST_CASE("every strategy on an asset sees the same prices") {
    const auto cfg = bundled();
    const auto a = load_asset(cfg.sweep.assets[1], 5, 1, 252);
    const auto b = load_asset(cfg.sweep.assets[1], 5, 1, 252);
    REQUIRE(a.size() == 756);
    CHECK(a.symbol() == "EURJPY");
    CHECK(a[100].close == b[100].close);
    CHECK(load_asset(cfg.sweep.assets[1], 6, 1, 252)[100].close != a[100].close);
}

TEST_CASE("file-backed assets") {
    const auto dir = scratch("assets");
    GbmParams g;
    g.n_bars = 120;
    const auto prices = gbm_prices(4, g);
    {
        std::ofstream f(dir / "px.csv");
        write_ohlc_csv(f, prices);
        std::ofstream r(dir / "ret.csv");
        r << "date,return\n2020-01-01,0.01\n2020-01-02,-0.005\n2020-01-03,0.002\n";
    }
    AssetSpec file;
    file.symbol = "FILE";
    file.prices_path = dir / "px.csv";
    const auto loaded = load_asset(file, 1, 0, 252);
    CHECK(loaded.size() == 120);
    CHECK(loaded.symbol() == "FILE");
    CHECK(loaded[7].close == prices[7].close);

    AssetSpec boot;
    boot.symbol = "BOOT";
    boot.bootstrap = BootstrapSource{dir / "ret.csv", 300, 10.0, 0.01};
    const auto b = load_asset(boot, 1, 0, 252);
    CHECK(b.size() == 300);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double r = b[i].close / b[i].open - 1.0;
        const bool known = std::abs(r - 0.01) < 1e-12 || std::abs(r + 0.005) < 1e-12 ||
                           std::abs(r - 0.002) < 1e-12;
        REQUIRE(known);
    }

    AssetSpec none;
    none.symbol = "NONE";
    CHECK_THROWS_AS(load_asset(none, 1, 0, 252), Error);
}

TEST_CASE("serial and parallel pipelines agree") {
    const auto cfg = bundled();
    const auto a = run_sweep_pipeline(cfg, false);
    const auto b = run_sweep_pipeline(cfg, true);
    REQUIRE(a.rows.size() == 25);
    CHECK(a.rows == b.rows);
    CHECK(a.notes == b.notes);
    CHECK(emit_report(a.rows, ReportFormat::Markdown, a.notes) ==
          emit_report(b.rows, ReportFormat::Markdown, b.notes));
    REQUIRE(a.matrix.min_backtest);
    CHECK(a.matrix.min_backtest->n_trials == 25);
    CHECK_FALSE(a.notes.empty());
}

TEST_CASE("failing scenarios become error rows") {
    auto cfg = bundled();
    cfg.sweep.assets[2].gbm->n_bars = 10;   // shorter than every warm-up except random
    const auto out = run_sweep_pipeline(cfg);
    REQUIRE(out.rows.size() == 25);
    std::size_t errors = 0;
    for (std::size_t i = 10; i < 15; ++i) {
        if (out.rows[i].outcome == "Error") ++errors;
    }
    CHECK(errors == 4);
    CHECK(out.rows[14].outcome != "Error");
    CHECK(out.rows[0].outcome != "Error");
    CHECK(out.matrix.scenarios.size() == 21);
}

TEST_CASE("sweep outputs are written per scenario") {
    auto cfg = bundled();
    cfg.output.directory = scratch("sweep");
    const auto out = run_sweep_pipeline(cfg);
    write_sweep_outputs(out, cfg);
    std::size_t equity_files = 0, trade_files = 0;
    for (const auto& e : fs::directory_iterator(cfg.output.directory / "scenarios")) {
        equity_files += e.path().string().ends_with(".equity.csv") ? 1 : 0;
    }
    for (const auto& e : fs::directory_iterator(cfg.output.directory / "trades")) {
        trade_files += e.path().string().ends_with(".trades.csv") ? 1 : 0;
    }
    CHECK(equity_files == 25);
    CHECK(trade_files == 25);
    for (const char* ext : {"md", "csv", "json"})
        CHECK(fs::exists(cfg.output.directory / (std::string("report.") + ext)));
    const auto curve = parse_equity_csv((cfg.output.directory / "scenarios" / "EURUSD__MACD.equity.csv").string());
    CHECK(curve.size() == 756);
    CHECK(report_extension(ReportFormat::Markdown) == "md");
}
