// Command-line front end: binds a JSON config file and a directory of
// per-symbol OHLCV CSVs to the library's ranking, backtest, grid-search,
// decomposition and histogram operations.

#include "topsel/backtest.hpp"
#include "topsel/config.hpp"
#include "topsel/emd.hpp"
#include "topsel/errors.hpp"
#include "topsel/report.hpp"
#include "topsel/text.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace topsel;
namespace fs = std::filesystem;

// Tracks files written by one command so a failure removes partial output.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir_);
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        written_.push_back(path);
        return out;
    }

    void discard_all() {
        for (const fs::path& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

WindowRange parse_window_range(const std::string& text) {
    WindowRange range;
    if (std::sscanf(text.c_str(), "%d:%d:%d", &range.lo, &range.hi, &range.step) != 3) {
        throw ParseError("bad --windows '" + text + "': expected LO:HI:STEP");
    }
    range.values(); // validates
    return range;
}

// NAME=LO:HI:STEP[,NAME=LO:HI:STEP...]; indicators not named keep defaults.
HistogramSpec parse_bins(const std::string& text, const CriteriaConfig& criteria) {
    HistogramSpec spec = default_histogram_spec(criteria);
    if (text.empty()) return spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw ParseError("bad --bins item '" + item + "': expected NAME=LO:HI:STEP");
        }
        const IndicatorKind kind = indicator_from_name(item.substr(0, eq));
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(item.c_str() + eq + 1, "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
            step <= 0 || hi <= lo) {
            throw ParseError("bad --bins item '" + item + "': expected NAME=LO:HI:STEP");
        }
        std::vector<double> edges;
        for (double e = lo; e <= hi + 1e-9; e += step) edges.push_back(e);
        spec[kind] = std::move(edges);
    }
    return spec;
}

nlohmann::json criteria_to_json(const CriteriaConfig& criteria) {
    nlohmann::json indicators = nlohmann::json::array();
    for (const IndicatorSpec& spec : criteria.indicators) {
        indicators.push_back({{"name", indicator_name(spec.kind)}, {"period", spec.period}});
    }
    return {{"indicators", std::move(indicators)},
            {"weights", criteria.weights},
            {"normalization", normalization_name(criteria.normalization)}};
}

nlohmann::json summary_json(const RunConfig& config, const BacktestReport& report) {
    nlohmann::json summary;
    summary["period"] = {{"from", report.from.to_string()}, {"to", report.to.to_string()}};
    summary["criteria"] = criteria_to_json(config.criteria);
    if (config.confirm_enabled) {
        summary["confirm"] = {{"window", config.confirm.window_size},
                              {"delays", config.confirm.delays},
                              {"neurons", config.confirm.neurons}};
    } else {
        summary["confirm"] = nullptr;
    }
    summary["seed"] = config.require_seed();
    summary["trades"] = report.trades.size();
    summary["declined"] = report.declined;
    summary["declined_low"] = report.declined_low;
    summary["declined_unconfirmable"] = report.declined_unconfirmable;
    summary["skipped_days"] = report.skipped_days;
    summary["voided_trades"] = report.voided_trades;
    if (report.accuracy_pct) summary["accuracy"] = *report.accuracy_pct;
    else summary["accuracy"] = nullptr;
    summary["cumulative_return"] = report.cumulative_return;
    summary["percentage_return"] = report.percentage_return;
    return summary;
}

int cmd_rank(const fs::path& config_path, const std::string& date_text) {
    const RunConfig config = RunConfig::load(config_path);
    const Universe universe = load_universe(config);
    const Date date = Date::parse(date_text);
    const CutoffView view(universe, date);
    const SelectionResult selection = select_stock(view, config.criteria);

    std::cout << "alternative,xi,rank\n";
    for (const RankedAlternative& alt : selection.ranking.entries) {
        std::cout << alt.label << ',' << format_double(alt.closeness) << ',' << alt.rank
                  << '\n';
    }
    return 0;
}

int cmd_backtest(const fs::path& config_path) {
    const RunConfig config = RunConfig::load(config_path);
    const Universe universe = load_universe(config);
    const PeriodConfig& period = config.require_period();

    std::optional<ConfirmConfig> confirm;
    if (config.confirm_enabled) {
        confirm = config.confirm;
        confirm->seed = config.require_seed();
    } else {
        config.require_seed(); // backtests refuse to run unseeded either way
    }

    const BacktestReport report =
        run_backtest(universe, period.from, period.to, config.criteria, confirm);

    nlohmann::json summary = summary_json(config, report);
    if (config.benchmark) {
        summary["benchmark"] = {
            {"symbol", *config.benchmark},
            {"percentage_return",
             benchmark_return(universe.history(*config.benchmark), period.from, period.to)}};
    }
    if (config.random_baseline_runs) {
        const BaselineStats stats =
            random_baseline(universe, period.from, period.to, config.criteria,
                            *config.random_baseline_runs, config.require_seed());
        summary["random_baseline"] = {{"runs", stats.runs},
                                      {"mean_accuracy", stats.mean_accuracy},
                                      {"std_accuracy", stats.std_accuracy},
                                      {"mean_return", stats.mean_return},
                                      {"std_return", stats.std_return}};
    }

    OutputSet outputs(config.output_dir);
    try {
        auto trades = outputs.open("trades.csv");
        write_trades_csv(trades, report.trades);
        auto summary_out = outputs.open("summary.json");
        summary_out << summary.dump(2) << '\n';
        auto audit = outputs.open("audit.jsonl");
        write_audit_jsonl(audit, report.audits);
    } catch (...) {
        outputs.discard_all();
        throw;
    }

    std::cout << "trades=" << report.trades.size() << " accuracy=";
    if (report.accuracy_pct) std::cout << format_double(*report.accuracy_pct);
    else std::cout << "n/a";
    std::cout << "% return=" << format_double(report.percentage_return) << "%\n";
    return 0;
}

int cmd_grid(const fs::path& config_path, const std::string& windows_text) {
    const RunConfig config = RunConfig::load(config_path);
    const Universe universe = load_universe(config);
    const PeriodConfig& period = config.require_period();
    const WindowRange windows = parse_window_range(windows_text);

    const std::vector<GridRow> rows =
        grid_search(universe, period.from, period.to, config.criteria, windows,
                    config.confirm.delays, config.confirm.neurons, config.require_seed());

    OutputSet outputs(config.output_dir);
    try {
        auto grid = outputs.open("grid.csv");
        write_grid_csv(grid, rows);
    } catch (...) {
        outputs.discard_all();
        throw;
    }

    int best_trades = 0;
    for (const GridRow& row : rows) best_trades = std::max(best_trades, row.negotiations);
    std::cout << "rows=" << rows.size() << " max_negotiations=" << best_trades << "\n";
    return 0;
}

int cmd_decompose(const fs::path& config_path, const std::string& symbol,
                  const std::string& date_text, int window) {
    const RunConfig config = RunConfig::load(config_path);
    const Universe universe = load_universe(config);
    const CutoffView view(universe, Date::parse(date_text));

    const std::vector<double> prices = view.window(symbol, static_cast<size_t>(window));
    const std::vector<double> normalized = window_normalize(prices);
    const ImfSet imf_set = decompose(normalized);

    OutputSet outputs(config.output_dir);
    try {
        auto out = outputs.open("decompose.csv");
        write_decompose_csv(out, normalized, imf_set);
    } catch (...) {
        outputs.discard_all();
        throw;
    }
    std::cout << "imfs=" << imf_set.imfs.size() << " length=" << imf_set.input_length << "\n";
    return 0;
}

int cmd_hist(const fs::path& config_path, const std::string& bins_text) {
    const RunConfig config = RunConfig::load(config_path);
    const Universe universe = load_universe(config);
    const PeriodConfig& period = config.require_period();
    const HistogramSpec spec = parse_bins(bins_text, config.criteria);

    const std::vector<IndicatorHistogram> histograms =
        indicator_histograms(universe, period.from, period.to, config.criteria, spec);

    OutputSet outputs(config.output_dir);
    try {
        auto out = outputs.open("hist.csv");
        write_hist_csv(out, histograms);
    } catch (...) {
        outputs.discard_all();
        throw;
    }
    long total = 0;
    for (const auto& histogram : histograms) {
        for (const auto& bin : histogram.bins) total += bin.high_count + bin.low_count;
    }
    std::cout << "indicators=" << histograms.size() << " observations=" << total << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Daily stock ranking and trend-confirmed backtesting"};
    app.require_subcommand(1);

    std::string config_path, date_text, symbol, windows_text = "20:400:10", bins_text;
    int window = 21;

    auto add_config = [&config_path](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file")->required();
    };

    CLI::App* rank_cmd = app.add_subcommand("rank", "Rank all stocks on one day");
    add_config(rank_cmd);
    rank_cmd->add_option("--date", date_text, "Trading day (YYYY-MM-DD)")->required();

    CLI::App* backtest_cmd = app.add_subcommand("backtest", "Walk-forward backtest");
    add_config(backtest_cmd);

    CLI::App* grid_cmd = app.add_subcommand("grid", "Window-size grid search");
    add_config(grid_cmd);
    grid_cmd->add_option("--windows", windows_text, "Range LO:HI:STEP (default 20:400:10)");

    CLI::App* decompose_cmd = app.add_subcommand("decompose", "Decompose one price window");
    add_config(decompose_cmd);
    decompose_cmd->add_option("--symbol", symbol, "Stock symbol")->required();
    decompose_cmd->add_option("--date", date_text, "Window end day")->required();
    decompose_cmd->add_option("--window", window, "Window length in prices")->required();

    CLI::App* hist_cmd = app.add_subcommand("hist", "Indicator up/down histograms");
    add_config(hist_cmd);
    hist_cmd->add_option("--bins", bins_text, "NAME=LO:HI:STEP[,...]; defaults otherwise");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rank_cmd->parsed()) return cmd_rank(config_path, date_text);
        if (backtest_cmd->parsed()) return cmd_backtest(config_path);
        if (grid_cmd->parsed()) return cmd_grid(config_path, windows_text);
        if (decompose_cmd->parsed()) return cmd_decompose(config_path, symbol, date_text, window);
        if (hist_cmd->parsed()) return cmd_hist(config_path, bins_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
