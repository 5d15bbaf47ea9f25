#include "topsel/config.hpp"

#include "topsel/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>

namespace topsel {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError("config: " + path + ": " + message);
}

int default_period(IndicatorKind kind) {
    return kind == IndicatorKind::StochD ? 3 : 14;
}

IndicatorSpec parse_indicator(const json& node, const std::string& path) {
    IndicatorSpec spec;
    if (node.is_string()) {
        spec.kind = indicator_from_name(node.get<std::string>());
        spec.period = default_period(spec.kind);
        return spec;
    }
    if (!node.is_object()) fail(path, "expected an indicator name or {name, period}");
    if (!node.contains("name")) fail(path + ".name", "missing");
    spec.kind = indicator_from_name(node.at("name").get<std::string>());
    spec.period = node.value("period", default_period(spec.kind));
    if (spec.period < 1) fail(path + ".period", "must be >= 1");
    return spec;
}

CriteriaConfig parse_criteria(const json& node) {
    CriteriaConfig criteria = CriteriaConfig::defaults();
    if (node.contains("indicators")) {
        const json& list = node.at("indicators");
        if (!list.is_array() || list.empty()) {
            fail("criteria.indicators", "expected a nonempty array");
        }
        criteria.indicators.clear();
        for (size_t i = 0; i < list.size(); ++i) {
            criteria.indicators.push_back(
                parse_indicator(list[i], "criteria.indicators[" + std::to_string(i) + "]"));
        }
        criteria.reset_equal_weights();
    }
    if (node.contains("weights")) {
        const json& list = node.at("weights");
        if (!list.is_array() || list.size() != criteria.indicators.size()) {
            fail("criteria.weights", "expected one weight per indicator");
        }
        criteria.weights.clear();
        for (const json& w : list) criteria.weights.push_back(w.get<double>());
    }
    if (node.contains("normalization")) {
        criteria.normalization =
            normalization_from_name(node.at("normalization").get<std::string>());
    }
    try {
        criteria.validate();
    } catch (const Error& e) {
        fail("criteria", e.what());
    }
    return criteria;
}

} // namespace

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open config '" + file.string() + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config '" + file.string() + "': " + e.what());
    }
    if (!root.is_object()) throw ParseError("config '" + file.string() + "': not an object");

    const std::filesystem::path base = file.has_parent_path()
                                           ? file.parent_path()
                                           : std::filesystem::path(".");
    auto resolve = [&base](const std::filesystem::path& p) {
        return p.is_absolute() ? p : base / p;
    };

    RunConfig config;
    try {
        if (!root.contains("data_dir")) fail("data_dir", "missing");
        config.data_dir = resolve(root.at("data_dir").get<std::string>());

        if (root.contains("symbols")) {
            for (const json& s : root.at("symbols")) {
                config.symbols.push_back(s.get<std::string>());
            }
        }
        if (root.contains("criteria")) {
            if (!root.at("criteria").is_object()) fail("criteria", "expected an object");
            config.criteria = parse_criteria(root.at("criteria"));
        }
        if (root.contains("confirm")) {
            const json& node = root.at("confirm");
            if (!node.is_object()) fail("confirm", "expected an object");
            config.confirm_enabled = node.value("enabled", !node.empty());
            config.confirm.window_size = node.value("window", config.confirm.window_size);
            config.confirm.delays = node.value("delays", config.confirm.delays);
            config.confirm.neurons = node.value("neurons", config.confirm.neurons);
            if (config.confirm_enabled) {
                try {
                    config.confirm.validate();
                } catch (const Error& e) {
                    fail("confirm", e.what());
                }
            }
        }
        if (root.contains("seed")) {
            config.seed = root.at("seed").get<std::uint64_t>();
        }
        if (root.contains("period")) {
            const json& node = root.at("period");
            if (!node.is_object() || !node.contains("from") || !node.contains("to")) {
                fail("period", "expected {from, to}");
            }
            PeriodConfig period;
            period.from = Date::parse(node.at("from").get<std::string>());
            period.to = Date::parse(node.at("to").get<std::string>());
            if (period.to < period.from) fail("period", "from must not exceed to");
            config.period = period;
        }
        if (root.contains("benchmark")) {
            config.benchmark = root.at("benchmark").get<std::string>();
        }
        if (root.contains("random_baseline")) {
            const json& node = root.at("random_baseline");
            if (!node.is_object() || !node.contains("runs")) {
                fail("random_baseline", "expected {runs}");
            }
            const int runs = node.at("runs").get<int>();
            if (runs < 1) fail("random_baseline.runs", "must be >= 1");
            config.random_baseline_runs = runs;
        }
        if (root.contains("output_dir")) {
            config.output_dir = resolve(root.at("output_dir").get<std::string>());
        } else {
            config.output_dir = resolve("out");
        }
    } catch (const json::exception& e) {
        throw ParseError("config '" + file.string() + "': " + e.what());
    }
    return config;
}

std::uint64_t RunConfig::require_seed() const {
    if (!seed) throw ParseError("config: seed: required for this command");
    return *seed;
}

const PeriodConfig& RunConfig::require_period() const {
    if (!period) throw ParseError("config: period: required for this command");
    return *period;
}

Universe load_universe(const RunConfig& config) {
    std::vector<std::string> symbols = config.symbols;
    if (symbols.empty()) {
        if (!std::filesystem::is_directory(config.data_dir)) {
            throw ParseError("data_dir '" + config.data_dir.string() +
                             "' is not a directory");
        }
        for (const auto& entry : std::filesystem::directory_iterator(config.data_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                symbols.push_back(entry.path().stem().string());
            }
        }
        std::sort(symbols.begin(), symbols.end());
        if (symbols.empty()) {
            throw ParseError("data_dir '" + config.data_dir.string() + "' has no .csv files");
        }
    }
    std::vector<PriceHistory> histories;
    histories.reserve(symbols.size());
    for (const std::string& symbol : symbols) {
        histories.push_back(load_ohlcv_csv(config.data_dir / (symbol + ".csv"), symbol));
    }
    return Universe::build(std::move(histories));
}

} // namespace topsel
