#pragma once

#include "topsel/date.hpp"
#include "topsel/market_data.hpp"
#include "topsel/strategy.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace topsel {

struct PeriodConfig {
    Date from, to;
};

/// One JSON config file drives every command. Relative paths resolve
/// against the config file's directory. An empty or missing `confirm`
/// block leaves the trend stage off (selection-only runs).
struct RunConfig {
    std::filesystem::path data_dir;
    std::vector<std::string> symbols; // empty = every *.csv in data_dir
    CriteriaConfig criteria = CriteriaConfig::defaults();
    bool confirm_enabled = false;
    ConfirmConfig confirm;
    std::optional<std::uint64_t> seed;
    std::optional<PeriodConfig> period;
    std::optional<std::string> benchmark;
    std::optional<int> random_baseline_runs;
    std::filesystem::path output_dir = "out";

    /// Parses and validates; error messages carry the offending field path.
    static RunConfig load(const std::filesystem::path& file);

    /// Seed, or a config error naming the field (reproducibility over
    /// convenience: backtest and grid refuse to run unseeded).
    std::uint64_t require_seed() const;
    const PeriodConfig& require_period() const;
};

/// Loads `<SYMBOL>.csv` for the configured symbols, or every CSV in the
/// data directory when no symbol list is given.
Universe load_universe(const RunConfig& config);

} // namespace topsel
