#pragma once

#include "topsel/market_data.hpp"
#include "topsel/strategy.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topsel {

/// One buy-at-close / sell-next-close round trip.
struct TradeRecord {
    Date buy_date;
    Date sell_date; // the symbol's next trading day after buy_date
    std::string symbol;
    double buy_close = 0;
    double sell_close = 0;
    bool confirmed = false; // true when the trend stage approved (or absent)
    double return_fraction = 0; // (sell_close - buy_close) / buy_close

    static TradeRecord make(Date buy_date, Date sell_date, std::string symbol,
                            double buy_close, double sell_close, bool confirmed);
};

/// Per-day audit trail: what was ranked, picked, and decided.
struct DayAudit {
    Date date;
    Ranking ranking;
    std::string selected;
    ConfirmOutcome outcome = ConfirmOutcome::High; // High on selection-only runs
    std::optional<double> prediction;
    std::optional<double> last_residuum;
    bool traded = false;
    bool voided = false; // selected and approved but no later bar to sell on
};

struct BacktestReport {
    std::vector<TradeRecord> trades;
    std::vector<DayAudit> audits;
    int declined = 0;                // Low verdicts plus unconfirmable days
    int declined_low = 0;
    int declined_unconfirmable = 0;
    int skipped_days = 0;            // no eligible decision matrix
    int voided_trades = 0;           // no later bar to sell on
    std::optional<double> accuracy_pct; // absent when there were no trades
    double cumulative_return = 1.0;
    double percentage_return = 0.0;
    Date from, to;
};

/// Percentage of trades whose return is strictly positive (a flat trade is
/// not a correct selection). Throws ValidationError on an empty list.
double accuracy(std::span<const TradeRecord> trades);

/// (Rc, (Rc - 1) * 100); the product runs in date order. Empty list -> (1, 0).
std::pair<double, double> cumulative_return(std::span<const TradeRecord> trades);

/// Walk-forward simulation over the trading days in [from, to]: select by
/// TOPSIS at each close, optionally confirm with the EMD-ELM stage, buy at
/// the close and sell at the symbol's next close. Days without an eligible
/// matrix are skipped and counted; a selected stock with no later bar voids
/// the trade.
BacktestReport run_backtest(const Universe& universe, Date from, Date to,
                            const CriteriaConfig& criteria,
                            const std::optional<ConfirmConfig>& confirm);

struct BaselineStats {
    double mean_accuracy = 0;
    double std_accuracy = 0; // population standard deviation over runs
    double mean_return = 0;
    double std_return = 0;
    int runs = 0;
};

/// Uniform-random stock selection under the same eligibility rule and trade
/// protocol, repeated `runs` times with per-run derived seeds.
BaselineStats random_baseline(const Universe& universe, Date from, Date to,
                              const CriteriaConfig& criteria, int runs, std::uint64_t seed);

/// Buy-and-hold percentage return of an index from its first to its last
/// close inside [from, to].
double benchmark_return(const PriceHistory& index, Date from, Date to);

struct WindowRange {
    int lo = 20;
    int hi = 400;
    int step = 10;

    std::vector<int> values() const; // throws ValidationError when invalid
};

struct GridRow {
    int window = 0;
    int delays = 0;
    int neurons = 0;
    int negotiations = 0;
    int profitable = 0;
    std::optional<double> accuracy_pct;
    double percentage_return = 0;
};

/// One confirmed backtest per window value; all rows share the base seed.
std::vector<GridRow> grid_search(const Universe& universe, Date from, Date to,
                                 const CriteriaConfig& criteria, WindowRange windows,
                                 int delays, int neurons, std::uint64_t seed);

struct HistogramBin {
    double lo = 0;
    double hi = 0;
    long high_count = 0; // next close above today's
    long low_count = 0;
};

struct IndicatorHistogram {
    IndicatorKind kind = IndicatorKind::Rsi;
    int period = 0;
    std::vector<HistogramBin> bins;
};

/// Bin edges per indicator; defaults are 0..100 step 10 for the bounded
/// indicators and -250..250 step 50 for CCI.
using HistogramSpec = std::map<IndicatorKind, std::vector<double>>;

HistogramSpec default_histogram_spec(const CriteriaConfig& criteria);

/// For every defined indicator value at a day with a next close for that
/// symbol, counts the (bin, next close above/below-or-equal) outcome.
/// Values outside the edges are skipped; the last bin includes its upper
/// edge.
std::vector<IndicatorHistogram> indicator_histograms(const Universe& universe, Date from,
                                                     Date to, const CriteriaConfig& criteria,
                                                     const HistogramSpec& spec);

} // namespace topsel
