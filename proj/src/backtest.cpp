#include "topsel/backtest.hpp"

#include "topsel/errors.hpp"
#include "topsel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topsel {

TradeRecord TradeRecord::make(Date buy_date, Date sell_date, std::string symbol,
                              double buy_close, double sell_close, bool confirmed) {
    TradeRecord trade;
    trade.buy_date = buy_date;
    trade.sell_date = sell_date;
    trade.symbol = std::move(symbol);
    trade.buy_close = buy_close;
    trade.sell_close = sell_close;
    trade.confirmed = confirmed;
    trade.return_fraction = (sell_close - buy_close) / buy_close;
    return trade;
}

double accuracy(std::span<const TradeRecord> trades) {
    if (trades.empty()) {
        throw ValidationError("accuracy is undefined for an empty trade list");
    }
    long correct = 0;
    for (const TradeRecord& trade : trades) {
        if (trade.return_fraction > 0) ++correct;
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(trades.size());
}

std::pair<double, double> cumulative_return(std::span<const TradeRecord> trades) {
    // Trades are multiplied in the order given; the engine emits them by
    // buy date, and recomputing from an exported list preserves the product
    // bit for bit.
    double rc = 1.0;
    for (const TradeRecord& trade : trades) {
        rc *= 1.0 + trade.return_fraction;
    }
    return {rc, (rc - 1.0) * 100.0};
}

namespace {

// Full-history indicator values per symbol, aligned with the symbol's bars.
// A defined value at bar index i depends only on bars [0, i] (the series
// functions are causal), so slicing at a cutoff index is equivalent to
// recomputing from a CutoffView.
struct IndicatorCache {
    std::vector<std::vector<IndicatorSeries>> per_symbol; // [symbol][criterion]

    static IndicatorCache build(const Universe& universe, const CriteriaConfig& criteria) {
        const int k_period = stoch_k_period_of(criteria);
        IndicatorCache cache;
        cache.per_symbol.reserve(universe.symbols().size());
        for (const std::string& symbol : universe.symbols()) {
            const PriceHistory& history = universe.history(symbol);
            std::vector<IndicatorSeries> series;
            series.reserve(criteria.indicators.size());
            for (const IndicatorSpec& spec : criteria.indicators) {
                series.push_back(compute_indicator(spec, history.bars, k_period));
            }
            cache.per_symbol.push_back(std::move(series));
        }
        return cache;
    }
};

struct EligibleStock {
    size_t symbol_index;
    std::vector<double> row;
};

// Stocks trading on `day` with every configured indicator defined there.
std::vector<EligibleStock> eligible_stocks(const Universe& universe,
                                           const IndicatorCache& cache, const Date& day) {
    std::vector<EligibleStock> eligible;
    const auto& symbols = universe.symbols();
    for (size_t s = 0; s < symbols.size(); ++s) {
        const PriceHistory& history = universe.history(symbols[s]);
        const size_t end = history.upper_bound(day);
        if (end == 0 || history.bars[end - 1].date != day) continue;
        const size_t bar_index = end - 1;

        std::vector<double> row;
        row.reserve(cache.per_symbol[s].size());
        bool defined = true;
        for (const IndicatorSeries& series : cache.per_symbol[s]) {
            const auto& value = series.values[bar_index];
            if (!value) {
                defined = false;
                break;
            }
            row.push_back(*value);
        }
        if (defined) eligible.push_back({s, std::move(row)});
    }
    return eligible;
}

DecisionMatrix matrix_from_eligible(const Universe& universe, const CriteriaConfig& criteria,
                                    const std::vector<EligibleStock>& eligible) {
    DecisionMatrix matrix;
    for (size_t j = 0; j < criteria.indicators.size(); ++j) {
        matrix.criteria.push_back(
            {criteria.criterion_name(j), CriterionKind::Cost, criteria.weights[j]});
    }
    for (const EligibleStock& stock : eligible) {
        matrix.alternatives.push_back(universe.symbols()[stock.symbol_index]);
        matrix.values.push_back(stock.row);
    }
    return matrix;
}

// The symbol's bar on `day` and its immediate next bar (nullptr when the
// history ends there).
std::pair<const OhlcvBar*, const OhlcvBar*> bar_and_next(const PriceHistory& history,
                                                         const Date& day) {
    const size_t end = history.upper_bound(day);
    if (end == 0 || history.bars[end - 1].date != day) return {nullptr, nullptr};
    const OhlcvBar* today = &history.bars[end - 1];
    const OhlcvBar* next = end < history.bars.size() ? &history.bars[end] : nullptr;
    return {today, next};
}

std::vector<Date> period_days(const Universe& universe, const Date& from, const Date& to) {
    if (to < from) throw ValidationError("backtest period: from must not exceed to");
    std::vector<Date> days;
    for (const Date& day : universe.calendar()) {
        if (from <= day && day <= to) days.push_back(day);
    }
    if (days.empty()) {
        throw ValidationError("backtest period contains no trading days");
    }
    return days;
}

void finalize_metrics(BacktestReport& report) {
    if (!report.trades.empty()) report.accuracy_pct = accuracy(report.trades);
    const auto [rc, pct] = cumulative_return(report.trades);
    report.cumulative_return = rc;
    report.percentage_return = pct;
}

} // namespace

BacktestReport run_backtest(const Universe& universe, Date from, Date to,
                            const CriteriaConfig& criteria,
                            const std::optional<ConfirmConfig>& confirm) {
    criteria.validate();
    if (confirm) confirm->validate();
    const std::vector<Date> days = period_days(universe, from, to);
    const IndicatorCache cache = IndicatorCache::build(universe, criteria);

    BacktestReport report;
    report.from = from;
    report.to = to;

    std::optional<Date> position_open_until; // sell date of the open position
    for (const Date& day : days) {
        if (position_open_until && day < *position_open_until) continue;

        const auto eligible = eligible_stocks(universe, cache, day);
        if (eligible.size() < 2) {
            ++report.skipped_days;
            continue;
        }
        const DecisionMatrix matrix = matrix_from_eligible(universe, criteria, eligible);
        Ranking ranking = rank(matrix, criteria.normalization);
        const std::string symbol = ranking.best().label;

        DayAudit audit;
        audit.date = day;
        audit.ranking = std::move(ranking);
        audit.selected = symbol;

        if (confirm) {
            const CutoffView view(universe, day);
            const Confirmation confirmation = confirm_purchase(view, symbol, *confirm);
            audit.outcome = confirmation.outcome;
            if (confirmation.outcome == ConfirmOutcome::High ||
                confirmation.outcome == ConfirmOutcome::Low) {
                audit.prediction = confirmation.prediction;
                audit.last_residuum = confirmation.last_residuum;
            }
            if (!confirmation.confirmed()) {
                ++report.declined;
                if (confirmation.outcome == ConfirmOutcome::Low) ++report.declined_low;
                else ++report.declined_unconfirmable;
                report.audits.push_back(std::move(audit));
                continue;
            }
        }

        const auto [today, next] = bar_and_next(universe.history(symbol), day);
        if (!next) {
            ++report.voided_trades;
            audit.voided = true;
            report.audits.push_back(std::move(audit));
            continue;
        }
        report.trades.push_back(TradeRecord::make(day, next->date, symbol, today->close,
                                                  next->close, confirm.has_value()));
        position_open_until = next->date;
        audit.traded = true;
        report.audits.push_back(std::move(audit));
    }

    finalize_metrics(report);
    return report;
}

namespace {

size_t pick_uniform(std::mt19937_64& gen, size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return static_cast<size_t>(x % n);
}

} // namespace

BaselineStats random_baseline(const Universe& universe, Date from, Date to,
                              const CriteriaConfig& criteria, int runs, std::uint64_t seed) {
    criteria.validate();
    if (runs < 1) throw ValidationError("random baseline needs runs >= 1");
    const std::vector<Date> days = period_days(universe, from, to);
    const IndicatorCache cache = IndicatorCache::build(universe, criteria);

    // Per-day choices are identical across runs; precompute them.
    struct DayChoices {
        Date day;
        std::vector<size_t> symbols;
    };
    std::vector<DayChoices> choices;
    for (const Date& day : days) {
        const auto eligible = eligible_stocks(universe, cache, day);
        if (eligible.size() < 2) continue;
        DayChoices dc;
        dc.day = day;
        for (const EligibleStock& stock : eligible) dc.symbols.push_back(stock.symbol_index);
        choices.push_back(std::move(dc));
    }

    std::vector<double> accuracies, returns;
    accuracies.reserve(static_cast<size_t>(runs));
    returns.reserve(static_cast<size_t>(runs));
    for (int r = 0; r < runs; ++r) {
        std::mt19937_64 gen(derive_seed(seed, "run:" + std::to_string(r)));
        long trades = 0, correct = 0;
        double rc = 1.0;
        std::optional<Date> position_open_until;
        for (const DayChoices& dc : choices) {
            if (position_open_until && dc.day < *position_open_until) continue;
            const size_t pick = pick_uniform(gen, dc.symbols.size());
            const std::string& symbol = universe.symbols()[dc.symbols[pick]];
            const auto [today, next] = bar_and_next(universe.history(symbol), dc.day);
            if (!next) continue;
            const double fraction = (next->close - today->close) / today->close;
            rc *= 1.0 + fraction;
            ++trades;
            if (fraction > 0) ++correct;
            position_open_until = next->date;
        }
        if (trades == 0) {
            throw ValidationError("random baseline: no trades in the period");
        }
        accuracies.push_back(100.0 * static_cast<double>(correct) /
                             static_cast<double>(trades));
        returns.push_back((rc - 1.0) * 100.0);
    }

    auto mean_of = [](const std::vector<double>& xs) {
        double sum = 0;
        for (double x : xs) sum += x;
        return sum / static_cast<double>(xs.size());
    };
    auto std_of = [](const std::vector<double>& xs, double mean) {
        double acc = 0;
        for (double x : xs) acc += (x - mean) * (x - mean);
        return std::sqrt(acc / static_cast<double>(xs.size()));
    };

    BaselineStats stats;
    stats.runs = runs;
    stats.mean_accuracy = mean_of(accuracies);
    stats.std_accuracy = std_of(accuracies, stats.mean_accuracy);
    stats.mean_return = mean_of(returns);
    stats.std_return = std_of(returns, stats.mean_return);
    return stats;
}

double benchmark_return(const PriceHistory& index, Date from, Date to) {
    if (to < from) throw ValidationError("benchmark period: from must not exceed to");
    const OhlcvBar* first = nullptr;
    const OhlcvBar* last = nullptr;
    for (const OhlcvBar& bar : index.bars) {
        if (bar.date < from || to < bar.date) continue;
        if (!first) first = &bar;
        last = &bar;
    }
    if (!first) {
        throw ValidationError("benchmark '" + index.symbol + "' has no bars in the period");
    }
    return (last->close / first->close - 1.0) * 100.0;
}

std::vector<int> WindowRange::values() const {
    if (lo < 1 || hi < lo || step < 1) {
        throw ValidationError("window range: need 1 <= lo <= hi and step >= 1");
    }
    std::vector<int> out;
    for (int w = lo; w <= hi; w += step) out.push_back(w);
    return out;
}

std::vector<GridRow> grid_search(const Universe& universe, Date from, Date to,
                                 const CriteriaConfig& criteria, WindowRange windows,
                                 int delays, int neurons, std::uint64_t seed) {
    std::vector<GridRow> rows;
    for (int window : windows.values()) {
        ConfirmConfig confirm;
        confirm.window_size = window;
        confirm.delays = delays;
        confirm.neurons = neurons;
        confirm.seed = seed;
        const BacktestReport report = run_backtest(universe, from, to, criteria, confirm);

        GridRow row;
        row.window = window;
        row.delays = delays;
        row.neurons = neurons;
        row.negotiations = static_cast<int>(report.trades.size());
        row.profitable = 0;
        for (const TradeRecord& trade : report.trades) {
            if (trade.return_fraction > 0) ++row.profitable;
        }
        row.accuracy_pct = report.accuracy_pct;
        row.percentage_return = report.percentage_return;
        rows.push_back(std::move(row));
    }
    return rows;
}

HistogramSpec default_histogram_spec(const CriteriaConfig& criteria) {
    HistogramSpec spec;
    for (const IndicatorSpec& indicator : criteria.indicators) {
        std::vector<double> edges;
        if (indicator.kind == IndicatorKind::Cci) {
            for (int e = -250; e <= 250; e += 50) edges.push_back(e);
        } else {
            for (int e = 0; e <= 100; e += 10) edges.push_back(e);
        }
        spec[indicator.kind] = std::move(edges);
    }
    return spec;
}

std::vector<IndicatorHistogram> indicator_histograms(const Universe& universe, Date from,
                                                     Date to, const CriteriaConfig& criteria,
                                                     const HistogramSpec& spec) {
    criteria.validate();
    if (to < from) throw ValidationError("histogram period: from must not exceed to");
    const int k_period = stoch_k_period_of(criteria);

    std::vector<IndicatorHistogram> histograms;
    for (const IndicatorSpec& indicator : criteria.indicators) {
        auto it = spec.find(indicator.kind);
        if (it == spec.end()) {
            throw ValidationError(std::string("no bin edges for indicator '") +
                                  indicator_name(indicator.kind) + "'");
        }
        const std::vector<double>& edges = it->second;
        if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
            throw ValidationError("bin edges must be sorted and contain at least 2 values");
        }

        IndicatorHistogram histogram;
        histogram.kind = indicator.kind;
        histogram.period = indicator.period;
        for (size_t b = 0; b + 1 < edges.size(); ++b) {
            histogram.bins.push_back({edges[b], edges[b + 1], 0, 0});
        }

        for (const std::string& symbol : universe.symbols()) {
            const PriceHistory& history = universe.history(symbol);
            const IndicatorSeries series = compute_indicator(indicator, history.bars, k_period);
            for (size_t i = 0; i + 1 < history.bars.size(); ++i) {
                const Date& day = history.bars[i].date;
                if (day < from || to < day) continue;
                const auto& value = series.values[i];
                if (!value || *value < edges.front() || *value > edges.back()) continue;
                size_t bin = static_cast<size_t>(
                    std::upper_bound(edges.begin(), edges.end(), *value) - edges.begin());
                bin = (bin == 0) ? 0 : bin - 1;
                if (bin >= histogram.bins.size()) bin = histogram.bins.size() - 1;
                if (history.bars[i + 1].close > history.bars[i].close) {
                    ++histogram.bins[bin].high_count;
                } else {
                    ++histogram.bins[bin].low_count;
                }
            }
        }
        histograms.push_back(std::move(histogram));
    }
    return histograms;
}

} // namespace topsel
