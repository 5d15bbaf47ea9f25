#pragma once

#include "topsel/backtest.hpp"
#include "topsel/emd.hpp"
#include "topsel/indicators.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace topsel {

/// `buy_date,sell_date,symbol,buy_close,sell_close,return_pct,confirmed`,
/// doubles in shortest round-trip form.
void write_trades_csv(std::ostream& out, std::span<const TradeRecord> trades);

/// Reads the format back; return fractions are recomputed from the closes.
std::vector<TradeRecord> read_trades_csv(std::istream& in);

/// `window,delays,neurons,negotiations,profitable,accuracy,percentage_return`;
/// accuracy is empty for rows without trades.
void write_grid_csv(std::ostream& out, std::span<const GridRow> rows);

/// `indicator,bin_low,bin_high,high_count,low_count`.
void write_hist_csv(std::ostream& out, std::span<const IndicatorHistogram> histograms);

/// `index,input,imf1,...,imfK,residuum`.
void write_decompose_csv(std::ostream& out, std::span<const double> input,
                         const ImfSet& imf_set);

/// One JSON object per line: date, full ranking, selected symbol, verdict,
/// prediction and last residuum value when the model ran.
void write_audit_jsonl(std::ostream& out, std::span<const DayAudit> audits);

/// `date,value` with an empty field while the indicator is undefined.
void write_indicator_csv(std::ostream& out, std::span<const Date> dates,
                         const IndicatorSeries& series);

} // namespace topsel
