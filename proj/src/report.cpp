#include "topsel/report.hpp"

#include "topsel/errors.hpp"
#include "topsel/text.hpp"

#include "json.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace topsel {

void write_trades_csv(std::ostream& out, std::span<const TradeRecord> trades) {
    out << "buy_date,sell_date,symbol,buy_close,sell_close,return_pct,confirmed\n";
    for (const TradeRecord& trade : trades) {
        out << trade.buy_date.to_string() << ',' << trade.sell_date.to_string() << ','
            << trade.symbol << ',' << format_double(trade.buy_close) << ','
            << format_double(trade.sell_close) << ','
            << format_double(trade.return_fraction * 100.0) << ','
            << (trade.confirmed ? "true" : "false") << '\n';
    }
}

std::vector<TradeRecord> read_trades_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trades csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "buy_date,sell_date,symbol,buy_close,sell_close,return_pct,confirmed") {
        throw ParseError("trades csv: unexpected header '" + line + "'");
    }

    std::vector<TradeRecord> trades;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) {
            throw ParseError("trades csv: line " + std::to_string(line_no) +
                             ": expected 7 fields");
        }
        trades.push_back(TradeRecord::make(
            Date::parse(fields[0]), Date::parse(fields[1]), fields[2],
            parse_double(fields[3], "buy_close"), parse_double(fields[4], "sell_close"),
            fields[6] == "true"));
    }
    return trades;
}

void write_grid_csv(std::ostream& out, std::span<const GridRow> rows) {
    out << "window,delays,neurons,negotiations,profitable,accuracy,percentage_return\n";
    for (const GridRow& row : rows) {
        out << row.window << ',' << row.delays << ',' << row.neurons << ','
            << row.negotiations << ',' << row.profitable << ',';
        if (row.accuracy_pct) out << format_double(*row.accuracy_pct);
        out << ',' << format_double(row.percentage_return) << '\n';
    }
}

void write_hist_csv(std::ostream& out, std::span<const IndicatorHistogram> histograms) {
    out << "indicator,bin_low,bin_high,high_count,low_count\n";
    for (const IndicatorHistogram& histogram : histograms) {
        for (const HistogramBin& bin : histogram.bins) {
            out << indicator_name(histogram.kind) << ',' << format_double(bin.lo) << ','
                << format_double(bin.hi) << ',' << bin.high_count << ',' << bin.low_count
                << '\n';
        }
    }
}

void write_decompose_csv(std::ostream& out, std::span<const double> input,
                         const ImfSet& imf_set) {
    out << "index,input";
    for (size_t k = 0; k < imf_set.imfs.size(); ++k) out << ",imf" << (k + 1);
    out << ",residuum\n";
    for (size_t i = 0; i < input.size(); ++i) {
        out << i << ',' << format_double(input[i]);
        for (const auto& imf : imf_set.imfs) out << ',' << format_double(imf[i]);
        out << ',' << format_double(imf_set.residuum[i]) << '\n';
    }
}

void write_audit_jsonl(std::ostream& out, std::span<const DayAudit> audits) {
    for (const DayAudit& audit : audits) {
        nlohmann::json entry;
        entry["date"] = audit.date.to_string();
        entry["selected"] = audit.selected;
        entry["verdict"] = confirm_outcome_name(audit.outcome);
        entry["traded"] = audit.traded;
        entry["voided"] = audit.voided;
        if (audit.prediction) entry["prediction"] = *audit.prediction;
        if (audit.last_residuum) entry["last_residuum"] = *audit.last_residuum;
        nlohmann::json ranking = nlohmann::json::array();
        for (const RankedAlternative& alt : audit.ranking.entries) {
            ranking.push_back({{"alternative", alt.label},
                               {"xi", alt.closeness},
                               {"rank", alt.rank}});
        }
        entry["ranking"] = std::move(ranking);
        out << entry.dump() << '\n';
    }
}

void write_indicator_csv(std::ostream& out, std::span<const Date> dates,
                         const IndicatorSeries& series) {
    if (dates.size() != series.values.size()) {
        throw ValidationError("indicator csv: dates and values must align");
    }
    out << "date,value\n";
    for (size_t i = 0; i < dates.size(); ++i) {
        out << dates[i].to_string() << ',';
        if (series.values[i]) out << format_double(*series.values[i]);
        out << '\n';
    }
}

} // namespace topsel
