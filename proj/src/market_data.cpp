#include "topsel/market_data.hpp"

#include "topsel/errors.hpp"
#include "topsel/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace topsel {

void OhlcvBar::validate() const {
    const std::string when = date.to_string();
    if (!(open > 0 && high > 0 && low > 0 && close > 0) ||
        !std::isfinite(open) || !std::isfinite(high) || !std::isfinite(low) ||
        !std::isfinite(close)) {
        throw ValidationError("bar on " + when + ": prices must be strictly positive");
    }
    if (low > high || open < low || open > high || close < low || close > high) {
        throw ValidationError("bar on " + when +
                              ": requires low <= open,close <= high");
    }
    if (!(volume >= 0) || !std::isfinite(volume)) {
        throw ValidationError("bar on " + when + ": volume must be >= 0");
    }
}

const OhlcvBar* PriceHistory::bar_on(const Date& date) const {
    auto it = std::lower_bound(bars.begin(), bars.end(), date,
                               [](const OhlcvBar& b, const Date& d) { return b.date < d; });
    if (it == bars.end() || it->date != date) return nullptr;
    return &*it;
}

size_t PriceHistory::upper_bound(const Date& date) const {
    auto it = std::upper_bound(bars.begin(), bars.end(), date,
                               [](const Date& d, const OhlcvBar& b) { return d < b.date; });
    return static_cast<size_t>(it - bars.begin());
}

namespace {

double parse_number(std::string_view field, const std::string& what, size_t line_no) {
    return parse_double(field, "line " + std::to_string(line_no) + " " + what);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

PriceHistory load_ohlcv_csv(const std::filesystem::path& path, std::string symbol) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ": empty file");
    }
    strip_cr(line);
    if (line != "date,open,high,low,close,volume") {
        throw ParseError(path.string() + ": line 1: expected header "
                         "'date,open,high,low,close,volume', got '" + line + "'");
    }

    PriceHistory history;
    history.symbol = std::move(symbol);

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw ParseError(path.string() + ": line " + std::to_string(line_no) +
                             ": expected 6 fields, got " + std::to_string(fields.size()));
        }
        OhlcvBar bar;
        try {
            bar.date = Date::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": " +
                             e.what());
        }
        bar.open = parse_number(fields[1], "open", line_no);
        bar.high = parse_number(fields[2], "high", line_no);
        bar.low = parse_number(fields[3], "low", line_no);
        bar.close = parse_number(fields[4], "close", line_no);
        bar.volume = parse_number(fields[5], "volume", line_no);
        bar.validate();
        history.bars.push_back(bar);
    }

    std::stable_sort(history.bars.begin(), history.bars.end(),
                     [](const OhlcvBar& a, const OhlcvBar& b) { return a.date < b.date; });
    for (size_t i = 1; i < history.bars.size(); ++i) {
        if (history.bars[i].date == history.bars[i - 1].date) {
            throw ValidationError(path.string() + ": duplicate date " +
                                  history.bars[i].date.to_string());
        }
    }
    return history;
}

void save_ohlcv_csv(const PriceHistory& history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << "date,open,high,low,close,volume\n";
    for (const OhlcvBar& bar : history.bars) {
        out << bar.date.to_string() << ',' << format_double(bar.open) << ','
            << format_double(bar.high) << ',' << format_double(bar.low) << ','
            << format_double(bar.close) << ',' << format_double(bar.volume) << '\n';
    }
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

Universe Universe::build(std::vector<PriceHistory> histories) {
    if (histories.empty()) {
        throw ValidationError("universe needs at least one price history");
    }
    std::sort(histories.begin(), histories.end(),
              [](const PriceHistory& a, const PriceHistory& b) { return a.symbol < b.symbol; });

    Universe u;
    std::set<Date> dates;
    for (auto& h : histories) {
        if (!u.index_.emplace(h.symbol, u.histories_.size()).second) {
            throw ValidationError("duplicate symbol '" + h.symbol + "'");
        }
        for (size_t i = 1; i < h.bars.size(); ++i) {
            if (!(h.bars[i - 1].date < h.bars[i].date)) {
                throw ValidationError(h.symbol + ": bars not strictly date-ascending at " +
                                      h.bars[i].date.to_string());
            }
        }
        for (const OhlcvBar& bar : h.bars) dates.insert(bar.date);
        u.symbols_.push_back(h.symbol);
        u.histories_.push_back(std::move(h));
    }
    u.calendar_.assign(dates.begin(), dates.end());
    return u;
}

bool Universe::has_symbol(const std::string& symbol) const {
    return index_.count(symbol) != 0;
}

const PriceHistory& Universe::history(const std::string& symbol) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) {
        throw ValidationError("unknown symbol '" + symbol + "'");
    }
    return histories_[it->second];
}

bool Universe::trades_on(const std::string& symbol, const Date& date) const {
    return history(symbol).bar_on(date) != nullptr;
}

CutoffView::CutoffView(const Universe& universe, Date cutoff)
    : universe_(&universe), cutoff_(cutoff) {}

std::span<const OhlcvBar> CutoffView::bars(const std::string& symbol) const {
    const PriceHistory& h = universe_->history(symbol);
    return std::span<const OhlcvBar>(h.bars.data(), h.upper_bound(cutoff_));
}

bool CutoffView::trades_on_cutoff(const std::string& symbol) const {
    return universe_->history(symbol).bar_on(cutoff_) != nullptr;
}

std::vector<double> CutoffView::window(const std::string& symbol, size_t length) const {
    auto visible = bars(symbol);
    if (visible.empty() || visible.back().date != cutoff_) {
        throw InsufficientHistoryError(symbol + " does not trade on " + cutoff_.to_string());
    }
    if (visible.size() < length) {
        throw InsufficientHistoryError(symbol + ": need " + std::to_string(length) +
                                       " bars at " + cutoff_.to_string() + ", have " +
                                       std::to_string(visible.size()));
    }
    std::vector<double> closes(length);
    for (size_t i = 0; i < length; ++i) {
        closes[i] = visible[visible.size() - length + i].close;
    }
    return closes;
}

} // namespace topsel
