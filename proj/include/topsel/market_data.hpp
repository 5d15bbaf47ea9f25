#pragma once

#include "topsel/date.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace topsel {

/// One day of trading for one symbol.
struct OhlcvBar {
    Date date;
    double open = 0;
    double high = 0;
    double low = 0;
    double close = 0;
    double volume = 0;

    /// Throws ValidationError unless low <= open,close <= high, prices > 0,
    /// volume >= 0.
    void validate() const;
};

/// Date-ascending bar series for one symbol (strictly increasing dates).
struct PriceHistory {
    std::string symbol;
    std::vector<OhlcvBar> bars;

    /// Bar at exactly `date`, or nullptr.
    const OhlcvBar* bar_on(const Date& date) const;

    /// Index of the first bar with date > `date` (== bars.size() if none).
    size_t upper_bound(const Date& date) const;
};

/// Loads one `<SYMBOL>.csv` file: header `date,open,high,low,close,volume`,
/// ISO dates, plain decimals. Rows may arrive out of order and are sorted;
/// duplicate dates and invariant violations are errors.
PriceHistory load_ohlcv_csv(const std::filesystem::path& path, std::string symbol);

/// Writes the same format back out; load(save(h)) == h bit-for-bit.
void save_ohlcv_csv(const PriceHistory& history, const std::filesystem::path& path);

/// A set of price histories sharing one trading calendar (the sorted union
/// of all bar dates). Immutable after construction.
class Universe {
public:
    /// Throws ValidationError on duplicate symbols or empty input.
    static Universe build(std::vector<PriceHistory> histories);

    const std::vector<Date>& calendar() const { return calendar_; }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool has_symbol(const std::string& symbol) const;
    /// Throws ValidationError for unknown symbols.
    const PriceHistory& history(const std::string& symbol) const;

    /// A symbol trades on day t iff it has a bar dated t.
    bool trades_on(const std::string& symbol, const Date& date) const;

private:
    std::vector<PriceHistory> histories_;
    std::vector<std::string> symbols_; // sorted
    std::map<std::string, size_t> index_;
    std::vector<Date> calendar_;
};

/// Read-only view of a Universe that cannot see past its cutoff date: every
/// accessor slices bars to date <= cutoff before anything else happens.
class CutoffView {
public:
    CutoffView(const Universe& universe, Date cutoff);

    const Date& cutoff() const { return cutoff_; }
    const std::vector<std::string>& symbols() const { return universe_->symbols(); }

    /// Bars of `symbol` dated <= cutoff, oldest first.
    std::span<const OhlcvBar> bars(const std::string& symbol) const;

    bool trades_on_cutoff(const std::string& symbol) const;

    /// The last `length` closes of `symbol` ending exactly at the cutoff day,
    /// oldest first. Throws InsufficientHistoryError if the symbol does not
    /// trade on the cutoff day or has fewer than `length` bars by then.
    std::vector<double> window(const std::string& symbol, size_t length) const;

private:
    const Universe* universe_;
    Date cutoff_;
};

} // namespace topsel
