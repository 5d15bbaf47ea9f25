#include "topsel/synthetic.hpp"

#include "topsel/errors.hpp"
#include "topsel/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace topsel {

namespace {

std::vector<Date> weekday_calendar(Date start, int count) {
    namespace chr = std::chrono;
    chr::sys_days day{chr::year_month_day(chr::year(start.year()),
                                          chr::month(static_cast<unsigned>(start.month())),
                                          chr::day(static_cast<unsigned>(start.day())))};
    std::vector<Date> out;
    out.reserve(static_cast<size_t>(count));
    while (out.size() < static_cast<size_t>(count)) {
        const chr::weekday wd{day};
        if (wd != chr::Saturday && wd != chr::Sunday) {
            const chr::year_month_day ymd{day};
            out.emplace_back(int(ymd.year()), int(unsigned(ymd.month())),
                             int(unsigned(ymd.day())));
        }
        day += chr::days(1);
    }
    return out;
}

} // namespace

std::vector<PriceHistory> make_synthetic_histories(int symbol_count, int day_count,
                                                   std::uint64_t seed, Date start) {
    if (symbol_count < 1 || day_count < 1) {
        throw ValidationError("synthetic universe needs at least one symbol and one day");
    }
    const std::vector<Date> calendar = weekday_calendar(start, day_count);

    std::vector<PriceHistory> histories;
    histories.reserve(static_cast<size_t>(symbol_count));
    for (int s = 0; s < symbol_count; ++s) {
        char name[16];
        std::snprintf(name, sizeof name, "S%02d", s);
        std::mt19937_64 gen(derive_seed(seed, name));

        const double drift = -0.0012 + 0.0030 * uniform01(gen);
        const double volatility = 0.005 + 0.025 * uniform01(gen);
        double close = 5.0 + 45.0 * uniform01(gen);

        PriceHistory history;
        history.symbol = name;
        history.bars.reserve(calendar.size());
        for (const Date& date : calendar) {
            OhlcvBar bar;
            bar.date = date;
            bar.open = close;
            close *= std::exp(drift + volatility * uniform_pm1(gen));
            bar.close = close;
            const double hi_pad = 1.0 + 0.01 * uniform01(gen);
            const double lo_pad = 1.0 - 0.01 * uniform01(gen);
            bar.high = std::max(bar.open, bar.close) * hi_pad;
            bar.low = std::min(bar.open, bar.close) * lo_pad;
            bar.volume = std::floor(1e5 + 9e5 * uniform01(gen));
            bar.validate();
            history.bars.push_back(bar);
        }
        histories.push_back(std::move(history));
    }
    return histories;
}

Universe make_synthetic_universe(int symbol_count, int day_count, std::uint64_t seed,
                                 Date start) {
    return Universe::build(make_synthetic_histories(symbol_count, day_count, seed, start));
}

} // namespace topsel
