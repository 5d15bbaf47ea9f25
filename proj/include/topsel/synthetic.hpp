#pragma once

#include "topsel/market_data.hpp"

#include <cstdint>

namespace topsel {

/// Deterministic random-walk OHLCV universe for demos and stress tests:
/// `symbol_count` stocks named S00, S01, ... sharing `day_count` weekday
/// dates from `start`. Same seed, same universe.
Universe make_synthetic_universe(int symbol_count, int day_count, std::uint64_t seed,
                                 Date start = Date(2016, 1, 4));

/// The bare histories, for writing out as CSV files.
std::vector<PriceHistory> make_synthetic_histories(int symbol_count, int day_count,
                                                   std::uint64_t seed,
                                                   Date start = Date(2016, 1, 4));

} // namespace topsel
