#pragma once

#include "topsel/market_data.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace topsel {

enum class IndicatorKind { Rsi, StochK, StochD, Cci };

const char* indicator_name(IndicatorKind kind);
IndicatorKind indicator_from_name(const std::string& name); // throws ParseError

/// An indicator sampled once per input bar. Entries are empty until the
/// warm-up for the given period has elapsed; a defined value at index t
/// depends only on bars [0, t].
struct IndicatorSeries {
    std::string symbol;
    IndicatorKind kind = IndicatorKind::Rsi;
    int period = 0;
    std::vector<std::optional<double>> values;
};

/// Relative strength index over simple means of the last `period` close
/// changes. Degenerate windows: no losses -> 100, no gains -> 0, no
/// changes at all -> 50. Defined once `period` changes exist.
IndicatorSeries rsi(std::span<const double> closes, int period);

/// Stochastic %K over the last period+1 bars (the window spans t-n..t).
/// A flat window (max high == min low) yields 50.
IndicatorSeries stochastic_k(std::span<const OhlcvBar> bars, int period);

/// %D: moving average of the last `period` defined %K values.
IndicatorSeries stochastic_d(const IndicatorSeries& k, int period);

/// Commodity channel index of the typical price (C+L+H)/3 over the last
/// `period` bars; zero mean absolute deviation yields 0.
IndicatorSeries cci(std::span<const OhlcvBar> bars, int period);

enum class Signal { Buy, Sell, Neutral };
enum class Rule { Rsi, K, D, KD, Cci };

/// Threshold-crossing trading rules over consecutive indicator values:
/// RSI crosses 30 up / 70 down, %K and %D cross 20 up / 80 down, CCI
/// crosses +-100 in either stated direction. Inputs must be finite.
Signal classify_signal(Rule rule, double prev, double curr);

/// The %K/%D line-crossing rule.
Signal classify_kd_signal(double k_prev, double d_prev, double k_curr, double d_curr);

} // namespace topsel
