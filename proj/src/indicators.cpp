#include "topsel/indicators.hpp"

#include "topsel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace topsel {

const char* indicator_name(IndicatorKind kind) {
    switch (kind) {
        case IndicatorKind::Rsi: return "rsi";
        case IndicatorKind::StochK: return "stoch_k";
        case IndicatorKind::StochD: return "stoch_d";
        case IndicatorKind::Cci: return "cci";
    }
    return "?";
}

IndicatorKind indicator_from_name(const std::string& name) {
    if (name == "rsi") return IndicatorKind::Rsi;
    if (name == "stoch_k") return IndicatorKind::StochK;
    if (name == "stoch_d") return IndicatorKind::StochD;
    if (name == "cci") return IndicatorKind::Cci;
    throw ParseError("unknown indicator '" + name +
                     "' (expected rsi, stoch_k, stoch_d or cci)");
}

namespace {

void require_period(int period) {
    if (period < 1) throw ValidationError("indicator period must be >= 1");
}

} // namespace

IndicatorSeries rsi(std::span<const double> closes, int period) {
    require_period(period);
    IndicatorSeries out;
    out.kind = IndicatorKind::Rsi;
    out.period = period;
    out.values.assign(closes.size(), std::nullopt);

    const size_t n = static_cast<size_t>(period);
    for (size_t t = n; t < closes.size(); ++t) {
        double gains = 0, losses = 0;
        for (size_t i = t - n + 1; i <= t; ++i) {
            const double change = closes[i] - closes[i - 1];
            if (change > 0) gains += change;
            else losses -= change;
        }
        double value;
        if (losses == 0 && gains == 0) {
            value = 50.0;
        } else if (losses == 0) {
            value = 100.0;
        } else if (gains == 0) {
            value = 0.0;
        } else {
            const double rs = (gains / period) / (losses / period);
            value = 100.0 - 100.0 / (1.0 + rs);
        }
        out.values[t] = value;
    }
    return out;
}

IndicatorSeries stochastic_k(std::span<const OhlcvBar> bars, int period) {
    require_period(period);
    IndicatorSeries out;
    out.kind = IndicatorKind::StochK;
    out.period = period;
    out.values.assign(bars.size(), std::nullopt);

    const size_t n = static_cast<size_t>(period);
    for (size_t t = n; t < bars.size(); ++t) {
        double lo = bars[t - n].low, hi = bars[t - n].high;
        for (size_t i = t - n + 1; i <= t; ++i) {
            lo = std::min(lo, bars[i].low);
            hi = std::max(hi, bars[i].high);
        }
        out.values[t] = (hi == lo) ? 50.0 : 100.0 * (bars[t].close - lo) / (hi - lo);
    }
    return out;
}

IndicatorSeries stochastic_d(const IndicatorSeries& k, int period) {
    require_period(period);
    IndicatorSeries out;
    out.symbol = k.symbol;
    out.kind = IndicatorKind::StochD;
    out.period = period;
    out.values.assign(k.values.size(), std::nullopt);

    const size_t n = static_cast<size_t>(period);
    for (size_t t = 0; t < k.values.size(); ++t) {
        if (!k.values[t] || t + 1 < n) continue;
        bool all_defined = true;
        double sum = 0;
        for (size_t i = t + 1 - n; i <= t; ++i) {
            if (!k.values[i]) { all_defined = false; break; }
            sum += *k.values[i];
        }
        if (all_defined) out.values[t] = sum / period;
    }
    return out;
}

IndicatorSeries cci(std::span<const OhlcvBar> bars, int period) {
    require_period(period);
    IndicatorSeries out;
    out.kind = IndicatorKind::Cci;
    out.period = period;
    out.values.assign(bars.size(), std::nullopt);

    std::vector<double> typical(bars.size());
    for (size_t i = 0; i < bars.size(); ++i) {
        typical[i] = (bars[i].close + bars[i].low + bars[i].high) / 3.0;
    }

    const size_t n = static_cast<size_t>(period);
    for (size_t t = n - 1; t < bars.size(); ++t) {
        double mean = 0;
        for (size_t i = t + 1 - n; i <= t; ++i) mean += typical[i];
        mean /= period;
        double mad = 0;
        for (size_t i = t + 1 - n; i <= t; ++i) mad += std::abs(typical[i] - mean);
        mad /= period;
        out.values[t] = (mad == 0) ? 0.0 : (typical[t] - mean) / (0.015 * mad);
    }
    return out;
}

namespace {

void require_finite(double prev, double curr) {
    if (!std::isfinite(prev) || !std::isfinite(curr)) {
        throw ValidationError("signal classification needs defined values at t-1 and t");
    }
}

Signal crossing_rule(double prev, double curr, double lower, double upper) {
    if (prev < lower && curr > lower) return Signal::Buy;
    if (prev > upper && curr < upper) return Signal::Sell;
    return Signal::Neutral;
}

} // namespace

Signal classify_signal(Rule rule, double prev, double curr) {
    require_finite(prev, curr);
    switch (rule) {
        case Rule::Rsi: return crossing_rule(prev, curr, 30.0, 70.0);
        case Rule::K: return crossing_rule(prev, curr, 20.0, 80.0);
        case Rule::D: return crossing_rule(prev, curr, 20.0, 80.0);
        case Rule::Cci:
            if ((prev < -100 && curr > -100) || (prev < 100 && curr > 100)) return Signal::Buy;
            if ((prev > -100 && curr < -100) || (prev > 100 && curr < 100)) return Signal::Sell;
            return Signal::Neutral;
        case Rule::KD:
            throw ValidationError("KD rule needs both %K and %D pairs; use classify_kd_signal");
    }
    return Signal::Neutral;
}

Signal classify_kd_signal(double k_prev, double d_prev, double k_curr, double d_curr) {
    require_finite(k_prev, k_curr);
    require_finite(d_prev, d_curr);
    if (k_prev < d_prev && k_curr > d_curr) return Signal::Buy;
    if (k_prev > d_prev && k_curr < d_curr) return Signal::Sell;
    return Signal::Neutral;
}

} // namespace topsel
