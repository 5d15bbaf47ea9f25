#include "topsel/emd.hpp"

#include "topsel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace topsel {

namespace {

// Natural cubic spline through (xs, ys), xs strictly increasing; evaluated
// at the integer sample positions 0..count-1. Second derivatives come from
// the standard tridiagonal system (Thomas algorithm), zero at both ends.
std::vector<double> natural_spline_at_samples(const std::vector<double>& xs,
                                              const std::vector<double>& ys,
                                              size_t count) {
    const size_t k = xs.size();
    std::vector<double> out(count);
    if (k == 2) {
        const double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        for (size_t q = 0; q < count; ++q) {
            out[q] = ys[0] + slope * (static_cast<double>(q) - xs[0]);
        }
        return out;
    }

    std::vector<double> h(k - 1);
    for (size_t i = 0; i + 1 < k; ++i) h[i] = xs[i + 1] - xs[i];

    // Interior rows: h[i-1]*M[i-1] + 2(h[i-1]+h[i])*M[i] + h[i]*M[i+1] = rhs.
    std::vector<double> diag(k, 1.0), upper(k, 0.0), rhs(k, 0.0);
    for (size_t i = 1; i + 1 < k; ++i) {
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        upper[i] = h[i];
        rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
    }
    std::vector<double> m(k, 0.0);
    for (size_t i = 1; i + 1 < k; ++i) {
        const double lower = (i == 1) ? 0.0 : h[i - 1];
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (size_t i = k - 2; i >= 1; --i) {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    }

    size_t j = 0;
    for (size_t q = 0; q < count; ++q) {
        const double x = static_cast<double>(q);
        while (j + 2 < k && xs[j + 1] <= x) ++j;
        const double dx = xs[j + 1] - xs[j];
        const double a = (xs[j + 1] - x) / dx;
        const double b = (x - xs[j]) / dx;
        out[q] = a * ys[j] + b * ys[j + 1] +
                 ((a * a * a - a) * m[j] + (b * b * b - b) * m[j + 1]) * dx * dx / 6.0;
    }
    return out;
}

// Extrema knots extended by mirroring the two nearest extrema about each
// endpoint, then splined.
std::vector<double> envelope_through(std::span<const double> series,
                                     const std::vector<size_t>& extrema) {
    const size_t n = series.size();
    const double last = static_cast<double>(n - 1);
    std::vector<double> xs, ys;
    xs.reserve(extrema.size() + 4);
    ys.reserve(extrema.size() + 4);

    xs.push_back(-static_cast<double>(extrema[1]));
    ys.push_back(series[extrema[1]]);
    xs.push_back(-static_cast<double>(extrema[0]));
    ys.push_back(series[extrema[0]]);
    for (size_t idx : extrema) {
        xs.push_back(static_cast<double>(idx));
        ys.push_back(series[idx]);
    }
    xs.push_back(2.0 * last - static_cast<double>(extrema[extrema.size() - 1]));
    ys.push_back(series[extrema[extrema.size() - 1]]);
    xs.push_back(2.0 * last - static_cast<double>(extrema[extrema.size() - 2]));
    ys.push_back(series[extrema[extrema.size() - 2]]);

    return natural_spline_at_samples(xs, ys, n);
}

} // namespace

std::pair<std::vector<size_t>, std::vector<size_t>>
find_extrema(std::span<const double> series) {
    if (series.size() < 3) {
        throw ValidationError("find_extrema needs at least 3 samples");
    }
    std::vector<size_t> maxima, minima;
    size_t i = 1;
    while (i + 1 < series.size()) {
        if (series[i] == series[i + 1]) {
            // Plateau: compare its first sample against the neighbours of
            // the whole flat run.
            size_t j = i + 1;
            while (j + 1 < series.size() && series[j + 1] == series[i]) ++j;
            if (j + 1 < series.size()) {
                if (series[i] > series[i - 1] && series[i] > series[j + 1]) maxima.push_back(i);
                if (series[i] < series[i - 1] && series[i] < series[j + 1]) minima.push_back(i);
            }
            i = j + 1;
            continue;
        }
        if (series[i] > series[i - 1] && series[i] > series[i + 1]) maxima.push_back(i);
        if (series[i] < series[i - 1] && series[i] < series[i + 1]) minima.push_back(i);
        ++i;
    }
    return {std::move(maxima), std::move(minima)};
}

std::optional<Envelope> envelope(std::span<const double> series) {
    auto [maxima, minima] = find_extrema(series);
    if (maxima.size() < 2 || minima.size() < 2) return std::nullopt;

    Envelope env;
    env.upper = envelope_through(series, maxima);
    env.lower = envelope_through(series, minima);
    env.mean.resize(series.size());
    for (size_t i = 0; i < series.size(); ++i) {
        env.mean[i] = (env.upper[i] + env.lower[i]) / 2.0;
    }
    return env;
}

std::optional<std::vector<double>> sift_once(std::span<const double> series) {
    auto env = envelope(series);
    if (!env) return std::nullopt;
    std::vector<double> h(series.size());
    for (size_t i = 0; i < series.size(); ++i) h[i] = series[i] - env->mean[i];
    return h;
}

size_t zero_crossings(std::span<const double> series) {
    size_t count = 0;
    int last_sign = 0;
    for (double v : series) {
        const int sign = (v > 0) - (v < 0);
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++count;
            last_sign = sign;
        }
    }
    return count;
}

namespace {

bool is_imf_candidate(std::span<const double> h) {
    auto [maxima, minima] = find_extrema(h);
    const auto extrema = maxima.size() + minima.size();
    const auto crossings = zero_crossings(h);
    const auto diff = extrema > crossings ? extrema - crossings : crossings - extrema;
    return diff <= 1;
}

// Sift until the candidate passes the extrema/zero-crossing count check,
// the SD criterion fires, or the iteration cap is reached.
std::optional<std::vector<double>> sift_to_imf(std::span<const double> series,
                                               const SiftLimits& limits) {
    std::vector<double> h(series.begin(), series.end());
    for (int iter = 0; iter < limits.max_iterations; ++iter) {
        auto next = sift_once(h);
        if (!next) {
            return iter == 0 ? std::nullopt : std::optional<std::vector<double>>(std::move(h));
        }
        double num = 0, den = 0;
        for (size_t i = 0; i < h.size(); ++i) {
            const double d = h[i] - (*next)[i];
            num += d * d;
            den += h[i] * h[i];
        }
        h = std::move(*next);
        const double sd = (den > 0) ? num / den : 0.0;
        if (sd < limits.sd_threshold || is_imf_candidate(h)) break;
    }
    return h;
}

} // namespace

ImfSet decompose(std::span<const double> series, SiftLimits limits) {
    if (series.size() < 4) {
        throw ValidationError("decompose needs at least 4 samples");
    }
    ImfSet result;
    result.input_length = series.size();
    result.residuum.assign(series.begin(), series.end());

    while (true) {
        auto [maxima, minima] = find_extrema(result.residuum);
        if (maxima.size() < 2 || minima.size() < 2) break;
        auto imf = sift_to_imf(result.residuum, limits);
        if (!imf) break;
        for (size_t i = 0; i < result.residuum.size(); ++i) {
            result.residuum[i] -= (*imf)[i];
        }
        result.imfs.push_back(std::move(*imf));
    }
    return result;
}

} // namespace topsel
