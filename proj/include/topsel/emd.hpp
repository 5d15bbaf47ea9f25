#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace topsel {

/// Upper/lower cubic-spline envelopes through the local extrema and their
/// pointwise mean.
struct Envelope {
    std::vector<double> upper;
    std::vector<double> lower;
    std::vector<double> mean;
};

/// Ordered intrinsic mode functions plus the final residuum of one
/// decomposition; input == sum of imfs + residuum elementwise.
struct ImfSet {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residuum;
    size_t input_length = 0;
};

struct SiftLimits {
    double sd_threshold = 0.2; // stop when sum((h_prev-h)^2)/sum(h_prev^2) drops below
    int max_iterations = 10;
};

/// Strict three-point local extrema; for a plateau the first sample of the
/// flat run that qualifies is the extremum index. Needs length >= 3.
std::pair<std::vector<size_t>, std::vector<size_t>>
find_extrema(std::span<const double> series);

/// Envelopes through maxima/minima, each extended by mirroring the two
/// nearest extrema about the endpoints before splining. Empty when fewer
/// than 2 maxima or 2 minima exist (no spline support).
std::optional<Envelope> envelope(std::span<const double> series);

/// One sifting pass: series minus its envelope mean. Empty signals a
/// monotone/trend remainder (insufficient extrema).
std::optional<std::vector<double>> sift_once(std::span<const double> series);

/// Iteratively extracts IMFs until the remainder has fewer than 2 maxima
/// or 2 minima; that remainder is the residuum. A candidate is accepted as
/// an IMF once its extrema and zero-crossing counts differ by at most one,
/// the sifting SD criterion fires, or max_iterations passes have run.
/// Deterministic; needs length >= 4.
ImfSet decompose(std::span<const double> series, SiftLimits limits = {});

/// Sign changes over the sample sequence (zeros themselves do not add
/// crossings beyond the sign change they sit on).
size_t zero_crossings(std::span<const double> series);

} // namespace topsel
