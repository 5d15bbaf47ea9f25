#include "topsel/emd.hpp"

#include "topsel/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace topsel;

namespace {

// Exhaustive three-point scan, written independently of find_extrema.
std::pair<std::vector<size_t>, std::vector<size_t>> scan_extrema(const std::vector<double>& y) {
    std::vector<size_t> maxima, minima;
    for (size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] && y[i] > y[i + 1]) maxima.push_back(i);
        if (y[i] < y[i - 1] && y[i] < y[i + 1]) minima.push_back(i);
    }
    return {maxima, minima};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Least-squares slope of y against its sample index.
double regression_slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double mean_x = (n - 1) / 2, mean_y = 0;
    for (double v : y) mean_y += v;
    mean_y /= n;
    double num = 0, den = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        num += (static_cast<double>(i) - mean_x) * (y[i] - mean_y);
        den += (static_cast<double>(i) - mean_x) * (static_cast<double>(i) - mean_x);
    }
    return num / den;
}

std::vector<double> random_walk(std::mt19937_64& gen, size_t length) {
    std::vector<double> y(length);
    double v = 0;
    for (size_t i = 0; i < length; ++i) {
        v += 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
        y[i] = v;
    }
    return y;
}

} // namespace

TEST_CASE("find_extrema basics") {
    SUBCASE("single peak") {
        const auto [maxima, minima] = find_extrema(std::vector<double>{0, 1, 0});
        CHECK(maxima == std::vector<size_t>{1});
        CHECK(minima.empty());
    }
    SUBCASE("monotone series has no interior extrema") {
        const auto [maxima, minima] = find_extrema(std::vector<double>{1, 2, 3, 4, 5});
        CHECK(maxima.empty());
        CHECK(minima.empty());
    }
    SUBCASE("sampled sine matches the exhaustive scan") {
        std::vector<double> y(50);
        for (size_t i = 0; i < y.size(); ++i) {
            y[i] = std::sin(2 * std::numbers::pi * 2.0 * double(i) / double(y.size()));
        }
        const auto expected = scan_extrema(y);
        const auto got = find_extrema(y);
        CHECK(got.first == expected.first);
        CHECK(got.second == expected.second);
    }
    SUBCASE("plateau takes its first sample") {
        const auto [maxima, minima] = find_extrema(std::vector<double>{0, 2, 2, 2, 0, -1, -1, 0});
        CHECK(maxima == std::vector<size_t>{1});
        CHECK(minima == std::vector<size_t>{5});
    }
    SUBCASE("too short") {
        CHECK_THROWS_AS(find_extrema(std::vector<double>{1, 2}), ValidationError);
    }
}

TEST_CASE("envelope bounds the series between its splines at extrema support") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto y = random_walk(gen, 60 + gen() % 100);
        const auto env = envelope(y);
        if (!env) continue;
        for (size_t i = 0; i < y.size(); ++i) {
            CHECK(env->upper[i] >= env->lower[i] - 1e-9);
            CHECK(env->mean[i] == doctest::Approx((env->upper[i] + env->lower[i]) / 2));
        }
    }
}

TEST_CASE("sift_once on a pure sine is nearly the identity") {
    std::vector<double> y(50);
    for (size_t i = 0; i < y.size(); ++i) {
        y[i] = std::sin(2 * std::numbers::pi * 2.0 * double(i) / double(y.size()));
    }
    const auto h = sift_once(y);
    REQUIRE(h.has_value());
    double worst_interior = 0;
    for (size_t i = 5; i + 5 < y.size(); ++i) {
        worst_interior = std::max(worst_interior, std::abs((*h)[i] - y[i]));
    }
    CHECK(worst_interior < 0.05);
}

TEST_CASE("sift_once signals a trend remainder when extrema are scarce") {
    CHECK(!sift_once(std::vector<double>{1, 2, 3, 4, 5, 6}).has_value());
    CHECK(!sift_once(std::vector<double>{1, 5, 2, 1.5, 1.2, 1.1}).has_value()); // one maximum
}

TEST_CASE("sift_once shrinks the slope of a ramp plus sine") {
    std::vector<double> y(64);
    for (size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.05 * double(i) + std::sin(2 * std::numbers::pi * double(i) / 8.0);
    }
    const auto h = sift_once(y);
    REQUIRE(h.has_value());
    CHECK(std::abs(regression_slope(*h)) < std::abs(regression_slope(y)));
}

TEST_CASE("decompose: monotone input gives zero IMFs and residuum = input") {
    const std::vector<double> y = {1, 2, 4, 8, 16};
    const ImfSet set = decompose(y);
    CHECK(set.imfs.empty());
    CHECK(set.residuum == y);
}

TEST_CASE("decompose separates a fast sinusoid from a slow one") {
    std::vector<double> y(256), fast(256);
    for (size_t i = 0; i < y.size(); ++i) {
        const double t = double(i) / double(y.size());
        fast[i] = std::sin(2 * std::numbers::pi * 10.0 * t);
        y[i] = fast[i] + std::sin(2 * std::numbers::pi * t);
    }
    const ImfSet set = decompose(y);
    REQUIRE(!set.imfs.empty());

    // Pearson correlation with the known fast component on the interior 80%.
    const size_t a = y.size() / 10, b = y.size() - y.size() / 10;
    double mean_c = 0, mean_f = 0;
    for (size_t i = a; i < b; ++i) {
        mean_c += set.imfs[0][i];
        mean_f += fast[i];
    }
    mean_c /= double(b - a);
    mean_f /= double(b - a);
    double num = 0, var_c = 0, var_f = 0;
    for (size_t i = a; i < b; ++i) {
        num += (set.imfs[0][i] - mean_c) * (fast[i] - mean_f);
        var_c += (set.imfs[0][i] - mean_c) * (set.imfs[0][i] - mean_c);
        var_f += (fast[i] - mean_f) * (fast[i] - mean_f);
    }
    CHECK(num / std::sqrt(var_c * var_f) > 0.95);
}

TEST_CASE("reconstruction identity and frequency ordering on random series") {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t length = 20 + gen() % 381;
        const auto y = random_walk(gen, length);
        const ImfSet set = decompose(y);

        REQUIRE(set.residuum.size() == y.size());
        std::vector<double> sum = set.residuum;
        for (const auto& imf : set.imfs) {
            REQUIRE(imf.size() == y.size());
            for (size_t i = 0; i < y.size(); ++i) sum[i] += imf[i];
        }
        CHECK(max_abs_diff(sum, y) < 1e-9);

        for (size_t k = 1; k < set.imfs.size(); ++k) {
            CHECK(zero_crossings(set.imfs[k - 1]) >= zero_crossings(set.imfs[k]));
        }

        // The residuum is monotone-like: fewer than 2 maxima or minima.
        if (set.residuum.size() >= 3) {
            const auto [maxima, minima] = find_extrema(set.residuum);
            CHECK((maxima.size() < 2 || minima.size() < 2));
        }
    }
}

TEST_CASE("decompose is deterministic") {
    std::mt19937_64 gen(77);
    const auto y = random_walk(gen, 120);
    const ImfSet a = decompose(y);
    const ImfSet b = decompose(y);
    REQUIRE(a.imfs.size() == b.imfs.size());
    for (size_t k = 0; k < a.imfs.size(); ++k) CHECK(a.imfs[k] == b.imfs[k]);
    CHECK(a.residuum == b.residuum);
}

TEST_CASE("decompose rejects very short input") {
    CHECK_THROWS_AS(decompose(std::vector<double>{1, 2, 3}), ValidationError);
}
