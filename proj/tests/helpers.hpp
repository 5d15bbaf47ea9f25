// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library's implementation paths: the pseudoinverse
// oracle is a one-sided Jacobi SVD written here, the ranking oracle follows
// the closeness definitions step by step on plain vectors.
#pragma once

#include "topsel/market_data.hpp"
#include "topsel/topsis.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace testutil {

// Bars with the given closes on consecutive synthetic dates; open = close,
// high/low padded so every bar is valid and the stochastic window is not
// degenerate.
inline std::vector<topsel::OhlcvBar> bars_from_closes(const std::vector<double>& closes) {
    std::vector<topsel::OhlcvBar> bars;
    int serial = 0;
    for (double close : closes) {
        topsel::OhlcvBar bar;
        bar.date = topsel::Date(2016, 1 + serial / 28, 1 + serial % 28);
        ++serial;
        bar.open = close;
        bar.close = close;
        bar.high = close * 1.01;
        bar.low = close * 0.99;
        bar.volume = 1000;
        bars.push_back(bar);
    }
    return bars;
}

inline topsel::PriceHistory history_of(std::string symbol, const std::vector<double>& closes) {
    topsel::PriceHistory history;
    history.symbol = std::move(symbol);
    history.bars = bars_from_closes(closes);
    return history;
}

// Step-by-step evaluation of the closeness coefficients on an already
// normalized matrix, independent of topsel::rank.
inline std::vector<double> closeness_oracle(const std::vector<std::vector<double>>& normalized,
                                            const std::vector<double>& weights,
                                            const std::vector<bool>& is_benefit) {
    const size_t m = normalized.size();
    const size_t n = weights.size();
    std::vector<std::vector<double>> v(m, std::vector<double>(n));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) v[i][j] = normalized[i][j] * weights[j];
    }
    std::vector<double> best(n), worst(n);
    for (size_t j = 0; j < n; ++j) {
        double lo = v[0][j], hi = v[0][j];
        for (size_t i = 1; i < m; ++i) {
            lo = std::min(lo, v[i][j]);
            hi = std::max(hi, v[i][j]);
        }
        best[j] = is_benefit[j] ? hi : lo;
        worst[j] = is_benefit[j] ? lo : hi;
    }
    std::vector<double> xi(m);
    for (size_t i = 0; i < m; ++i) {
        double dp = 0, dn = 0;
        for (size_t j = 0; j < n; ++j) {
            dp += (best[j] - v[i][j]) * (best[j] - v[i][j]);
            dn += (worst[j] - v[i][j]) * (worst[j] - v[i][j]);
        }
        dp = std::sqrt(dp);
        dn = std::sqrt(dn);
        xi[i] = (dn == 0) ? 0.0 : dn / (dn + dp);
    }
    return xi;
}

// One-sided Jacobi (Hestenes) factorization: rotates the columns of `a`
// to mutual orthogonality, accumulating the rotations in `v`. Afterwards
// column j of `a` equals sigma_j * u_j.
struct JacobiColumns {
    std::vector<std::vector<double>> a; // m x n, rotated
    std::vector<std::vector<double>> v; // n x n
    std::vector<double> sigma;          // n
};

inline JacobiColumns jacobi_factor(std::vector<std::vector<double>> a) {
    const size_t m = a.size();
    const size_t n = a.empty() ? 0 : a[0].size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (size_t j = 0; j < n; ++j) v[j][j] = 1.0;

    auto col_dot = [&](size_t p, size_t q) {
        double sum = 0;
        for (size_t i = 0; i < m; ++i) sum += a[i][p] * a[i][q];
        return sum;
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                const double app = col_dot(p, p);
                const double aqq = col_dot(q, q);
                const double apq = col_dot(p, q);
                if (app * aqq > 0) off = std::max(off, std::abs(apq) / std::sqrt(app * aqq));
                if (std::abs(apq) < 1e-300) continue;
                const double tau = (aqq - app) / (2 * apq);
                const double sign = tau >= 0 ? 1.0 : -1.0;
                const double t_rot = sign / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1 / std::sqrt(1 + t_rot * t_rot);
                const double s = c * t_rot;
                for (size_t i = 0; i < m; ++i) {
                    const double ap = a[i][p], aq = a[i][q];
                    a[i][p] = c * ap - s * aq;
                    a[i][q] = s * ap + c * aq;
                }
                for (size_t i = 0; i < n; ++i) {
                    const double vp = v[i][p], vq = v[i][q];
                    v[i][p] = c * vp - s * vq;
                    v[i][q] = s * vp + c * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }

    JacobiColumns result;
    result.sigma.resize(n);
    for (size_t j = 0; j < n; ++j) result.sigma[j] = std::sqrt(col_dot(j, j));
    result.a = std::move(a);
    result.v = std::move(v);
    return result;
}

// Minimum-norm least-squares solve through the Jacobi factorization,
// independent of Eigen. Singular values below rcond * sigma_max are dropped.
inline std::vector<double> jacobi_pinv_solve(const std::vector<std::vector<double>>& a,
                                             const std::vector<double>& t,
                                             double rcond = 1e-12) {
    const JacobiColumns f = jacobi_factor(a);
    const size_t m = a.size();
    const size_t n = f.sigma.size();
    double sigma_max = 0;
    for (double s : f.sigma) sigma_max = std::max(sigma_max, s);

    std::vector<double> beta(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        if (f.sigma[j] <= rcond * sigma_max || f.sigma[j] == 0) continue;
        double ut = 0;
        for (size_t i = 0; i < m; ++i) ut += (f.a[i][j] / f.sigma[j]) * t[i];
        for (size_t i = 0; i < n; ++i) beta[i] += f.v[i][j] * ut / f.sigma[j];
    }
    return beta;
}

// sigma_min / sigma_max; used to reject near-rank-deficient random problems
// where two correct pseudoinverse routes may legitimately disagree.
inline double inverse_condition(const std::vector<std::vector<double>>& a) {
    const JacobiColumns f = jacobi_factor(a);
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (double s : f.sigma) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return hi == 0 ? 0.0 : lo / hi;
}

} // namespace testutil
