#include "topsel/topsis.hpp"

#include "topsel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace topsel {

const char* normalization_name(Normalization method) {
    switch (method) {
        case Normalization::Vector: return "vector";
        case Normalization::MaxMin: return "max_min";
        case Normalization::Max: return "max";
        case Normalization::Sum: return "sum";
    }
    return "?";
}

Normalization normalization_from_name(const std::string& name) {
    if (name == "vector") return Normalization::Vector;
    if (name == "max_min") return Normalization::MaxMin;
    if (name == "max") return Normalization::Max;
    if (name == "sum") return Normalization::Sum;
    throw ParseError("unknown normalization '" + name +
                     "' (expected vector, max_min, max or sum)");
}

void DecisionMatrix::validate() const {
    const size_t m = alternatives.size();
    const size_t n = criteria.size();
    if (m < 2) throw ValidationError("decision matrix needs at least 2 alternatives");
    if (n < 1) throw ValidationError("decision matrix needs at least 1 criterion");
    if (values.size() != m) throw ValidationError("decision matrix row count mismatch");
    for (const auto& row : values) {
        if (row.size() != n) throw ValidationError("decision matrix column count mismatch");
        for (double x : row) {
            if (!std::isfinite(x)) throw ValidationError("decision matrix entry not finite");
        }
    }
    double weight_sum = 0;
    for (const CriterionSpec& c : criteria) {
        if (!(c.weight >= 0)) throw ValidationError("criterion '" + c.name +
                                                    "': weight must be nonnegative");
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-9) {
        throw ValidationError("criterion weights must sum to 1");
    }
}

std::vector<std::vector<double>> normalize(const DecisionMatrix& matrix, Normalization method) {
    matrix.validate();
    const size_t m = matrix.alternatives.size();
    const size_t n = matrix.criteria.size();
    std::vector<std::vector<double>> r(m, std::vector<double>(n, 0.0));

    for (size_t j = 0; j < n; ++j) {
        const std::string& name = matrix.criteria[j].name;
        switch (method) {
            case Normalization::Vector: {
                double ss = 0;
                for (size_t i = 0; i < m; ++i) ss += matrix.values[i][j] * matrix.values[i][j];
                if (ss == 0) {
                    throw DegenerateColumnError("criterion '" + name +
                                                "': all-zero column under vector normalization");
                }
                const double norm = std::sqrt(ss);
                for (size_t i = 0; i < m; ++i) r[i][j] = matrix.values[i][j] / norm;
                break;
            }
            case Normalization::MaxMin: {
                double lo = matrix.values[0][j], hi = lo;
                for (size_t i = 1; i < m; ++i) {
                    lo = std::min(lo, matrix.values[i][j]);
                    hi = std::max(hi, matrix.values[i][j]);
                }
                if (hi == lo) {
                    throw DegenerateColumnError("criterion '" + name +
                                                "': constant column under max-min normalization");
                }
                for (size_t i = 0; i < m; ++i) r[i][j] = (matrix.values[i][j] - lo) / (hi - lo);
                break;
            }
            case Normalization::Max: {
                double hi = matrix.values[0][j];
                for (size_t i = 1; i < m; ++i) hi = std::max(hi, matrix.values[i][j]);
                if (hi <= 0) {
                    throw DegenerateColumnError("criterion '" + name +
                                                "': column max <= 0 under max normalization");
                }
                for (size_t i = 0; i < m; ++i) r[i][j] = matrix.values[i][j] / hi;
                break;
            }
            case Normalization::Sum: {
                double sum = 0;
                for (size_t i = 0; i < m; ++i) sum += matrix.values[i][j];
                if (sum <= 0) {
                    throw DegenerateColumnError("criterion '" + name +
                                                "': column sum <= 0 under sum normalization");
                }
                for (size_t i = 0; i < m; ++i) r[i][j] = matrix.values[i][j] / sum;
                break;
            }
        }
    }
    return r;
}

Ranking rank(const DecisionMatrix& matrix, Normalization method) {
    auto weighted = normalize(matrix, method);
    const size_t m = matrix.alternatives.size();
    const size_t n = matrix.criteria.size();
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) weighted[i][j] *= matrix.criteria[j].weight;
    }

    std::vector<double> ideal(n), anti_ideal(n);
    for (size_t j = 0; j < n; ++j) {
        double lo = weighted[0][j], hi = lo;
        for (size_t i = 1; i < m; ++i) {
            lo = std::min(lo, weighted[i][j]);
            hi = std::max(hi, weighted[i][j]);
        }
        const bool benefit = matrix.criteria[j].kind == CriterionKind::Benefit;
        ideal[j] = benefit ? hi : lo;
        anti_ideal[j] = benefit ? lo : hi;
    }

    Ranking ranking;
    ranking.entries.resize(m);
    for (size_t i = 0; i < m; ++i) {
        double d_pos = 0, d_neg = 0;
        for (size_t j = 0; j < n; ++j) {
            const double dp = ideal[j] - weighted[i][j];
            const double dn = anti_ideal[j] - weighted[i][j];
            d_pos += dp * dp;
            d_neg += dn * dn;
        }
        d_pos = std::sqrt(d_pos);
        d_neg = std::sqrt(d_neg);
        ranking.entries[i].label = matrix.alternatives[i];
        ranking.entries[i].closeness = (d_neg == 0) ? 0.0 : d_neg / (d_neg + d_pos);
    }

    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const RankedAlternative& a, const RankedAlternative& b) {
                  if (a.closeness != b.closeness) return a.closeness > b.closeness;
                  return a.label < b.label;
              });
    for (size_t i = 0; i < m; ++i) ranking.entries[i].rank = static_cast<int>(i) + 1;
    return ranking;
}

} // namespace topsel
