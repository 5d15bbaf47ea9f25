#pragma once

#include <string>
#include <vector>

namespace topsel {

enum class CriterionKind { Cost, Benefit };

enum class Normalization { Vector, MaxMin, Max, Sum };

const char* normalization_name(Normalization method);
Normalization normalization_from_name(const std::string& name); // throws ParseError

struct CriterionSpec {
    std::string name;
    CriterionKind kind = CriterionKind::Cost;
    double weight = 0;
};

/// Alternatives x criteria ratings. Weights must sum to 1.
struct DecisionMatrix {
    std::vector<std::string> alternatives;        // m labels
    std::vector<CriterionSpec> criteria;          // n specs
    std::vector<std::vector<double>> values;      // m rows of n entries

    /// Throws ValidationError unless m >= 2, n >= 1, rows are rectangular,
    /// entries finite, weights nonnegative and summing to 1 (1e-9).
    void validate() const;
};

struct RankedAlternative {
    std::string label;
    double closeness = 0; // xi in [0, 1]
    int rank = 0;         // 1 = best
};

/// Entries sorted by rank; ties on closeness break lexicographically by label.
struct Ranking {
    std::vector<RankedAlternative> entries;
    const RankedAlternative& best() const { return entries.front(); }
};

/// Normalizes each column by the chosen method: vector x/sqrt(sum x^2),
/// max-min (x-min)/(max-min), max x/max, sum x/sum. Columns whose
/// denominator is zero (or <= 0 for max and sum, which would flip signs)
/// raise DegenerateColumnError naming the criterion.
std::vector<std::vector<double>> normalize(const DecisionMatrix& matrix, Normalization method);

/// Full ranking by relative closeness to the ideal solution: normalize,
/// weight, build ideal/anti-ideal per criterion kind, Euclidean distances,
/// xi = d-/(d- + d+). An alternative coinciding with the anti-ideal gets
/// xi = 0 (this also covers the all-rows-identical case where both
/// distances vanish).
Ranking rank(const DecisionMatrix& matrix, Normalization method);

} // namespace topsel
