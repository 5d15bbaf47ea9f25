#pragma once

#include "topsel/elm.hpp"
#include "topsel/indicators.hpp"
#include "topsel/market_data.hpp"
#include "topsel/topsis.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace topsel {

struct IndicatorSpec {
    IndicatorKind kind = IndicatorKind::Rsi;
    int period = 14;
};

/// Which indicators feed the daily decision matrix. Every criterion is a
/// cost criterion (low indicator value = oversold = preferred).
struct CriteriaConfig {
    std::vector<IndicatorSpec> indicators;
    std::vector<double> weights; // same length, sums to 1
    Normalization normalization = Normalization::Vector;

    /// RSI(14), %K(14), %D(3), CCI(14), equal weights.
    static CriteriaConfig defaults();

    /// Equal weights for the current indicator set.
    void reset_equal_weights();

    void validate() const;

    std::string criterion_name(size_t index) const;
};

/// Parameters of the trend-confirmation stage.
struct ConfirmConfig {
    int window_size = 270; // total prices in the training window
    int delays = 6;        // embedding width
    int neurons = 20;      // hidden layer size
    std::uint64_t seed = 0;

    void validate() const; // window_size - delays >= 2, positive fields
};

enum class Trend { High, Low };

/// Evaluates one indicator spec over a bar sequence. %D is computed from a
/// fresh %K line with period `stoch_k_period`.
IndicatorSeries compute_indicator(const IndicatorSpec& spec, std::span<const OhlcvBar> bars,
                                  int stoch_k_period);

/// The %K period the configuration implies for the %D input line (the
/// configured %K period when present, otherwise 14).
int stoch_k_period_of(const CriteriaConfig& config);

/// One row per stock that trades on the cutoff day and has every configured
/// indicator defined there; entries are the raw indicator values at cutoff.
/// Throws ValidationError when fewer than 2 stocks are eligible.
DecisionMatrix build_decision_matrix(const CutoffView& view, const CriteriaConfig& config);

struct SelectionResult {
    std::string symbol; // rank 1
    Ranking ranking;    // full ranking for audit
};

SelectionResult select_stock(const CutoffView& view, const CriteriaConfig& config);

/// Min-max normalization of a price window onto [0, 1]; min maps to 0,
/// max to 1, exactly. Throws DegenerateWindowError on constant windows.
std::vector<double> window_normalize(std::span<const double> prices);

/// Sliding delay embedding of a residuum of length n: n - delays training
/// rows (r_k..r_{k+mu-1} -> r_{k+mu}) plus the length-mu suffix as the test
/// input for predicting r_{n+1}.
struct DelayEmbedding {
    TrainingSet training;
    Eigen::VectorXd test_input;
};

DelayEmbedding embed_delays(std::span<const double> residuum, int delays);

/// High iff the prediction exceeds the last residuum value; ties are Low.
Trend classify_trend(double predicted, double last_residuum);

enum class ConfirmOutcome {
    High,
    Low,
    UnconfirmableHistory, // fewer than window_size bars at cutoff
    UnconfirmableDegenerate, // constant price window
};

const char* confirm_outcome_name(ConfirmOutcome outcome);

/// Audit record of one confirmation: the residuum the model saw, the
/// prediction, and the verdict.
struct Confirmation {
    ConfirmOutcome outcome = ConfirmOutcome::UnconfirmableHistory;
    std::vector<double> residuum;
    double prediction = 0;
    double last_residuum = 0;
    std::uint64_t derived_seed = 0;

    bool confirmed() const { return outcome == ConfirmOutcome::High; }
    bool unconfirmable() const {
        return outcome == ConfirmOutcome::UnconfirmableHistory ||
               outcome == ConfirmOutcome::UnconfirmableDegenerate;
    }
};

/// Runs the daily confirmation pipeline for `symbol` at the view's cutoff:
/// price window -> min-max normalize -> decompose -> residuum -> delay
/// embedding -> train a fresh ELM -> predict -> trend verdict. The ELM seed
/// is derived from (config.seed, cutoff date, symbol) so grid and parallel
/// runs reproduce.
Confirmation confirm_purchase(const CutoffView& view, const std::string& symbol,
                              const ConfirmConfig& config);

} // namespace topsel
