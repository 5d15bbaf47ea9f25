#include "topsel/strategy.hpp"

#include "topsel/emd.hpp"
#include "topsel/errors.hpp"
#include "topsel/rng.hpp"

#include <algorithm>
#include <cmath>

namespace topsel {

CriteriaConfig CriteriaConfig::defaults() {
    CriteriaConfig config;
    config.indicators = {{IndicatorKind::Rsi, 14},
                         {IndicatorKind::StochK, 14},
                         {IndicatorKind::StochD, 3},
                         {IndicatorKind::Cci, 14}};
    config.reset_equal_weights();
    return config;
}

void CriteriaConfig::reset_equal_weights() {
    weights.assign(indicators.size(), 1.0 / static_cast<double>(indicators.size()));
}

void CriteriaConfig::validate() const {
    if (indicators.empty()) {
        throw ValidationError("criteria: indicator set must be nonempty");
    }
    if (weights.size() != indicators.size()) {
        throw ValidationError("criteria: one weight per indicator required");
    }
    double sum = 0;
    for (double w : weights) {
        if (!(w >= 0)) throw ValidationError("criteria: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("criteria: weights must sum to 1");
    }
    for (const IndicatorSpec& spec : indicators) {
        if (spec.period < 1) throw ValidationError("criteria: periods must be >= 1");
    }
    for (size_t i = 0; i < indicators.size(); ++i) {
        for (size_t j = i + 1; j < indicators.size(); ++j) {
            if (indicators[i].kind == indicators[j].kind) {
                throw ValidationError(std::string("criteria: duplicate indicator '") +
                                      indicator_name(indicators[i].kind) + "'");
            }
        }
    }
}

std::string CriteriaConfig::criterion_name(size_t index) const {
    const IndicatorSpec& spec = indicators[index];
    return std::string(indicator_name(spec.kind)) + "(" + std::to_string(spec.period) + ")";
}

void ConfirmConfig::validate() const {
    if (delays < 1) throw ValidationError("confirm: delays must be >= 1");
    if (neurons < 1) throw ValidationError("confirm: neurons must be >= 1");
    if (window_size - delays < 2) {
        throw ValidationError("confirm: window_size - delays must be >= 2");
    }
}

// %D is a moving average of %K, so its warm-up depends on the %K period.
int stoch_k_period_of(const CriteriaConfig& config) {
    for (const IndicatorSpec& spec : config.indicators) {
        if (spec.kind == IndicatorKind::StochK) return spec.period;
    }
    return 14;
}

IndicatorSeries compute_indicator(const IndicatorSpec& spec, std::span<const OhlcvBar> bars,
                                  int stoch_k_period) {
    switch (spec.kind) {
        case IndicatorKind::Rsi: {
            std::vector<double> closes(bars.size());
            for (size_t i = 0; i < bars.size(); ++i) closes[i] = bars[i].close;
            return rsi(closes, spec.period);
        }
        case IndicatorKind::StochK:
            return stochastic_k(bars, spec.period);
        case IndicatorKind::StochD:
            return stochastic_d(stochastic_k(bars, stoch_k_period), spec.period);
        case IndicatorKind::Cci:
            return cci(bars, spec.period);
    }
    throw ValidationError("unknown indicator kind");
}

DecisionMatrix build_decision_matrix(const CutoffView& view, const CriteriaConfig& config) {
    config.validate();
    const int k_period = stoch_k_period_of(config);

    DecisionMatrix matrix;
    for (size_t j = 0; j < config.indicators.size(); ++j) {
        matrix.criteria.push_back(
            {config.criterion_name(j), CriterionKind::Cost, config.weights[j]});
    }

    for (const std::string& symbol : view.symbols()) {
        auto bars = view.bars(symbol);
        if (bars.empty() || bars.back().date != view.cutoff()) continue;

        std::vector<double> row;
        row.reserve(config.indicators.size());
        bool eligible = true;
        for (const IndicatorSpec& spec : config.indicators) {
            const IndicatorSeries series = compute_indicator(spec, bars, k_period);
            const auto& value = series.values.back();
            if (!value) {
                eligible = false;
                break;
            }
            row.push_back(*value);
        }
        if (eligible) {
            matrix.alternatives.push_back(symbol);
            matrix.values.push_back(std::move(row));
        }
    }

    if (matrix.alternatives.size() < 2) {
        throw ValidationError("fewer than 2 eligible stocks on " + view.cutoff().to_string());
    }
    return matrix;
}

SelectionResult select_stock(const CutoffView& view, const CriteriaConfig& config) {
    const DecisionMatrix matrix = build_decision_matrix(view, config);
    Ranking ranking = rank(matrix, config.normalization);
    SelectionResult result;
    result.symbol = ranking.best().label;
    result.ranking = std::move(ranking);
    return result;
}

std::vector<double> window_normalize(std::span<const double> prices) {
    if (prices.size() < 2) {
        throw ValidationError("window_normalize needs at least 2 prices");
    }
    const auto [lo_it, hi_it] = std::minmax_element(prices.begin(), prices.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
        throw DegenerateWindowError("constant price window");
    }
    std::vector<double> out(prices.size());
    for (size_t i = 0; i < prices.size(); ++i) out[i] = (prices[i] - lo) / (hi - lo);
    return out;
}

DelayEmbedding embed_delays(std::span<const double> residuum, int delays) {
    const size_t n = residuum.size();
    const size_t mu = static_cast<size_t>(delays);
    if (delays < 1 || n <= mu) {
        throw ValidationError("delay embedding needs a series longer than the delay count");
    }
    DelayEmbedding embedding;
    const size_t rows = n - mu;
    embedding.training.inputs.resize(static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(mu));
    embedding.training.targets.resize(static_cast<Eigen::Index>(rows));
    for (size_t k = 0; k < rows; ++k) {
        for (size_t j = 0; j < mu; ++j) {
            embedding.training.inputs(static_cast<Eigen::Index>(k),
                                      static_cast<Eigen::Index>(j)) = residuum[k + j];
        }
        embedding.training.targets(static_cast<Eigen::Index>(k)) = residuum[k + mu];
    }
    embedding.test_input.resize(static_cast<Eigen::Index>(mu));
    for (size_t j = 0; j < mu; ++j) {
        embedding.test_input(static_cast<Eigen::Index>(j)) = residuum[n - mu + j];
    }
    return embedding;
}

Trend classify_trend(double predicted, double last_residuum) {
    if (!std::isfinite(predicted) || !std::isfinite(last_residuum)) {
        throw ValidationError("classify_trend needs finite values");
    }
    return predicted > last_residuum ? Trend::High : Trend::Low;
}

const char* confirm_outcome_name(ConfirmOutcome outcome) {
    switch (outcome) {
        case ConfirmOutcome::High: return "high";
        case ConfirmOutcome::Low: return "low";
        case ConfirmOutcome::UnconfirmableHistory: return "unconfirmable_history";
        case ConfirmOutcome::UnconfirmableDegenerate: return "unconfirmable_degenerate";
    }
    return "?";
}

Confirmation confirm_purchase(const CutoffView& view, const std::string& symbol,
                              const ConfirmConfig& config) {
    config.validate();
    Confirmation confirmation;
    confirmation.derived_seed =
        derive_seed(derive_seed(config.seed, view.cutoff().to_string()), symbol);

    std::vector<double> prices;
    try {
        prices = view.window(symbol, static_cast<size_t>(config.window_size));
    } catch (const InsufficientHistoryError&) {
        confirmation.outcome = ConfirmOutcome::UnconfirmableHistory;
        return confirmation;
    }

    std::vector<double> normalized;
    try {
        normalized = window_normalize(prices);
    } catch (const DegenerateWindowError&) {
        confirmation.outcome = ConfirmOutcome::UnconfirmableDegenerate;
        return confirmation;
    }

    // The residuum is whatever decompose leaves, even with zero IMFs
    // extracted, so confirmation always works on the same component.
    ImfSet imf_set = decompose(normalized);
    confirmation.residuum = std::move(imf_set.residuum);

    const DelayEmbedding embedding = embed_delays(confirmation.residuum, config.delays);
    ElmModel model = ElmModel::init(config.delays, config.neurons, confirmation.derived_seed);
    model.train(embedding.training);

    confirmation.prediction = model.predict(embedding.test_input);
    confirmation.last_residuum = confirmation.residuum.back();
    confirmation.outcome =
        classify_trend(confirmation.prediction, confirmation.last_residuum) == Trend::High
            ? ConfirmOutcome::High
            : ConfirmOutcome::Low;
    return confirmation;
}

} // namespace topsel
