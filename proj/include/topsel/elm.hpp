#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace topsel {

/// Input rows and their regression targets.
struct TrainingSet {
    Eigen::MatrixXd inputs;  // m x input_dim
    Eigen::VectorXd targets; // m
};

/// Single-hidden-layer network: random hidden weights/biases in [-1, 1]
/// drawn from a seeded mt19937_64, logistic sigmoid activation, linear
/// output layer solved by least squares. Immutable once trained.
class ElmModel {
public:
    /// Draw order is fixed (weights row by row, then biases), so a seed
    /// fully determines the model.
    static ElmModel init(int input_dim, int hidden_count, std::uint64_t seed);

    int input_dim() const { return static_cast<int>(weights_.cols()); }
    int hidden_count() const { return static_cast<int>(weights_.rows()); }
    std::uint64_t seed() const { return seed_; }
    const Eigen::MatrixXd& weights() const { return weights_; }
    const Eigen::VectorXd& biases() const { return biases_; }

    bool trained() const { return beta_.has_value(); }
    const Eigen::VectorXd& beta() const; // throws if untrained

    /// H(i, j) = sigmoid(x_i . w_j + b_j); inputs is m x input_dim.
    Eigen::MatrixXd hidden_matrix(const Eigen::MatrixXd& inputs) const;

    /// Solves beta as the minimum-norm least-squares solution of
    /// H beta = targets via SVD, treating singular values below
    /// 1e-12 * sigma_max as zero. Throws on non-finite inputs.
    void train(const TrainingSet& data);

    /// hidden_matrix of the single row dotted with beta; throws if untrained.
    double predict(const Eigen::VectorXd& input) const;

    /// Small text dump (seed, dims, beta) for audit.
    void dump(std::ostream& out) const;

private:
    ElmModel() = default;

    Eigen::MatrixXd weights_; // hidden_count x input_dim
    Eigen::VectorXd biases_;  // hidden_count
    std::optional<Eigen::VectorXd> beta_;
    std::uint64_t seed_ = 0;
};

} // namespace topsel
