#include "topsel/elm.hpp"

#include "topsel/errors.hpp"
#include "topsel/rng.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <ostream>

namespace topsel {

ElmModel ElmModel::init(int input_dim, int hidden_count, std::uint64_t seed) {
    if (input_dim < 1 || hidden_count < 1) {
        throw ValidationError("ELM needs input_dim >= 1 and hidden_count >= 1");
    }
    ElmModel model;
    model.seed_ = seed;
    model.weights_.resize(hidden_count, input_dim);
    model.biases_.resize(hidden_count);
    std::mt19937_64 gen(seed);
    for (int j = 0; j < hidden_count; ++j) {
        for (int k = 0; k < input_dim; ++k) {
            model.weights_(j, k) = uniform_pm1(gen);
        }
    }
    for (int j = 0; j < hidden_count; ++j) {
        model.biases_(j) = uniform_pm1(gen);
    }
    return model;
}

const Eigen::VectorXd& ElmModel::beta() const {
    if (!beta_) throw ValidationError("ELM model is not trained");
    return *beta_;
}

Eigen::MatrixXd ElmModel::hidden_matrix(const Eigen::MatrixXd& inputs) const {
    if (inputs.cols() != weights_.cols()) {
        throw ValidationError("ELM input width " + std::to_string(inputs.cols()) +
                              " does not match input_dim " + std::to_string(input_dim()));
    }
    Eigen::MatrixXd h = inputs * weights_.transpose();
    h.rowwise() += biases_.transpose();
    return h.unaryExpr([](double u) { return 1.0 / (1.0 + std::exp(-u)); });
}

void ElmModel::train(const TrainingSet& data) {
    if (data.inputs.rows() != data.targets.size() || data.targets.size() < 1) {
        throw ValidationError("training set: row count of inputs must equal target length");
    }
    if (!data.inputs.allFinite() || !data.targets.allFinite()) {
        throw ValidationError("training set contains non-finite values");
    }
    const Eigen::MatrixXd h = hidden_matrix(data.inputs);
    if (!h.allFinite()) {
        throw ValidationError("hidden matrix contains non-finite values");
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? 1e-12 * sigma(0) : 0.0;

    Eigen::VectorXd ut = svd.matrixU().transpose() * data.targets;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        ut(i) = (sigma(i) > cutoff && sigma(i) > 0) ? ut(i) / sigma(i) : 0.0;
    }
    beta_ = svd.matrixV() * ut;
}

double ElmModel::predict(const Eigen::VectorXd& input) const {
    if (!beta_) throw ValidationError("ELM model is not trained");
    if (input.size() != weights_.cols()) {
        throw ValidationError("ELM input length does not match input_dim");
    }
    const Eigen::MatrixXd h = hidden_matrix(input.transpose());
    return (h * *beta_)(0);
}

void ElmModel::dump(std::ostream& out) const {
    out << "seed " << seed_ << "\n"
        << "input_dim " << input_dim() << "\n"
        << "hidden_count " << hidden_count() << "\n";
    if (beta_) {
        out << "beta";
        for (Eigen::Index i = 0; i < beta_->size(); ++i) out << ' ' << (*beta_)(i);
        out << "\n";
    } else {
        out << "beta untrained\n";
    }
}

} // namespace topsel
