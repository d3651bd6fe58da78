#include <cmath>

#include "netids/errors.hpp"
#include "netids/learners.hpp"

namespace netids {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

void linear_scores(const Dataset& d, std::span<const double> w, double bias,
                   std::vector<double>& z) {
    z.assign(d.n(), bias);
    for (size_t j = 0; j < d.width(); ++j) {
        const double wj = w[j];
        if (wj == 0.0) continue;
        const std::vector<double>& col = d.numeric_column(j);
        for (size_t i = 0; i < d.n(); ++i) z[i] += wj * col[i];
    }
}

}  // namespace

double logistic_loss(const Dataset& d, std::span<const double> weights, double bias, double l2) {
    std::vector<double> z;
    linear_scores(d, weights, bias, z);
    double loss = 0.0;
    for (size_t i = 0; i < d.n(); ++i) {
        const double y = d.positive(i) ? 1.0 : 0.0;
        loss += softplus(z[i]) - y * z[i];
    }
    loss /= static_cast<double>(d.n());
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * l2 * reg;
}

void logistic_gradient(const Dataset& d, std::span<const double> weights, double bias, double l2,
                       std::span<double> grad_w, double& grad_b) {
    std::vector<double> z;
    linear_scores(d, weights, bias, z);
    const size_t n = d.n();
    std::vector<double> residual(n);
    double rsum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        residual[i] = sigmoid(z[i]) - (d.positive(i) ? 1.0 : 0.0);
        rsum += residual[i];
    }
    for (size_t j = 0; j < d.width(); ++j) {
        const std::vector<double>& col = d.numeric_column(j);
        double g = 0.0;
        for (size_t i = 0; i < n; ++i) g += residual[i] * col[i];
        grad_w[j] = g / static_cast<double>(n) + l2 * weights[j];
    }
    grad_b = rsum / static_cast<double>(n);
}

LogisticModel train_logistic(const Dataset& d, const TrainConfig& cfg) {
    if (!d.is_encoded()) throw NotEncodedError();
    if (!d.has_binary_labels()) throw NotBinaryError();
    if (d.n() == 0) throw DataError("training on an empty dataset");
    if (cfg.learning_rate <= 0.0) throw TrainError("learning_rate must be > 0");

    LogisticModel model;
    model.weights.assign(d.width(), 0.0);
    model.bias = 0.0;

    std::vector<double> grad(d.width());
    double grad_b = 0.0;
    double prev_loss = logistic_loss(d, model.weights, model.bias, cfg.l2);

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        logistic_gradient(d, model.weights, model.bias, cfg.l2, grad, grad_b);
        for (size_t j = 0; j < model.weights.size(); ++j)
            model.weights[j] -= cfg.learning_rate * grad[j];
        model.bias -= cfg.learning_rate * grad_b;

        const double loss = logistic_loss(d, model.weights, model.bias, cfg.l2);
        if (!std::isfinite(loss)) throw DivergedError(epoch);
        const double improvement = prev_loss - loss;
        if (improvement >= 0.0 && improvement < cfg.convergence_tol) break;
        prev_loss = loss;
    }
    for (double w : model.weights)
        if (!std::isfinite(w)) throw DivergedError(cfg.epochs);
    if (!std::isfinite(model.bias)) throw DivergedError(cfg.epochs);
    return model;
}

}  // namespace netids
