#include <cmath>

#include "netids/errors.hpp"
#include "netids/learners.hpp"
#include "netids/parallel.hpp"

namespace netids {

double score(const DecisionTreeModel& m, std::span<const double> row) {
    const TreeNode* node = &m.nodes[0];
    while (!node->is_leaf()) {
        const size_t f = static_cast<size_t>(node->feature);
        node = &m.nodes[static_cast<size_t>(row[f] <= node->threshold ? node->left : node->right)];
    }
    return node->p_positive;
}

double score(const RandomForestModel& m, std::span<const double> row) {
    double sum = 0.0;
    for (const DecisionTreeModel& t : m.trees) sum += score(t, row);
    return sum / static_cast<double>(m.trees.size());
}

double score(const LogisticModel& m, std::span<const double> row) {
    double z = m.bias;
    for (size_t j = 0; j < m.weights.size(); ++j) z += m.weights[j] * row[j];
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double score(const ClassifierModel& m, std::span<const double> row) {
    return std::visit([&](const auto& model) { return score(model, row); }, m);
}

size_t model_width(const ClassifierModel& m) {
    if (const auto* t = std::get_if<DecisionTreeModel>(&m)) return t->width;
    if (const auto* f = std::get_if<RandomForestModel>(&m)) return f->width;
    return std::get<LogisticModel>(m).weights.size();
}

Prediction predict(const ClassifierModel& m, std::span<const double> row, double threshold) {
    const size_t expected = model_width(m);
    if (row.size() != expected) throw WidthMismatchError(expected, row.size());
    Prediction p;
    p.score = score(m, row);
    p.label = p.score >= threshold ? BinaryOutcome::Positive : BinaryOutcome::Negative;
    return p;
}

std::vector<double> batch_scores(const ClassifierModel& m, const Dataset& d, int threads) {
    if (!d.is_encoded()) throw NotEncodedError();
    if (d.width() != model_width(m)) throw WidthMismatchError(model_width(m), d.width());
    std::vector<double> out(d.n());
    const int t = resolve_threads(threads);
    const size_t chunk = 1024;
    const size_t chunks = (d.n() + chunk - 1) / chunk;
    parallel_for(chunks, t, [&](size_t c) {
        std::vector<double> row(d.width());
        const size_t lo = c * chunk;
        const size_t hi = std::min(d.n(), lo + chunk);
        for (size_t i = lo; i < hi; ++i) {
            d.encoded_row(i, row);
            out[i] = score(m, row);
        }
    });
    return out;
}

ClassifierModel train_classifier(const Dataset& d, const TrainConfig& cfg, int threads) {
    switch (cfg.learner) {
        case TrainConfig::Learner::Tree:
            return train_tree(d, cfg);
        case TrainConfig::Learner::Logistic:
            return train_logistic(d, cfg);
        case TrainConfig::Learner::Forest:
        default:
            return train_forest(d, cfg, threads);
    }
}

}  // namespace netids
