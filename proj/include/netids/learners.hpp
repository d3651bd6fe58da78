#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "netids/dataset.hpp"
#include "netids/rng.hpp"

namespace netids {

// Hyperparameters for all three learners. The single root seed drives every
// random draw; per-tree substreams derive from it so any parallel schedule
// trains the identical model.
struct TrainConfig {
    enum class Learner { Tree, Forest, Logistic };
    Learner learner = Learner::Forest;

    // tree / forest
    int tree_count = 100;
    int features_per_split = 0;  // 0 = ceil(sqrt(d)) for forests, d for a lone tree
    int max_depth = 25;
    int min_samples_split = 2;
    bool bootstrap = true;

    // logistic
    double learning_rate = 0.1;
    int epochs = 200;
    double l2 = 1e-4;
    double convergence_tol = 1e-6;

    uint64_t seed = 1;
};

struct TreeNode {
    int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int32_t left = -1;
    int32_t right = -1;
    double p_positive = 0.0;
    uint32_t samples = 0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes;  // preorder; nodes[0] is the root
    uint32_t width = 0;
};

struct RandomForestModel {
    std::vector<DecisionTreeModel> trees;
    double positive_prior = 0.0;
    uint32_t width = 0;
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
};

using ClassifierModel = std::variant<DecisionTreeModel, RandomForestModel, LogisticModel>;

enum class BinaryOutcome : uint8_t { Negative = 0, Positive = 1 };

struct Prediction {
    double score = 0.0;  // probability of the positive class
    BinaryOutcome label = BinaryOutcome::Negative;
};

// Gini impurity 1 - sum((count_i/total)^2) over any class count vector.
double gini(std::span<const uint64_t> counts);

DecisionTreeModel train_tree(const Dataset& d, const TrainConfig& cfg, Rng& rng);
DecisionTreeModel train_tree(const Dataset& d, const TrainConfig& cfg);
RandomForestModel train_forest(const Dataset& d, const TrainConfig& cfg, int threads = 1);
LogisticModel train_logistic(const Dataset& d, const TrainConfig& cfg);

// Trains whichever learner cfg names.
ClassifierModel train_classifier(const Dataset& d, const TrainConfig& cfg, int threads = 1);

double score(const DecisionTreeModel& m, std::span<const double> row);
double score(const RandomForestModel& m, std::span<const double> row);
double score(const LogisticModel& m, std::span<const double> row);
double score(const ClassifierModel& m, std::span<const double> row);

size_t model_width(const ClassifierModel& m);

// Threshold rule: Positive iff score >= threshold (ties go Positive).
Prediction predict(const ClassifierModel& m, std::span<const double> row,
                   double threshold = 0.5);

std::vector<double> batch_scores(const ClassifierModel& m, const Dataset& d, int threads = 1);

// Loss/gradient of the L2-regularized logistic objective, exposed so tests
// can check the analytic gradient against finite differences.
double logistic_loss(const Dataset& d, std::span<const double> weights, double bias, double l2);
void logistic_gradient(const Dataset& d, std::span<const double> weights, double bias, double l2,
                       std::span<double> grad_w, double& grad_b);

}  // namespace netids
