#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netids/dataset.hpp"
#include "netids/encoding.hpp"
#include "netids/learners.hpp"
#include "netids/metrics.hpp"

namespace netids {

// One binary decision of the routing tree: records of `population` reach
// it, records whose true class is in `positives` should score 1.
struct StageSpec {
    std::string id;
    LabelSet population;
    LabelSet positives;
    bool drop_constants = false;
    std::vector<std::string> features;          // source names; empty = run default
    std::optional<TrainConfig> learner_override;
};

// Stage-ordering key: attacks are peeled in descending training-set sample
// count, with the Cat.1 group (DoS/Exploits/Analysis/Backdoor) moving as one
// unit keyed by its largest member.
std::vector<StageSpec> build_default_cascade_spec(const Dataset& train);

std::vector<StageSpec> parse_cascade_spec_file(const std::string& path);
void write_cascade_spec_file(const std::vector<StageSpec>& specs, const std::string& path);

struct FittedStage {
    StageSpec spec;
    ClassifierModel model;
    std::vector<size_t> columns;        // encoded columns the model consumes
    std::vector<std::string> dropped;   // constant columns removed at fit time
    // routing: stage index, or a leaf label when the index is -1
    int on_positive = -1;
    AttackLabel positive_leaf = AttackLabel::Normal;
    int on_negative = -1;
    AttackLabel negative_leaf = AttackLabel::Normal;
};

class CascadeModel {
public:
    std::vector<FittedStage> stages;
    double threshold = 0.5;

    AttackLabel predict(std::span<const double> row) const;
    // stage indices visited, then the emitted label
    AttackLabel predict_traced(std::span<const double> row, std::vector<int>& path) const;
    const LabelSet& scope() const { return scope_; }
    void set_scope(LabelSet s) { scope_ = s; }

private:
    LabelSet scope_;
};

struct CascadeTrainOptions {
    std::vector<ColumnGroup> groups;             // encoded layout; empty = identity
    std::vector<std::string> default_features;   // empty = all features
    double threshold = 0.5;
    int threads = 1;
};

// Validates the spec list (proper nonempty positive subsets, unique routing
// tree, every in-scope label emitted by exactly one terminal branch), then
// fits one binary model per stage on its population restriction.
CascadeModel train_cascade(const Dataset& encoded_train, const std::vector<StageSpec>& specs,
                           const TrainConfig& cfg, const CascadeTrainOptions& opt = {});

struct StageStats {
    std::string id;
    std::string positives;              // label set, for display
    uint64_t reached = 0;
    uint64_t true_pos_reached = 0;
    uint64_t true_neg_reached = 0;
    uint64_t pos_predicted_neg = 0;     // reached, should exit here, did not
    uint64_t neg_predicted_pos = 0;     // reached, pulled in wrongly
    uint64_t full_support_pos = 0;      // all test records of the positive classes
    uint64_t captured_pos = 0;          // of those, exited through this stage correctly

    double und_pct() const;             // view over records reaching the stage
    double misclassified_in_pct() const;
    double captured_full_pct() const;   // view over full class supports
};

struct CategorizationReport {
    std::string strategy;
    MulticlassConfusion confusion;
    PerClassAccuracy accuracy;
    std::map<AttackLabel, uint64_t> support;
    std::vector<StageStats> stages;                // cascade runs
    std::vector<AttackLabel> checking_order;       // single-type runs
};

CategorizationReport evaluate_cascade(const CascadeModel& m, const Dataset& encoded_test,
                                      int threads = 1);

// Single-type baseline: one attack-vs-Normal model per attack, walked in
// checking order; the first model that fires names the attack, and a record
// no model claims falls through to Normal.
struct SingleTypeModelSet {
    std::map<AttackLabel, ClassifierModel> models;
    std::vector<AttackLabel> checking_order;
    std::vector<size_t> columns;   // encoded columns all models consume
    double threshold = 0.5;
};

ClassifierModel train_single_type(const Dataset& encoded_train, AttackLabel attack,
                                  const TrainConfig& cfg, const std::vector<size_t>& columns = {},
                                  int threads = 1);

struct SingleTypeTrainOptions {
    std::vector<ColumnGroup> groups;
    std::vector<std::string> default_features;
    std::vector<AttackLabel> checking_order;  // empty = descending training count
    double threshold = 0.5;
    int threads = 1;
};

SingleTypeModelSet train_single_type_set(const Dataset& encoded_train,
                                         const TrainConfig& cfg,
                                         const SingleTypeTrainOptions& opt = {});

AttackLabel single_type_categorize(const SingleTypeModelSet& set, std::span<const double> row);

CategorizationReport evaluate_single_type(const SingleTypeModelSet& set,
                                          const Dataset& encoded_test, int threads = 1);

// Table II view: each model scored on the test records of {Normal, attack}.
std::map<AttackLabel, MetricsReport> single_type_model_metrics(const SingleTypeModelSet& set,
                                                               const Dataset& encoded_test,
                                                               int threads = 1);

struct ComparisonRow {
    AttackLabel label;
    double single_pct = 0.0;
    double cascade_pct = 0.0;
    double delta = 0.0;
};

struct StrategyComparison {
    std::vector<ComparisonRow> rows;
    double single_overall = 0.0;
    double cascade_overall = 0.0;
    double overall_delta = 0.0;
};

StrategyComparison compare_strategies(const CategorizationReport& single,
                                      const CategorizationReport& cascade);

}  // namespace netids
