#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "netids/dataset.hpp"
#include "netids/learners.hpp"

namespace netids {

struct BinaryConfusion {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t tn = 0;
    uint64_t fn = 0;

    void add(bool truth_positive, bool predicted_positive) {
        if (truth_positive)
            predicted_positive ? ++tp : ++fn;
        else
            predicted_positive ? ++fp : ++tn;
    }
    void merge(const BinaryConfusion& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
    }
    uint64_t total() const { return tp + fp + tn + fn; }
};

// False alarm rate: percent of negatives flagged positive.
double far(const BinaryConfusion& c);
// Un-detection rate: percent of positives flagged negative.
double und(const BinaryConfusion& c);
double overall_error(const BinaryConfusion& c);
double overall_accuracy(const BinaryConfusion& c);

class MulticlassConfusion {
public:
    void add(AttackLabel truth, AttackLabel predicted, uint64_t count = 1) {
        m_[label_index(truth)][label_index(predicted)] += count;
    }
    uint64_t count(AttackLabel truth, AttackLabel predicted) const {
        return m_[label_index(truth)][label_index(predicted)];
    }
    uint64_t row_sum(AttackLabel truth) const;
    uint64_t trace() const;
    uint64_t total() const;
    void merge(const MulticlassConfusion& o);
    std::vector<AttackLabel> labels_with_support() const;

private:
    std::array<std::array<uint64_t, kLabelCount>, kLabelCount> m_{};
};

struct PerClassAccuracy {
    std::map<AttackLabel, double> per_class;       // zero-support labels omitted
    std::vector<AttackLabel> zero_support;         // what was omitted (warn, not fail)
    double overall = 0.0;                          // micro: trace / total
};

PerClassAccuracy per_class_accuracy(const MulticlassConfusion& m);

struct MetricsReport {
    double far_pct = 0.0;
    double und_pct = 0.0;
    double error_pct = 0.0;
    double accuracy_pct = 0.0;
    std::map<AttackLabel, double> per_class_accuracy;  // vs the binary truth
    std::map<AttackLabel, uint64_t> support;
    BinaryConfusion confusion;
};

// Scores a binary-labeled encoded dataset and assembles the full report.
// Per-class rows use the retained original labels.
MetricsReport evaluate_binary(const ClassifierModel& m, const Dataset& test,
                              double threshold = 0.5, int threads = 1);

// For each attack's own binary model, the percent of `source` records it
// flags as anomalous.
std::map<AttackLabel, double> cross_misclassification(
    const std::map<AttackLabel, ClassifierModel>& models, const Dataset& encoded_test,
    AttackLabel source, double threshold = 0.5, int threads = 1);

}  // namespace netids
