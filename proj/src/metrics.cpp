#include "netids/metrics.hpp"

#include "netids/errors.hpp"

namespace netids {

double far(const BinaryConfusion& c) {
    const uint64_t negatives = c.tn + c.fp;
    if (negatives == 0) throw NoNegativesError();
    return static_cast<double>(c.fp) / static_cast<double>(negatives) * 100.0;
}

double und(const BinaryConfusion& c) {
    const uint64_t positives = c.fn + c.tp;
    if (positives == 0) throw NoPositivesError();
    return static_cast<double>(c.fn) / static_cast<double>(positives) * 100.0;
}

double overall_error(const BinaryConfusion& c) {
    if (c.total() == 0) throw EmptyEvaluationError();
    return static_cast<double>(c.fp + c.fn) / static_cast<double>(c.total()) * 100.0;
}

double overall_accuracy(const BinaryConfusion& c) {
    if (c.total() == 0) throw EmptyEvaluationError();
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total()) * 100.0;
}

uint64_t MulticlassConfusion::row_sum(AttackLabel truth) const {
    uint64_t sum = 0;
    for (uint64_t v : m_[label_index(truth)]) sum += v;
    return sum;
}

uint64_t MulticlassConfusion::trace() const {
    uint64_t sum = 0;
    for (size_t i = 0; i < kLabelCount; ++i) sum += m_[i][i];
    return sum;
}

uint64_t MulticlassConfusion::total() const {
    uint64_t sum = 0;
    for (const auto& row : m_)
        for (uint64_t v : row) sum += v;
    return sum;
}

void MulticlassConfusion::merge(const MulticlassConfusion& o) {
    for (size_t i = 0; i < kLabelCount; ++i)
        for (size_t j = 0; j < kLabelCount; ++j) m_[i][j] += o.m_[i][j];
}

std::vector<AttackLabel> MulticlassConfusion::labels_with_support() const {
    std::vector<AttackLabel> out;
    for (AttackLabel l : all_labels())
        if (row_sum(l) > 0) out.push_back(l);
    return out;
}

PerClassAccuracy per_class_accuracy(const MulticlassConfusion& m) {
    if (m.total() == 0) throw EmptyEvaluationError();
    PerClassAccuracy out;
    for (AttackLabel l : all_labels()) {
        const uint64_t support = m.row_sum(l);
        if (support == 0) {
            out.zero_support.push_back(l);
            continue;
        }
        out.per_class[l] =
            static_cast<double>(m.count(l, l)) / static_cast<double>(support) * 100.0;
    }
    out.overall = static_cast<double>(m.trace()) / static_cast<double>(m.total()) * 100.0;
    return out;
}

MetricsReport evaluate_binary(const ClassifierModel& m, const Dataset& test, double threshold,
                              int threads) {
    if (!test.has_binary_labels()) throw NotBinaryError();
    if (test.n() == 0) throw EmptyEvaluationError();
    const std::vector<double> scores = batch_scores(m, test, threads);

    MetricsReport report;
    std::map<AttackLabel, uint64_t> correct;
    for (size_t i = 0; i < test.n(); ++i) {
        const bool predicted = scores[i] >= threshold;
        const bool truth = test.positive(i);
        report.confusion.add(truth, predicted);
        const AttackLabel original = test.label(i);
        ++report.support[original];
        if (predicted == truth) ++correct[original];
    }
    report.error_pct = overall_error(report.confusion);
    report.accuracy_pct = overall_accuracy(report.confusion);
    report.far_pct = (report.confusion.tn + report.confusion.fp) > 0 ? far(report.confusion) : 0.0;
    report.und_pct = (report.confusion.fn + report.confusion.tp) > 0 ? und(report.confusion) : 0.0;
    for (const auto& [label, support] : report.support)
        report.per_class_accuracy[label] =
            static_cast<double>(correct[label]) / static_cast<double>(support) * 100.0;
    return report;
}

std::map<AttackLabel, double> cross_misclassification(
    const std::map<AttackLabel, ClassifierModel>& models, const Dataset& encoded_test,
    AttackLabel source, double threshold, int threads) {
    std::vector<size_t> rows;
    for (size_t i = 0; i < encoded_test.n(); ++i)
        if (encoded_test.label(i) == source) rows.push_back(i);
    if (rows.empty()) throw NoSourceRecordsError(label_name(source));

    const Dataset subset = encoded_test.subset_rows(rows);
    std::map<AttackLabel, double> out;
    for (const auto& [attack, model] : models) {
        const std::vector<double> scores = batch_scores(model, subset, threads);
        uint64_t flagged = 0;
        for (double s : scores) flagged += s >= threshold;
        out[attack] = static_cast<double>(flagged) / static_cast<double>(scores.size()) * 100.0;
    }
    return out;
}

}  // namespace netids
