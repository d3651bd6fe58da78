#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netids/labels.hpp"
#include "netids/schema.hpp"

namespace netids {

// Small value-type set over the 10-label taxonomy.
class LabelSet {
public:
    LabelSet() = default;
    LabelSet(std::initializer_list<AttackLabel> ls) {
        for (auto l : ls) insert(l);
    }
    static LabelSet of(const std::vector<AttackLabel>& ls) {
        LabelSet s;
        for (auto l : ls) s.insert(l);
        return s;
    }
    void insert(AttackLabel l) { bits_ |= mask(l); }
    void erase(AttackLabel l) { bits_ &= static_cast<uint16_t>(~mask(l)); }
    bool contains(AttackLabel l) const { return bits_ & mask(l); }
    bool empty() const { return bits_ == 0; }
    size_t size() const { return static_cast<size_t>(__builtin_popcount(bits_)); }
    bool is_subset_of(const LabelSet& o) const { return (bits_ & ~o.bits_) == 0; }
    LabelSet minus(const LabelSet& o) const {
        LabelSet r;
        r.bits_ = bits_ & static_cast<uint16_t>(~o.bits_);
        return r;
    }
    bool operator==(const LabelSet&) const = default;
    std::vector<AttackLabel> to_vector() const;  // canonical label order
    std::string to_string() const;               // "A+B+C"

private:
    static uint16_t mask(AttackLabel l) { return static_cast<uint16_t>(1u << label_index(l)); }
    uint16_t bits_ = 0;
};

struct FeatureValue {
    FeatureKind kind = FeatureKind::Numeric;
    double num = 0.0;
    std::string cat;
};

struct Record {
    std::vector<FeatureValue> values;
    AttackLabel label = AttackLabel::Normal;
};

// One column of data; exactly one of num/codes is populated per the kind.
struct Column {
    FeatureKind kind = FeatureKind::Numeric;
    std::vector<double> num;
    std::vector<int32_t> codes;
    std::vector<std::string> categories;  // code -> token, first-appearance order

    const std::string& token(size_t row) const { return categories[static_cast<size_t>(codes[row])]; }
};

// Immutable after construction; columnar so learners can scan features
// directly. Binary relabeling keeps the original labels alongside the 0/1
// view so multiclass reports stay possible afterwards.
class Dataset {
public:
    Dataset() = default;
    Dataset(FeatureSchema schema, std::vector<Column> columns, std::vector<AttackLabel> labels,
            std::string provenance);

    const FeatureSchema& schema() const { return schema_; }
    size_t n() const { return labels_.size(); }
    size_t width() const { return columns_.size(); }
    const Column& column(size_t j) const { return columns_[j]; }
    const std::vector<double>& numeric_column(size_t j) const { return columns_[j].num; }
    AttackLabel label(size_t i) const { return labels_[i]; }
    const std::vector<AttackLabel>& labels() const { return labels_; }
    const std::string& provenance() const { return provenance_; }

    bool is_encoded() const { return schema_.all_numeric(); }

    bool has_binary_labels() const { return !binary_.empty(); }
    bool positive(size_t i) const { return binary_[i] != 0; }
    const std::vector<uint8_t>& binary_labels() const { return binary_; }

    Record record(size_t i) const;
    void encoded_row(size_t i, std::span<double> out) const;  // all-numeric datasets only

    // Row/column restrictions used by splits, stages, and feature subsets.
    Dataset subset_rows(const std::vector<size_t>& rows) const;
    Dataset subset_columns(const std::vector<size_t>& cols) const;

    // internal: used by relabel_binary
    void set_binary_labels(std::vector<uint8_t> y) { binary_ = std::move(y); }

private:
    FeatureSchema schema_;
    std::vector<Column> columns_;
    std::vector<AttackLabel> labels_;
    std::vector<uint8_t> binary_;
    std::string provenance_;
};

struct ClassStats {
    std::array<uint64_t, kLabelCount> counts{};
    uint64_t total = 0;
    double percentage(AttackLabel l) const {
        return total ? 100.0 * static_cast<double>(counts[label_index(l)]) /
                           static_cast<double>(total)
                     : 0.0;
    }
    uint64_t count(AttackLabel l) const { return counts[label_index(l)]; }
};

Dataset load_csv(const std::string& path, const FeatureSchema& schema);
void write_csv(const Dataset& d, const std::string& path);

Dataset filter_labels(const Dataset& d, const LabelSet& excluded);
ClassStats class_stats(const Dataset& d);
Dataset relabel_binary(const Dataset& d, const LabelSet& positives);
std::pair<Dataset, std::vector<std::string>> drop_constant_features(const Dataset& d);

// FNV-1a over the serialized content; used for provenance fingerprints and
// the distinct-seed checks.
uint64_t dataset_content_hash(const Dataset& d);

}  // namespace netids
