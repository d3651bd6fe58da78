#include <algorithm>
#include <cmath>

#include "netids/errors.hpp"
#include "netids/learners.hpp"
#include "netids/parallel.hpp"

namespace netids {

double gini(std::span<const uint64_t> counts) {
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    if (total == 0) throw EmptyPartitionError();
    double sum_sq = 0.0;
    for (uint64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

double binary_gini(uint64_t pos, uint64_t n) {
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    const double q = static_cast<double>(n - pos) / static_cast<double>(n);
    return 1.0 - (p * p + q * q);
}

void check_trainable(const Dataset& d) {
    if (!d.is_encoded()) throw NotEncodedError();
    if (!d.has_binary_labels()) throw NotBinaryError();
    if (d.n() == 0) throw DataError("training on an empty dataset");
}

int resolve_features_per_split(const TrainConfig& cfg, size_t d) {
    if (cfg.features_per_split > 0)
        return std::min(cfg.features_per_split, static_cast<int>(d));
    if (cfg.learner == TrainConfig::Learner::Forest)
        return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
    return static_cast<int>(d);
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const TrainConfig& cfg, Rng& rng,
                std::vector<uint32_t> indices)
        : data_(data), cfg_(cfg), rng_(rng), idx_(std::move(indices)) {
        mtry_ = resolve_features_per_split(cfg, data.width());
        feature_pool_.resize(data.width());
        for (size_t j = 0; j < data.width(); ++j) feature_pool_[j] = j;
    }

    DecisionTreeModel build() {
        DecisionTreeModel model;
        model.width = static_cast<uint32_t>(data_.width());
        nodes_.clear();
        grow(0, idx_.size(), 0);
        model.nodes = std::move(nodes_);
        return model;
    }

private:
    struct Split {
        bool found = false;
        size_t feature = 0;
        double threshold = 0.0;
    };

    uint64_t count_positives(size_t lo, size_t hi) const {
        uint64_t pos = 0;
        for (size_t k = lo; k < hi; ++k) pos += data_.positive(idx_[k]);
        return pos;
    }

    // Candidate features for this node: a uniform sample without
    // replacement, evaluated in ascending index order so equal-impurity
    // ties resolve to the lowest feature index.
    void sample_candidates(std::vector<size_t>& out) {
        const size_t d = data_.width();
        out.clear();
        if (static_cast<size_t>(mtry_) >= d) {
            out = feature_pool_;
            return;
        }
        // partial Fisher-Yates over a scratch copy
        scratch_ = feature_pool_;
        for (int k = 0; k < mtry_; ++k) {
            const size_t pick =
                static_cast<size_t>(k) +
                static_cast<size_t>(rng_.next_below(static_cast<uint64_t>(d - static_cast<size_t>(k))));
            std::swap(scratch_[static_cast<size_t>(k)], scratch_[pick]);
            out.push_back(scratch_[static_cast<size_t>(k)]);
        }
        std::sort(out.begin(), out.end());
    }

    // Best (feature, threshold) by weighted child gini over midpoints of
    // consecutive distinct sorted values. Strict improvement over the node
    // impurity is required; ties keep the first (lowest feature, lowest
    // threshold) candidate seen.
    Split find_split(size_t lo, size_t hi, uint64_t node_pos) {
        const size_t n = hi - lo;
        const auto n_total = static_cast<uint64_t>(n);
        double best = binary_gini(node_pos, n_total);
        Split split;

        sample_candidates(candidates_);
        values_.resize(n);
        for (size_t f : candidates_) {
            const std::vector<double>& col = data_.numeric_column(f);
            for (size_t k = 0; k < n; ++k) {
                const uint32_t i = idx_[lo + k];
                values_[k] = {col[i], static_cast<uint8_t>(data_.positive(i) ? 1 : 0)};
            }
            std::sort(values_.begin(), values_.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            uint64_t left_n = 0, left_pos = 0;
            size_t k = 0;
            while (k < n) {
                const double v = values_[k].first;
                while (k < n && values_[k].first == v) {
                    ++left_n;
                    left_pos += values_[k].second;
                    ++k;
                }
                if (k == n) break;  // no boundary after the last distinct value
                const uint64_t right_n = n_total - left_n;
                const uint64_t right_pos = node_pos - left_pos;
                const double weighted =
                    (static_cast<double>(left_n) * binary_gini(left_pos, left_n) +
                     static_cast<double>(right_n) * binary_gini(right_pos, right_n)) /
                    static_cast<double>(n_total);
                if (weighted < best) {
                    best = weighted;
                    double t = v + (values_[k].first - v) / 2.0;
                    if (t >= values_[k].first) t = v;  // adjacent doubles round up
                    split.found = true;
                    split.feature = f;
                    split.threshold = t;
                }
            }
        }
        return split;
    }

    int32_t grow(size_t lo, size_t hi, int depth) {
        const size_t n = hi - lo;
        const uint64_t pos = count_positives(lo, hi);
        const auto node_id = static_cast<int32_t>(nodes_.size());
        nodes_.emplace_back();

        const bool pure = pos == 0 || pos == n;
        Split split;
        if (!pure && depth < cfg_.max_depth && n >= static_cast<size_t>(cfg_.min_samples_split))
            split = find_split(lo, hi, pos);

        if (!split.found) {
            TreeNode& leaf = nodes_[static_cast<size_t>(node_id)];
            leaf.feature = -1;
            leaf.p_positive = static_cast<double>(pos) / static_cast<double>(n);
            leaf.samples = static_cast<uint32_t>(n);
            return node_id;
        }

        const std::vector<double>& col = data_.numeric_column(split.feature);
        auto mid_it = std::partition(
            idx_.begin() + static_cast<std::ptrdiff_t>(lo),
            idx_.begin() + static_cast<std::ptrdiff_t>(hi),
            [&](uint32_t i) { return col[i] <= split.threshold; });
        const size_t mid = static_cast<size_t>(mid_it - idx_.begin());

        nodes_[static_cast<size_t>(node_id)].feature = static_cast<int32_t>(split.feature);
        nodes_[static_cast<size_t>(node_id)].threshold = split.threshold;
        nodes_[static_cast<size_t>(node_id)].samples = static_cast<uint32_t>(n);
        const int32_t left = grow(lo, mid, depth + 1);
        const int32_t right = grow(mid, hi, depth + 1);
        nodes_[static_cast<size_t>(node_id)].left = left;
        nodes_[static_cast<size_t>(node_id)].right = right;
        return node_id;
    }

    const Dataset& data_;
    const TrainConfig& cfg_;
    Rng& rng_;
    std::vector<uint32_t> idx_;
    std::vector<size_t> feature_pool_;
    std::vector<size_t> scratch_;
    std::vector<size_t> candidates_;
    std::vector<std::pair<double, uint8_t>> values_;
    std::vector<TreeNode> nodes_;
    int mtry_ = 1;
};

std::vector<uint32_t> all_indices(size_t n) {
    std::vector<uint32_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = static_cast<uint32_t>(i);
    return idx;
}

}  // namespace

DecisionTreeModel train_tree(const Dataset& d, const TrainConfig& cfg, Rng& rng) {
    check_trainable(d);
    TreeBuilder builder(d, cfg, rng, all_indices(d.n()));
    return builder.build();
}

DecisionTreeModel train_tree(const Dataset& d, const TrainConfig& cfg) {
    Rng rng = Rng(cfg.seed).derive(rng_stream::kForestTreeBase);
    return train_tree(d, cfg, rng);
}

RandomForestModel train_forest(const Dataset& d, const TrainConfig& cfg, int threads) {
    check_trainable(d);
    if (cfg.tree_count < 1) throw TrainError("tree_count must be >= 1");

    RandomForestModel model;
    model.width = static_cast<uint32_t>(d.width());
    model.trees.resize(static_cast<size_t>(cfg.tree_count));

    uint64_t pos = 0;
    for (size_t i = 0; i < d.n(); ++i) pos += d.positive(i);
    model.positive_prior = static_cast<double>(pos) / static_cast<double>(d.n());

    const size_t n = d.n();
    parallel_for(model.trees.size(), threads, [&](size_t t) {
        Rng rng = Rng(cfg.seed).derive(rng_stream::kForestTreeBase + t);
        std::vector<uint32_t> sample;
        if (cfg.bootstrap) {
            sample.reserve(n);
            for (size_t i = 0; i < n; ++i)
                sample.push_back(static_cast<uint32_t>(rng.next_below(n)));
        } else {
            sample = all_indices(n);
        }
        TreeBuilder builder(d, cfg, rng, std::move(sample));
        model.trees[t] = builder.build();
    });
    return model;
}

}  // namespace netids
