#include "netids/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "netids/errors.hpp"
#include "netids/metrics.hpp"
#include "netids/parallel.hpp"
#include "netids/rng.hpp"

namespace netids {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::NoImprovement:
            return "no_improvement";
        case StopReason::MaxFeatures:
            return "max_features";
        case StopReason::Exhausted:
            return "exhausted";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 20% (by default) of the training rows, stratified per original label.
// A label with a single record stays on the training side.
std::pair<std::vector<size_t>, std::vector<size_t>> holdout_split(const Dataset& train,
                                                                  double fraction,
                                                                  uint64_t seed) {
    std::vector<std::vector<size_t>> per_label(kLabelCount);
    for (size_t i = 0; i < train.n(); ++i) per_label[label_index(train.label(i))].push_back(i);

    Rng rng = Rng(seed).derive(rng_stream::kHoldoutSplit);
    std::vector<size_t> fit_rows, eval_rows;
    for (auto& rows : per_label) {
        if (rows.empty()) continue;
        for (size_t k = rows.size(); k > 1; --k) {
            const size_t j = static_cast<size_t>(rng.next_below(k));
            std::swap(rows[k - 1], rows[j]);
        }
        size_t take = static_cast<size_t>(std::llround(fraction * static_cast<double>(rows.size())));
        if (rows.size() < 2)
            take = 0;
        else
            take = std::clamp<size_t>(take, 1, rows.size() - 1);
        for (size_t k = 0; k < rows.size(); ++k)
            (k < take ? eval_rows : fit_rows).push_back(rows[k]);
    }
    std::sort(fit_rows.begin(), fit_rows.end());
    std::sort(eval_rows.begin(), eval_rows.end());
    return {std::move(fit_rows), std::move(eval_rows)};
}

std::vector<size_t> columns_of_groups(const std::vector<ColumnGroup>& groups,
                                      const std::vector<size_t>& picked) {
    std::vector<size_t> cols;
    for (size_t g : picked)
        for (size_t c = 0; c < groups[g].count; ++c) cols.push_back(groups[g].first_col + c);
    std::sort(cols.begin(), cols.end());
    return cols;
}

double criterion_value(const SelectionCriterion& criterion, const Dataset& eval,
                       const std::vector<double>& scores) {
    BinaryConfusion confusion;
    for (size_t i = 0; i < eval.n(); ++i)
        confusion.add(eval.positive(i), scores[i] >= 0.5);
    switch (criterion.kind) {
        case SelectionCriterion::Kind::OverallError:
            return overall_error(confusion);
        case SelectionCriterion::Kind::Far:
            return far(confusion);
        case SelectionCriterion::Kind::Und:
            return und(confusion);
        case SelectionCriterion::Kind::PerAttackError: {
            uint64_t total = 0, wrong = 0;
            for (size_t i = 0; i < eval.n(); ++i) {
                if (eval.label(i) != criterion.attack) continue;
                ++total;
                wrong += (scores[i] >= 0.5) != eval.positive(i);
            }
            if (total == 0) throw CriterionUnavailableError(label_name(criterion.attack));
            return static_cast<double>(wrong) / static_cast<double>(total) * 100.0;
        }
    }
    throw DataError("unreachable criterion kind");
}

struct Evaluator {
    const Dataset& fit;
    const Dataset& eval;
    const SelectionCriterion& criterion;
    const TrainConfig& cfg;

    // Trains on the given columns and scores the criterion; returns the
    // criterion value and the training wall time.
    std::pair<double, double> run(const std::vector<size_t>& cols) const {
        const Dataset fit_sub = fit.subset_columns(cols);
        const Dataset eval_sub = eval.subset_columns(cols);
        const auto start = Clock::now();
        const ClassifierModel model = train_classifier(fit_sub, cfg, 1);
        const double wall = seconds_since(start);
        const std::vector<double> scores = batch_scores(model, eval_sub, 1);
        return {criterion_value(criterion, eval_sub, scores), wall};
    }
};

struct GreedyOptions {
    size_t max_features = 0;
    bool ignore_stop_rule = false;
};

SelectionResult greedy_select(const Dataset& train, const Dataset* test,
                              const SelectionCriterion& criterion, const TrainConfig& cfg,
                              const std::vector<ColumnGroup>& groups, GreedyOptions opt,
                              int threads) {
    if (!train.is_encoded()) throw NotEncodedError();
    if (!train.has_binary_labels()) throw NotBinaryError();
    if (groups.empty()) throw EmptyFeaturePoolError();

    Dataset fit, eval;
    if (criterion.split == SelectionCriterion::Split::ProvidedTest) {
        if (!test) throw DataError("criterion evaluates on the test set but none was provided");
        fit = train;
        eval = *test;
    } else {
        if (criterion.holdout_fraction <= 0.0 || criterion.holdout_fraction >= 1.0)
            throw DataError("holdout fraction must be in (0,1)");
        auto [fit_rows, eval_rows] = holdout_split(train, criterion.holdout_fraction, cfg.seed);
        if (fit_rows.empty() || eval_rows.empty())
            throw DataError("holdout split left an empty side");
        fit = train.subset_rows(fit_rows);
        eval = train.subset_rows(eval_rows);
    }
    if (criterion.kind == SelectionCriterion::Kind::PerAttackError) {
        bool present = false;
        for (size_t i = 0; i < eval.n() && !present; ++i)
            present = eval.label(i) == criterion.attack;
        if (!present) throw CriterionUnavailableError(label_name(criterion.attack));
    }

    const Evaluator evaluator{fit, eval, criterion, cfg};
    const size_t max_features =
        opt.max_features == 0 ? groups.size() : std::min(opt.max_features, groups.size());

    SelectionResult result;
    SelectionTrace& trace = result.trace;

    // all-features baseline anchors the relative-time axis
    {
        std::vector<size_t> all(groups.size());
        for (size_t g = 0; g < all.size(); ++g) all[g] = g;
        trace.baseline_wall_s = evaluator.run(columns_of_groups(groups, all)).second;
    }

    std::vector<size_t> chosen;
    std::vector<size_t> remaining(groups.size());
    for (size_t g = 0; g < remaining.size(); ++g) remaining[g] = g;
    double incumbent = std::numeric_limits<double>::infinity();
    trace.stop = StopReason::Exhausted;

    while (!remaining.empty()) {
        struct Outcome {
            double value = 0.0;
            double wall = 0.0;
        };
        std::vector<Outcome> outcomes(remaining.size());
        parallel_for(remaining.size(), threads, [&](size_t k) {
            std::vector<size_t> picked = chosen;
            picked.push_back(remaining[k]);
            auto [value, wall] = evaluator.run(columns_of_groups(groups, picked));
            outcomes[k] = {value, wall};
        });

        // argmin with ties to the lower group index; `remaining` is ascending
        size_t best_k = 0;
        for (size_t k = 1; k < remaining.size(); ++k)
            if (outcomes[k].value < outcomes[best_k].value) best_k = k;

        if (!opt.ignore_stop_rule && !(outcomes[best_k].value < incumbent)) {
            trace.stop = StopReason::NoImprovement;
            break;
        }

        const size_t group_idx = remaining[best_k];
        SelectionIteration iter;
        iter.feature = groups[group_idx].source;
        iter.criterion_pct = outcomes[best_k].value;
        iter.wall_s = outcomes[best_k].wall;
        iter.relative_time =
            trace.baseline_wall_s > 0.0 ? iter.wall_s / trace.baseline_wall_s : 1.0;
        for (size_t k = 0; k < remaining.size(); ++k)
            iter.candidates.push_back({groups[remaining[k]].source, outcomes[k].value});
        trace.iterations.push_back(std::move(iter));

        incumbent = outcomes[best_k].value;
        chosen.push_back(group_idx);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_k));
        if (chosen.size() >= max_features) {
            trace.stop = remaining.empty() ? StopReason::Exhausted : StopReason::MaxFeatures;
            break;
        }
    }

    for (size_t g : chosen) trace.subset.push_back(groups[g].source);
    result.subset = trace.subset;
    return result;
}

}  // namespace

SelectionResult best_first_select(const Dataset& train, const Dataset* test,
                                  const SelectionCriterion& criterion, const TrainConfig& cfg,
                                  size_t max_features, const std::vector<ColumnGroup>& groups,
                                  int threads) {
    return greedy_select(train, test, criterion, cfg, groups, {max_features, false}, threads);
}

std::vector<SweepRow> sweep_feature_counts(const Dataset& train, const Dataset& test,
                                           const TrainConfig& cfg,
                                           const std::vector<size_t>& counts,
                                           const std::vector<ColumnGroup>& groups, int threads) {
    if (counts.empty()) throw DataError("sweep: no counts given");
    for (size_t i = 0; i + 1 < counts.size(); ++i)
        if (counts[i] >= counts[i + 1]) throw DataError("sweep: counts must be ascending");
    if (counts.back() > groups.size())
        throw DataError("sweep: count exceeds the number of features");

    SelectionCriterion criterion;
    criterion.kind = SelectionCriterion::Kind::OverallError;
    criterion.split = SelectionCriterion::Split::ProvidedTest;
    const SelectionResult greedy =
        greedy_select(train, &test, criterion, cfg, groups, {counts.back(), true}, threads);

    std::vector<SweepRow> rows;
    rows.reserve(counts.size());
    for (size_t k : counts) {
        const SelectionIteration& iter = greedy.trace.iterations[k - 1];
        SweepRow row;
        row.count = k;
        row.error_pct = iter.criterion_pct;
        row.relative_time = k == groups.size() ? 1.0 : iter.relative_time;
        rows.push_back(row);
    }
    return rows;
}

std::vector<size_t> columns_for_features(const std::vector<ColumnGroup>& groups,
                                         const std::vector<std::string>& features) {
    std::vector<size_t> cols;
    for (const std::string& name : features) {
        bool found = false;
        for (const ColumnGroup& g : groups) {
            if (g.source == name) {
                for (size_t c = 0; c < g.count; ++c) cols.push_back(g.first_col + c);
                found = true;
                break;
            }
        }
        if (!found) throw DataError("unknown feature in subset: " + name);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (cols.empty()) throw EmptyFeaturePoolError();
    return cols;
}

}  // namespace netids
