#pragma once

#include <string>
#include <vector>

#include "netids/dataset.hpp"
#include "netids/encoding.hpp"
#include "netids/learners.hpp"

namespace netids {

struct SelectionCriterion {
    enum class Kind { OverallError, Far, Und, PerAttackError };
    Kind kind = Kind::OverallError;
    AttackLabel attack = AttackLabel::Generic;  // PerAttackError only

    enum class Split { Holdout, ProvidedTest };
    Split split = Split::Holdout;
    double holdout_fraction = 0.2;  // stratified by original label, seed-controlled
};

struct CandidateScore {
    std::string feature;
    double criterion_pct = 0.0;
};

struct SelectionIteration {
    std::string feature;        // the candidate that won this iteration
    double criterion_pct = 0.0;
    double wall_s = 0.0;        // training time of the winning model
    double relative_time = 0.0; // wall_s / all-features baseline
    std::vector<CandidateScore> candidates;  // every candidate scored this round
};

enum class StopReason { NoImprovement, MaxFeatures, Exhausted };
const char* to_string(StopReason r);

struct SelectionTrace {
    std::vector<SelectionIteration> iterations;
    std::vector<std::string> subset;  // in selection order
    StopReason stop = StopReason::Exhausted;
    double baseline_wall_s = 0.0;
};

struct SelectionResult {
    std::vector<std::string> subset;
    SelectionTrace trace;
};

// Greedy forward selection over feature groups (a categorical feature's
// one-hot block moves as one unit). Each iteration trains one model per
// remaining candidate on (current subset + candidate), scores the criterion
// on the evaluation split, and keeps the argmin; ties go to the lower group
// index. Stops when the best candidate fails to strictly improve the
// incumbent value, at max_features, or when the pool is exhausted.
// `test` may be null unless the criterion evaluates on the provided test set.
SelectionResult best_first_select(const Dataset& train, const Dataset* test,
                                  const SelectionCriterion& criterion, const TrainConfig& cfg,
                                  size_t max_features, const std::vector<ColumnGroup>& groups,
                                  int threads = 1);

struct SweepRow {
    size_t count = 0;
    double error_pct = 0.0;
    double relative_time = 0.0;
};

// Greedy path ignoring the stop rule, scored as test error per subset size.
// The all-features row is the normalization anchor (relative time 1.0).
std::vector<SweepRow> sweep_feature_counts(const Dataset& train, const Dataset& test,
                                           const TrainConfig& cfg,
                                           const std::vector<size_t>& counts,
                                           const std::vector<ColumnGroup>& groups,
                                           int threads = 1);

// Columns covered by the named groups, ascending; used to materialize a
// subset chosen by selection on another dataset.
std::vector<size_t> columns_for_features(const std::vector<ColumnGroup>& groups,
                                         const std::vector<std::string>& features);

}  // namespace netids
