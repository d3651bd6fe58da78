#include "netids/cascade.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "netids/errors.hpp"
#include "netids/parallel.hpp"
#include "netids/selection.hpp"

namespace netids {

namespace {

// Cat.1: merged at one stage because their flow features look alike.
const LabelSet kCat1 = {AttackLabel::DoS, AttackLabel::Exploits, AttackLabel::Analysis,
                        AttackLabel::Backdoor};

std::vector<AttackLabel> by_count_desc(const ClassStats& stats, const LabelSet& labels) {
    std::vector<AttackLabel> out = labels.to_vector();
    std::stable_sort(out.begin(), out.end(), [&](AttackLabel a, AttackLabel b) {
        return stats.count(a) > stats.count(b);
    });
    return out;
}

}  // namespace

std::vector<StageSpec> build_default_cascade_spec(const Dataset& train) {
    const ClassStats stats = class_stats(train);
    if (stats.count(AttackLabel::Normal) == 0) throw MissingClassError("Normal");

    LabelSet present;
    for (AttackLabel l : all_labels())
        if (stats.count(l) > 0) present.insert(l);
    LabelSet attacks = present;
    attacks.erase(AttackLabel::Normal);
    if (attacks.empty()) throw MissingClassError("at least one attack");

    // peeling units: Cat.1 moves as a block keyed by its largest member
    struct Unit {
        LabelSet labels;
        uint64_t key;
    };
    std::vector<Unit> units;
    LabelSet cat1_present;
    for (AttackLabel l : kCat1.to_vector())
        if (attacks.contains(l)) cat1_present.insert(l);
    for (AttackLabel l : by_count_desc(stats, attacks)) {
        if (cat1_present.contains(l)) continue;
        units.push_back({LabelSet{l}, stats.count(l)});
    }
    if (!cat1_present.empty()) {
        uint64_t key = 0;
        for (AttackLabel l : cat1_present.to_vector()) key = std::max(key, stats.count(l));
        units.push_back({cat1_present, key});
    }
    std::stable_sort(units.begin(), units.end(),
                     [](const Unit& a, const Unit& b) { return a.key > b.key; });

    std::vector<StageSpec> specs;
    {
        StageSpec s1;
        s1.id = "1";
        s1.population = present;
        s1.positives = attacks;
        specs.push_back(std::move(s1));
    }

    auto emit_subchain = [&](const LabelSet& members, const std::string& base_id,
                             bool base_taken) {
        std::vector<AttackLabel> order = by_count_desc(stats, members);
        LabelSet rest = members;
        char suffix = 'b';
        bool first = true;
        while (rest.size() > 1) {
            StageSpec s;
            s.id = (!base_taken && first) ? base_id : base_id + std::string(1, suffix++);
            s.population = rest;
            s.positives = LabelSet{order.front()};
            s.drop_constants = true;  // fixed-feature removal inside the merged group
            specs.push_back(std::move(s));
            rest.erase(order.front());
            order.erase(order.begin());
            first = false;
        }
    };

    LabelSet pool = attacks;
    int chain_no = 2;
    for (size_t u = 0; u < units.size() && pool.size() > 1; ++u) {
        const Unit& unit = units[u];
        const std::string id = std::to_string(chain_no++);
        if (unit.labels == pool) {
            // nothing left to peel the unit from; resolve it internally
            emit_subchain(unit.labels, id, false);
            pool = LabelSet{};
            break;
        }
        StageSpec s;
        s.id = id;
        s.population = pool;
        s.positives = unit.labels;
        specs.push_back(std::move(s));
        if (unit.labels.size() > 1) emit_subchain(unit.labels, id, true);
        pool = pool.minus(unit.labels);
    }
    return specs;
}

namespace {

struct Routing {
    int on_positive = -1;
    AttackLabel positive_leaf = AttackLabel::Normal;
    int on_negative = -1;
    AttackLabel negative_leaf = AttackLabel::Normal;
};

// Links branch sets to later stages by population equality and checks the
// result is a tree emitting every in-scope label exactly once.
std::vector<Routing> link_stages(const std::vector<StageSpec>& specs) {
    if (specs.empty()) throw CascadeSpecError("no stages");
    for (const StageSpec& s : specs) {
        if (s.positives.empty()) throw CascadeSpecError("stage " + s.id + ": empty positive set");
        if (!s.positives.is_subset_of(s.population) || s.positives == s.population)
            throw CascadeSpecError("stage " + s.id +
                                   ": positives must be a proper subset of the population");
    }

    std::vector<Routing> routing(specs.size());
    std::vector<int> referenced(specs.size(), 0);
    LabelSet emitted;

    auto resolve = [&](size_t from, const LabelSet& branch, int& child, AttackLabel& leaf) {
        if (branch.size() == 1) {
            const AttackLabel l = branch.to_vector().front();
            if (emitted.contains(l))
                throw CascadeSpecError("label " + label_name(l) + " emitted by two branches");
            emitted.insert(l);
            child = -1;
            leaf = l;
            return;
        }
        int found = -1;
        for (size_t j = from + 1; j < specs.size(); ++j) {
            if (specs[j].population == branch) {
                if (found >= 0)
                    throw CascadeSpecError("two stages share population " + branch.to_string());
                found = static_cast<int>(j);
            }
        }
        if (found < 0)
            throw CascadeSpecError("no stage handles population " + branch.to_string());
        ++referenced[static_cast<size_t>(found)];
        child = found;
    };

    for (size_t i = 0; i < specs.size(); ++i) {
        resolve(i, specs[i].positives, routing[i].on_positive, routing[i].positive_leaf);
        resolve(i, specs[i].population.minus(specs[i].positives), routing[i].on_negative,
                routing[i].negative_leaf);
    }
    for (size_t i = 1; i < specs.size(); ++i)
        if (referenced[i] != 1)
            throw CascadeSpecError("stage " + specs[i].id + " is not reachable exactly once");
    if (!(emitted == specs[0].population))
        throw CascadeSpecError("terminal branches do not cover the population exactly");
    return routing;
}

}  // namespace

AttackLabel CascadeModel::predict(std::span<const double> row) const {
    std::vector<int> path;
    return predict_traced(row, path);
}

AttackLabel CascadeModel::predict_traced(std::span<const double> row,
                                         std::vector<int>& path) const {
    path.clear();
    int at = 0;
    std::vector<double> scratch;
    for (;;) {
        const FittedStage& stage = stages[static_cast<size_t>(at)];
        path.push_back(at);
        scratch.resize(stage.columns.size());
        for (size_t k = 0; k < stage.columns.size(); ++k) scratch[k] = row[stage.columns[k]];
        const bool fires = score(stage.model, scratch) >= threshold;
        if (fires) {
            if (stage.on_positive < 0) return stage.positive_leaf;
            at = stage.on_positive;
        } else {
            if (stage.on_negative < 0) return stage.negative_leaf;
            at = stage.on_negative;
        }
    }
}

CascadeModel train_cascade(const Dataset& encoded_train, const std::vector<StageSpec>& specs,
                           const TrainConfig& cfg, const CascadeTrainOptions& opt) {
    if (!encoded_train.is_encoded()) throw NotEncodedError();
    const std::vector<Routing> routing = link_stages(specs);

    const std::vector<ColumnGroup> groups =
        opt.groups.empty() ? identity_groups(encoded_train.schema()) : opt.groups;

    CascadeModel model;
    model.threshold = opt.threshold;
    model.set_scope(specs[0].population);
    model.stages.resize(specs.size());

    for (size_t s = 0; s < specs.size(); ++s) {
        const StageSpec& spec = specs[s];
        std::vector<size_t> rows;
        for (size_t i = 0; i < encoded_train.n(); ++i)
            if (spec.population.contains(encoded_train.label(i))) rows.push_back(i);
        if (rows.empty()) throw StageEmptyError(spec.id);

        const std::vector<std::string>& wanted =
            !spec.features.empty() ? spec.features : opt.default_features;
        std::vector<size_t> columns;
        if (wanted.empty()) {
            columns.resize(encoded_train.width());
            for (size_t c = 0; c < columns.size(); ++c) columns[c] = c;
        } else {
            columns = columns_for_features(groups, wanted);
        }

        Dataset stage_data = relabel_binary(encoded_train.subset_rows(rows), spec.positives);
        stage_data = stage_data.subset_columns(columns);

        std::vector<std::string> dropped;
        if (spec.drop_constants) {
            auto [kept_data, dropped_names] = drop_constant_features(stage_data);
            if (!dropped_names.empty()) {
                std::vector<size_t> kept_cols;
                for (size_t k = 0; k < columns.size(); ++k) {
                    const std::string& name = encoded_train.schema().feature(columns[k]).name;
                    if (std::find(dropped_names.begin(), dropped_names.end(), name) ==
                        dropped_names.end())
                        kept_cols.push_back(columns[k]);
                }
                columns = std::move(kept_cols);
                stage_data = std::move(kept_data);
                dropped = std::move(dropped_names);
            }
        }

        FittedStage& fitted = model.stages[s];
        fitted.spec = spec;
        fitted.columns = std::move(columns);
        fitted.dropped = std::move(dropped);
        fitted.on_positive = routing[s].on_positive;
        fitted.positive_leaf = routing[s].positive_leaf;
        fitted.on_negative = routing[s].on_negative;
        fitted.negative_leaf = routing[s].negative_leaf;
        fitted.model = train_classifier(stage_data, spec.learner_override.value_or(cfg),
                                        opt.threads);
    }
    return model;
}

double StageStats::und_pct() const {
    return true_pos_reached
               ? 100.0 * static_cast<double>(pos_predicted_neg) /
                     static_cast<double>(true_pos_reached)
               : 0.0;
}

double StageStats::misclassified_in_pct() const {
    return true_neg_reached
               ? 100.0 * static_cast<double>(neg_predicted_pos) /
                     static_cast<double>(true_neg_reached)
               : 0.0;
}

double StageStats::captured_full_pct() const {
    return full_support_pos
               ? 100.0 * static_cast<double>(captured_pos) / static_cast<double>(full_support_pos)
               : 0.0;
}

CategorizationReport evaluate_cascade(const CascadeModel& m, const Dataset& encoded_test,
                                      int threads) {
    if (!encoded_test.is_encoded()) throw NotEncodedError();
    if (encoded_test.n() == 0) throw EmptyEvaluationError();

    const size_t n = encoded_test.n();
    std::vector<AttackLabel> predicted(n);
    std::vector<std::vector<int>> paths(n);
    const size_t chunk = 512;
    const size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](size_t c) {
        std::vector<double> row(encoded_test.width());
        const size_t lo = c * chunk;
        const size_t hi = std::min(n, lo + chunk);
        for (size_t i = lo; i < hi; ++i) {
            encoded_test.encoded_row(i, row);
            predicted[i] = m.predict_traced(row, paths[i]);
        }
    });

    CategorizationReport report;
    report.strategy = "step-wise";
    std::vector<StageStats> stats(m.stages.size());
    for (size_t s = 0; s < m.stages.size(); ++s) {
        stats[s].id = m.stages[s].spec.id;
        stats[s].positives = m.stages[s].spec.positives.to_string();
    }

    for (size_t i = 0; i < n; ++i) {
        const AttackLabel truth = encoded_test.label(i);
        report.confusion.add(truth, predicted[i]);
        ++report.support[truth];
        for (size_t s = 0; s < m.stages.size(); ++s)
            if (m.stages[s].spec.positives.contains(truth)) ++stats[s].full_support_pos;
        for (size_t k = 0; k < paths[i].size(); ++k) {
            const auto s = static_cast<size_t>(paths[i][k]);
            const FittedStage& stage = m.stages[s];
            const bool truth_positive = stage.spec.positives.contains(truth);
            // deeper path entry names the branch taken; a leaf exit is a
            // positive one exactly when the emitted label is the positive leaf
            const bool went_positive =
                k + 1 < paths[i].size()
                    ? stage.on_positive == paths[i][k + 1]
                    : stage.on_positive < 0 && predicted[i] == stage.positive_leaf;
            ++stats[s].reached;
            if (truth_positive) {
                ++stats[s].true_pos_reached;
                if (!went_positive) ++stats[s].pos_predicted_neg;
                if (went_positive) ++stats[s].captured_pos;
            } else {
                ++stats[s].true_neg_reached;
                if (went_positive) ++stats[s].neg_predicted_pos;
            }
        }
    }
    report.stages = std::move(stats);
    report.accuracy = per_class_accuracy(report.confusion);
    return report;
}

ClassifierModel train_single_type(const Dataset& encoded_train, AttackLabel attack,
                                  const TrainConfig& cfg, const std::vector<size_t>& columns,
                                  int threads) {
    if (!encoded_train.is_encoded()) throw NotEncodedError();
    std::vector<size_t> rows;
    bool saw_normal = false, saw_attack = false;
    for (size_t i = 0; i < encoded_train.n(); ++i) {
        const AttackLabel l = encoded_train.label(i);
        if (l == AttackLabel::Normal) {
            saw_normal = true;
            rows.push_back(i);
        } else if (l == attack) {
            saw_attack = true;
            rows.push_back(i);
        }
    }
    if (!saw_normal) throw MissingClassError("Normal");
    if (!saw_attack) throw MissingClassError(label_name(attack));

    Dataset data = relabel_binary(encoded_train.subset_rows(rows), LabelSet{attack});
    if (!columns.empty()) data = data.subset_columns(columns);
    return train_classifier(data, cfg, threads);
}

SingleTypeModelSet train_single_type_set(const Dataset& encoded_train, const TrainConfig& cfg,
                                         const SingleTypeTrainOptions& opt) {
    if (!encoded_train.is_encoded()) throw NotEncodedError();
    const ClassStats stats = class_stats(encoded_train);

    SingleTypeModelSet set;
    set.threshold = opt.threshold;
    if (!opt.checking_order.empty()) {
        set.checking_order = opt.checking_order;
    } else {
        LabelSet attacks;
        for (AttackLabel l : all_labels())
            if (l != AttackLabel::Normal && stats.count(l) > 0) attacks.insert(l);
        set.checking_order = by_count_desc(stats, attacks);
    }
    if (set.checking_order.empty()) throw MissingClassError("at least one attack");

    const std::vector<ColumnGroup> groups =
        opt.groups.empty() ? identity_groups(encoded_train.schema()) : opt.groups;
    if (opt.default_features.empty()) {
        set.columns.resize(encoded_train.width());
        for (size_t c = 0; c < set.columns.size(); ++c) set.columns[c] = c;
    } else {
        set.columns = columns_for_features(groups, opt.default_features);
    }

    for (AttackLabel attack : set.checking_order)
        set.models.emplace(attack,
                           train_single_type(encoded_train, attack, cfg, set.columns, opt.threads));
    return set;
}

AttackLabel single_type_categorize(const SingleTypeModelSet& set, std::span<const double> row) {
    std::vector<double> scratch(set.columns.size());
    for (size_t k = 0; k < set.columns.size(); ++k) scratch[k] = row[set.columns[k]];
    for (AttackLabel attack : set.checking_order) {
        if (score(set.models.at(attack), scratch) >= set.threshold) return attack;
    }
    return AttackLabel::Normal;
}

CategorizationReport evaluate_single_type(const SingleTypeModelSet& set,
                                          const Dataset& encoded_test, int threads) {
    if (!encoded_test.is_encoded()) throw NotEncodedError();
    if (encoded_test.n() == 0) throw EmptyEvaluationError();

    const size_t n = encoded_test.n();
    std::vector<AttackLabel> predicted(n);
    const size_t chunk = 512;
    const size_t chunks = (n + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](size_t c) {
        std::vector<double> row(encoded_test.width());
        const size_t lo = c * chunk;
        const size_t hi = std::min(n, lo + chunk);
        for (size_t i = lo; i < hi; ++i) {
            encoded_test.encoded_row(i, row);
            predicted[i] = single_type_categorize(set, row);
        }
    });

    CategorizationReport report;
    report.strategy = "single-type";
    report.checking_order = set.checking_order;
    for (size_t i = 0; i < n; ++i) {
        report.confusion.add(encoded_test.label(i), predicted[i]);
        ++report.support[encoded_test.label(i)];
    }
    report.accuracy = per_class_accuracy(report.confusion);
    return report;
}

std::map<AttackLabel, MetricsReport> single_type_model_metrics(const SingleTypeModelSet& set,
                                                               const Dataset& encoded_test,
                                                               int threads) {
    std::map<AttackLabel, MetricsReport> out;
    for (const auto& [attack, model] : set.models) {
        std::vector<size_t> rows;
        for (size_t i = 0; i < encoded_test.n(); ++i)
            if (encoded_test.label(i) == AttackLabel::Normal || encoded_test.label(i) == attack)
                rows.push_back(i);
        if (rows.empty()) continue;
        Dataset subset = relabel_binary(encoded_test.subset_rows(rows), LabelSet{attack});
        subset = subset.subset_columns(set.columns);
        out.emplace(attack, evaluate_binary(model, subset, set.threshold, threads));
    }
    return out;
}

StrategyComparison compare_strategies(const CategorizationReport& single,
                                      const CategorizationReport& cascade) {
    const auto labels_a = single.confusion.labels_with_support();
    const auto labels_b = cascade.confusion.labels_with_support();
    if (labels_a != labels_b)
        throw TaxonomyMismatchError("single covers " + LabelSet::of(labels_a).to_string() +
                                    ", step-wise covers " + LabelSet::of(labels_b).to_string());

    StrategyComparison cmp;
    for (AttackLabel l : labels_a) {
        ComparisonRow row;
        row.label = l;
        row.single_pct = single.accuracy.per_class.at(l);
        row.cascade_pct = cascade.accuracy.per_class.at(l);
        row.delta = row.cascade_pct - row.single_pct;
        cmp.rows.push_back(row);
    }
    cmp.single_overall = single.accuracy.overall;
    cmp.cascade_overall = cascade.accuracy.overall;
    cmp.overall_delta = cmp.cascade_overall - cmp.single_overall;
    return cmp;
}

namespace {

std::string trim_copy(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

LabelSet parse_label_list(const std::string& value, const std::string& where) {
    LabelSet out;
    size_t start = 0;
    for (size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            const std::string tok = trim_copy(value.substr(start, i - start));
            start = i + 1;
            if (tok.empty()) continue;
            auto l = parse_label(tok);
            if (!l) throw CascadeSpecError(where + ": unknown label '" + tok + "'");
            out.insert(*l);
        }
    }
    return out;
}

}  // namespace

std::vector<StageSpec> parse_cascade_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open cascade spec " + path);

    std::vector<StageSpec> specs;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("stage", 0) == 0) {
            StageSpec s;
            s.id = trim_copy(t.substr(5));
            if (s.id.empty()) throw CascadeSpecError(path + ": stage without an id");
            specs.push_back(std::move(s));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos || specs.empty())
            throw CascadeSpecError(path + ": expected `key = value` inside a stage: '" + t + "'");
        const std::string key = trim_copy(t.substr(0, eq));
        const std::string value = trim_copy(t.substr(eq + 1));
        StageSpec& s = specs.back();
        if (key == "population") {
            s.population = parse_label_list(value, path);
        } else if (key == "positive") {
            s.positives = parse_label_list(value, path);
        } else if (key == "drop_constants") {
            s.drop_constants = value == "on" || value == "true" || value == "1";
        } else if (key == "features") {
            size_t start = 0;
            for (size_t i = 0; i <= value.size(); ++i) {
                if (i == value.size() || value[i] == ',') {
                    const std::string tok = trim_copy(value.substr(start, i - start));
                    start = i + 1;
                    if (!tok.empty()) s.features.push_back(tok);
                }
            }
        } else {
            throw CascadeSpecError(path + ": unknown key '" + key + "'");
        }
    }
    if (specs.empty()) throw CascadeSpecError(path + ": no stages");
    return specs;
}

void write_cascade_spec_file(const std::vector<StageSpec>& specs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write cascade spec " + path);
    for (const StageSpec& s : specs) {
        out << "stage " << s.id << "\n";
        out << "population = ";
        bool first = true;
        for (AttackLabel l : s.population.to_vector()) {
            if (!first) out << ",";
            out << label_name(l);
            first = false;
        }
        out << "\npositive = ";
        first = true;
        for (AttackLabel l : s.positives.to_vector()) {
            if (!first) out << ",";
            out << label_name(l);
            first = false;
        }
        out << "\ndrop_constants = " << (s.drop_constants ? "on" : "off") << "\n";
        if (!s.features.empty()) {
            out << "features = ";
            for (size_t i = 0; i < s.features.size(); ++i)
                out << (i ? "," : "") << s.features[i];
            out << "\n";
        }
        out << "\n";
    }
}

}  // namespace netids
