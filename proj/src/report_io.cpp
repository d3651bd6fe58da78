#include "netids/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "netids/errors.hpp"

namespace netids {

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

namespace {

std::string pad(const std::string& s, size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

json label_map_json(const std::map<AttackLabel, double>& m) {
    json out = json::object();
    for (const auto& [l, v] : m) out[label_name(l)] = v;
    return out;
}

json support_map_json(const std::map<AttackLabel, uint64_t>& m) {
    json out = json::object();
    for (const auto& [l, v] : m) out[label_name(l)] = v;
    return out;
}

}  // namespace

json to_json(const MetricsReport& r) {
    json j;
    j["far_pct"] = r.far_pct;
    j["und_pct"] = r.und_pct;
    j["overall_error_pct"] = r.error_pct;
    j["overall_accuracy_pct"] = r.accuracy_pct;
    j["confusion"] = {{"tp", r.confusion.tp},
                      {"fp", r.confusion.fp},
                      {"tn", r.confusion.tn},
                      {"fn", r.confusion.fn}};
    j["per_class_accuracy_pct"] = label_map_json(r.per_class_accuracy);
    j["support"] = support_map_json(r.support);
    return j;
}

std::string to_text(const MetricsReport& r) {
    std::ostringstream out;
    out << "Overall  FAR      UND      Accuracy\n";
    out << pad(pct(r.error_pct) + "%", 9) << pad(pct(r.far_pct) + "%", 9)
        << pad(pct(r.und_pct) + "%", 9) << pct(r.accuracy_pct) << "%\n";
    out << "tp=" << r.confusion.tp << " fp=" << r.confusion.fp << " tn=" << r.confusion.tn
        << " fn=" << r.confusion.fn << "\n";
    if (!r.per_class_accuracy.empty()) {
        out << "\nClass accuracy (vs binary truth)\n";
        for (const auto& [l, v] : r.per_class_accuracy)
            out << pad(label_name(l), 16) << pad(pct(v) + "%", 9) << "n="
                << r.support.at(l) << "\n";
    }
    return out.str();
}

json to_json(const CategorizationReport& r) {
    json j;
    j["strategy"] = r.strategy;
    j["overall_accuracy_pct"] = r.accuracy.overall;
    j["per_class_accuracy_pct"] = label_map_json(r.accuracy.per_class);
    j["support"] = support_map_json(r.support);
    json zero = json::array();
    for (AttackLabel l : r.accuracy.zero_support) zero.push_back(label_name(l));
    j["zero_support"] = zero;

    json confusion = json::object();
    for (AttackLabel t : r.confusion.labels_with_support()) {
        json row = json::object();
        for (AttackLabel p : all_labels())
            if (r.confusion.count(t, p)) row[label_name(p)] = r.confusion.count(t, p);
        confusion[label_name(t)] = row;
    }
    j["confusion"] = confusion;

    if (!r.checking_order.empty()) {
        json order = json::array();
        for (AttackLabel l : r.checking_order) order.push_back(label_name(l));
        j["checking_order"] = order;
    }
    if (!r.stages.empty()) {
        json stages = json::array();
        for (const StageStats& s : r.stages) {
            json e;
            e["stage"] = s.id;
            e["positive"] = s.positives;
            e["reached"] = s.reached;
            e["true_positives_reached"] = s.true_pos_reached;
            e["und_pct"] = s.und_pct();
            e["misclassified_in_pct"] = s.misclassified_in_pct();
            e["full_support"] = s.full_support_pos;
            e["captured_of_full_pct"] = s.captured_full_pct();
            stages.push_back(e);
        }
        j["stages"] = stages;
    }
    return j;
}

std::string to_text(const CategorizationReport& r) {
    std::ostringstream out;
    out << "Strategy: " << r.strategy << "\n\n";
    out << pad("Type of Attack", 16) << "Accuracy\n";
    for (const auto& [l, v] : r.accuracy.per_class)
        out << pad(label_name(l), 16) << pct(v) << "%\n";
    out << pad("Overall", 16) << pct(r.accuracy.overall) << "%\n";
    for (AttackLabel l : r.accuracy.zero_support)
        out << "warning: " << label_name(l) << " has zero support; omitted\n";
    if (!r.checking_order.empty()) {
        out << "\nChecking order: ";
        for (size_t i = 0; i < r.checking_order.size(); ++i)
            out << (i ? ", " : "") << label_name(r.checking_order[i]);
        out << "\n";
    }
    if (!r.stages.empty()) {
        out << "\n"
            << pad("Stage", 7) << pad("Positive", 32) << pad("Reached", 9) << pad("UND%", 8)
            << pad("MisIn%", 8) << "Captured% (of full support)\n";
        for (const StageStats& s : r.stages)
            out << pad(s.id, 7) << pad(s.positives, 32) << pad(std::to_string(s.reached), 9)
                << pad(pct(s.und_pct()), 8) << pad(pct(s.misclassified_in_pct()), 8)
                << pct(s.captured_full_pct()) << "\n";
    }
    return out.str();
}

CategorizationReport categorization_report_from_json(const json& j) {
    CategorizationReport r;
    r.strategy = j.value("strategy", "?");
    const json& confusion = j.at("confusion");
    for (auto it = confusion.begin(); it != confusion.end(); ++it) {
        auto truth = parse_label(it.key());
        if (!truth) throw DataError("report: unknown label " + it.key());
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
            auto predicted = parse_label(jt.key());
            if (!predicted) throw DataError("report: unknown label " + jt.key());
            r.confusion.add(*truth, *predicted, jt.value().get<uint64_t>());
        }
    }
    for (AttackLabel l : r.confusion.labels_with_support())
        r.support[l] = r.confusion.row_sum(l);
    r.accuracy = per_class_accuracy(r.confusion);
    return r;
}

json to_json(const StrategyComparison& c) {
    json j;
    json rows = json::array();
    for (const ComparisonRow& row : c.rows) {
        rows.push_back({{"label", label_name(row.label)},
                        {"single_type_pct", row.single_pct},
                        {"step_wise_pct", row.cascade_pct},
                        {"delta", row.delta}});
    }
    j["rows"] = rows;
    j["single_type_overall_pct"] = c.single_overall;
    j["step_wise_overall_pct"] = c.cascade_overall;
    j["overall_delta"] = c.overall_delta;
    return j;
}

std::string to_text(const StrategyComparison& c) {
    std::ostringstream out;
    out << pad("Type of Attack", 16) << pad("Single-Type", 13) << pad("Step-Wise", 11)
        << "Delta\n";
    for (const ComparisonRow& row : c.rows)
        out << pad(label_name(row.label), 16) << pad(pct(row.single_pct) + "%", 13)
            << pad(pct(row.cascade_pct) + "%", 11) << pct(row.delta) << "\n";
    out << pad("Overall", 16) << pad(pct(c.single_overall) + "%", 13)
        << pad(pct(c.cascade_overall) + "%", 11) << pct(c.overall_delta) << "\n";
    return out.str();
}

json to_json(const SelectionTrace& t) {
    json j;
    j["baseline_wall_s"] = t.baseline_wall_s;
    j["stop_reason"] = to_string(t.stop);
    j["subset"] = t.subset;
    json iters = json::array();
    for (size_t i = 0; i < t.iterations.size(); ++i) {
        const SelectionIteration& it = t.iterations[i];
        json e;
        e["iteration"] = i + 1;
        e["feature"] = it.feature;
        e["criterion_pct"] = it.criterion_pct;
        e["wall_s"] = it.wall_s;
        e["relative_time"] = it.relative_time;
        json cands = json::array();
        for (const CandidateScore& c : it.candidates)
            cands.push_back({{"feature", c.feature}, {"criterion_pct", c.criterion_pct}});
        e["candidates"] = cands;
        iters.push_back(e);
    }
    j["iterations"] = iters;
    return j;
}

void write_trace_csv(const SelectionTrace& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "iteration,feature,criterion_pct,wall_s,relative_time\n";
    for (size_t i = 0; i < t.iterations.size(); ++i) {
        const SelectionIteration& it = t.iterations[i];
        char line[256];
        std::snprintf(line, sizeof line, "%zu,%s,%.10g,%.6f,%.6f\n", i + 1, it.feature.c_str(),
                      it.criterion_pct, it.wall_s, it.relative_time);
        out << line;
    }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "feature_count,error_pct,relative_time\n";
    for (const SweepRow& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%zu,%.10g,%.6f\n", r.count, r.error_pct,
                      r.relative_time);
        out << line;
    }
}

json class_stats_json(const ClassStats& s) {
    json j;
    j["total"] = s.total;
    json classes = json::object();
    for (AttackLabel l : all_labels()) {
        if (s.count(l) == 0) continue;
        classes[label_name(l)] = {{"count", s.count(l)}, {"pct", s.percentage(l)}};
    }
    j["classes"] = classes;
    return j;
}

std::string class_stats_text(const ClassStats& s, const std::string& title) {
    std::ostringstream out;
    out << title << " (" << s.total << " records)\n";
    out << pad("Traffic Type", 16) << pad("Count", 10) << "Percent\n";
    for (AttackLabel l : all_labels()) {
        if (s.count(l) == 0) continue;
        out << pad(label_name(l), 16) << pad(std::to_string(s.count(l)), 10)
            << pct(s.percentage(l)) << "%\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << j.dump(2) << "\n";
}

uint64_t file_fnv1a(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    return h;
}

}  // namespace netids
