#include "netids/synth.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "netids/errors.hpp"
#include "netids/rng.hpp"

namespace netids {

namespace {

int32_t intern(Column& col, std::unordered_map<std::string, int32_t>& codes,
               const std::string& tok) {
    auto it = codes.find(tok);
    if (it != codes.end()) return it->second;
    auto code = static_cast<int32_t>(col.categories.size());
    col.categories.push_back(tok);
    codes.emplace(tok, code);
    return code;
}

const std::string& sample_category(const Distribution& dist, Rng& rng) {
    double total = 0.0;
    for (const auto& [tok, w] : dist.categories) total += w;
    double r = rng.next_double() * total;
    for (const auto& [tok, w] : dist.categories) {
        r -= w;
        if (r < 0.0) return tok;
    }
    return dist.categories.back().first;
}

}  // namespace

Dataset synthesize(const SynthSpec& spec, uint64_t seed) {
    if (spec.classes.size() < 2) throw DataError("synthesize: need at least 2 classes");
    for (const auto& cls : spec.classes) {
        if (cls.count < 1) throw DataError("synthesize: class counts must be >= 1");
        if (cls.dists.size() != spec.schema.feature_count())
            throw DataError("synthesize: distributions not aligned to schema for class " +
                            label_name(cls.label));
    }

    const size_t d = spec.schema.feature_count();
    std::vector<Column> columns(d);
    std::vector<std::unordered_map<std::string, int32_t>> codes(d);
    for (size_t j = 0; j < d; ++j) columns[j].kind = spec.schema.feature(j).kind;

    std::vector<AttackLabel> labels;
    Rng rng = Rng(seed).derive(rng_stream::kSynth);
    for (const auto& cls : spec.classes) {
        for (size_t i = 0; i < cls.count; ++i) {
            for (size_t j = 0; j < d; ++j) {
                const Distribution& dist = cls.dists[j];
                Column& col = columns[j];
                if (col.kind == FeatureKind::Numeric) {
                    double v = dist.kind == Distribution::Kind::Uniform
                                   ? rng.uniform(dist.a, dist.b)
                                   : rng.normal(dist.a, dist.b);
                    col.num.push_back(v);
                } else {
                    col.codes.push_back(intern(col, codes[j], sample_category(dist, rng)));
                }
            }
            labels.push_back(cls.label);
        }
    }
    return Dataset(spec.schema, std::move(columns), std::move(labels),
                   "synthetic:" + std::to_string(seed));
}

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

double parse_num(const std::string& tok, const std::string& where) {
    try {
        return std::stod(tok);
    } catch (const std::exception&) {
        throw DataError(where + ": bad number '" + tok + "'");
    }
}

}  // namespace

SynthSpec parse_synth_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open synth spec " + path);

    std::vector<std::string> schema_lines;
    struct DistLine {
        AttackLabel label;
        std::string feature;
        Distribution dist;
    };
    std::vector<std::pair<AttackLabel, size_t>> class_lines;
    std::vector<DistLine> dist_lines;

    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split(t, ',');
        if (fields[0] == "class") {
            if (fields.size() != 3) throw DataError(path + ": class line needs `class,<Label>,<count>`");
            auto label = parse_label(fields[1]);
            if (!label) throw DataError(path + ": unknown class label '" + fields[1] + "'");
            class_lines.emplace_back(*label, static_cast<size_t>(parse_num(fields[2], path)));
        } else if (fields[0] == "dist") {
            if (fields.size() < 5) throw DataError(path + ": dist line too short");
            auto label = parse_label(fields[1]);
            if (!label) throw DataError(path + ": unknown class label '" + fields[1] + "'");
            DistLine dl;
            dl.label = *label;
            dl.feature = fields[2];
            const std::string& kind = fields[3];
            if (kind == "gaussian" || kind == "uniform") {
                if (fields.size() != 6) throw DataError(path + ": " + kind + " needs two parameters");
                dl.dist.kind = kind == "gaussian" ? Distribution::Kind::Gaussian
                                                  : Distribution::Kind::Uniform;
                dl.dist.a = parse_num(fields[4], path);
                dl.dist.b = parse_num(fields[5], path);
            } else if (kind == "categorical") {
                dl.dist.kind = Distribution::Kind::Categorical;
                for (const auto& item : split(fields[4], ';')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos)
                        throw DataError(path + ": categorical entries are tok:weight");
                    dl.dist.categories.emplace_back(trim(item.substr(0, colon)),
                                                    parse_num(item.substr(colon + 1), path));
                }
            } else {
                throw DataError(path + ": unknown distribution '" + kind + "'");
            }
            dist_lines.push_back(std::move(dl));
        } else {
            schema_lines.push_back(t);
        }
    }

    SynthSpec spec;
    spec.schema = parse_schema_lines(schema_lines, path);
    for (const auto& [label, count] : class_lines) {
        SynthClass cls;
        cls.label = label;
        cls.count = count;
        cls.dists.resize(spec.schema.feature_count());
        for (size_t j = 0; j < spec.schema.feature_count(); ++j) {
            if (spec.schema.feature(j).kind == FeatureKind::Categorical) {
                cls.dists[j].kind = Distribution::Kind::Categorical;
                cls.dists[j].categories = {{"c0", 1.0}};
            }
        }
        spec.classes.push_back(std::move(cls));
    }
    for (const auto& dl : dist_lines) {
        const int j = spec.schema.feature_index(dl.feature);
        if (j < 0) throw DataError(path + ": dist for unknown feature '" + dl.feature + "'");
        bool found = false;
        for (auto& cls : spec.classes) {
            if (cls.label == dl.label) {
                cls.dists[static_cast<size_t>(j)] = dl.dist;
                found = true;
            }
        }
        if (!found) throw DataError(path + ": dist for undeclared class " + label_name(dl.label));
    }
    return spec;
}

}  // namespace netids
