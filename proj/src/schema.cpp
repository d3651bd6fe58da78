#include "netids/schema.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "netids/csv.hpp"
#include "netids/errors.hpp"

namespace netids {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features, std::string label_column,
                             std::string id_column, std::vector<std::string> ignored)
    : features_(std::move(features)),
      label_column_(std::move(label_column)),
      id_column_(std::move(id_column)),
      ignored_(std::move(ignored)) {
    std::unordered_set<std::string> seen;
    bool any_numeric = false;
    for (const auto& f : features_) {
        if (!seen.insert(f.name).second)
            throw SchemaMismatchError("duplicate feature name '" + f.name + "'");
        if (f.name == label_column_)
            throw SchemaMismatchError("label column '" + label_column_ + "' listed among features");
        if (f.kind == FeatureKind::Numeric) any_numeric = true;
    }
    if (features_.empty()) throw SchemaMismatchError("schema has no features");
    if (!any_numeric) throw SchemaMismatchError("schema needs at least one numeric feature");
    if (label_column_.empty()) throw SchemaMismatchError("schema has no label column");
}

int FeatureSchema::feature_index(const std::string& name) const {
    for (size_t i = 0; i < features_.size(); ++i)
        if (features_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool FeatureSchema::all_numeric() const {
    return std::all_of(features_.begin(), features_.end(),
                       [](const FeatureSpec& f) { return f.kind == FeatureKind::Numeric; });
}

bool FeatureSchema::operator==(const FeatureSchema& other) const {
    if (label_column_ != other.label_column_ || features_.size() != other.features_.size())
        return false;
    for (size_t i = 0; i < features_.size(); ++i)
        if (features_[i].name != other.features_[i].name ||
            features_[i].kind != other.features_[i].kind)
            return false;
    return true;
}

FeatureSchema parse_schema_lines(const std::vector<std::string>& lines, const std::string& origin) {
    std::vector<FeatureSpec> features;
    std::string label_col, id_col;
    std::vector<std::string> ignored;
    for (const std::string& raw : lines) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError(origin + ": expected `name,kind`, got '" + line + "'");
        std::string name = trim(line.substr(0, comma));
        std::string kind = lower(trim(line.substr(comma + 1)));
        if (kind == "numeric") {
            features.push_back({name, FeatureKind::Numeric});
        } else if (kind == "categorical") {
            features.push_back({name, FeatureKind::Categorical});
        } else if (kind == "label") {
            label_col = name;
        } else if (kind == "id") {
            id_col = name;
        } else if (kind == "ignore") {
            ignored.push_back(name);
        } else {
            throw DataError(origin + ": unknown kind '" + kind + "' for column '" + name + "'");
        }
    }
    return FeatureSchema(std::move(features), std::move(label_col), std::move(id_col),
                         std::move(ignored));
}

FeatureSchema parse_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema file " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return parse_schema_lines(lines, path);
}

void write_schema_file(const FeatureSchema& schema, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write schema file " + path);
    for (const auto& f : schema.features())
        out << f.name << ',' << (f.kind == FeatureKind::Numeric ? "numeric" : "categorical")
            << '\n';
    if (!schema.id_column().empty()) out << schema.id_column() << ",id\n";
    for (const auto& c : schema.ignored_columns()) out << c << ",ignore\n";
    out << schema.label_column() << ",label\n";
}

FeatureSchema infer_schema(const std::string& csv_path) {
    CsvReader reader(csv_path);
    std::vector<std::string> header;
    if (!reader.next_row(header)) throw EmptyFileError(csv_path);

    const size_t n_cols = header.size();
    std::vector<bool> numeric(n_cols, true);
    std::vector<bool> nonempty_seen(n_cols, false);
    std::vector<std::string> row;
    size_t rows = 0;
    while (reader.next_row(row)) {
        ++rows;
        for (size_t c = 0; c < n_cols && c < row.size(); ++c) {
            const std::string v = trim(row[c]);
            if (v.empty()) continue;
            nonempty_seen[c] = true;
            if (numeric[c] && !parse_double(v)) numeric[c] = false;
        }
    }
    if (rows == 0) throw EmptyFileError(csv_path);

    int label_idx = -1, id_idx = -1, binary_label_idx = -1;
    for (size_t c = 0; c < n_cols; ++c) {
        const std::string name = lower(trim(header[c]));
        if (name == "attack_cat") label_idx = static_cast<int>(c);
        if (name == "id" && id_idx < 0) id_idx = static_cast<int>(c);
        if ((name == "label" || name == "class" || name == "category") && binary_label_idx < 0)
            binary_label_idx = static_cast<int>(c);
    }
    std::vector<std::string> ignored;
    if (label_idx < 0) {
        label_idx = binary_label_idx >= 0 ? binary_label_idx : static_cast<int>(n_cols) - 1;
    } else if (binary_label_idx >= 0) {
        // attack_cat is the target; a leftover 0/1 label column would leak it
        ignored.push_back(trim(header[static_cast<size_t>(binary_label_idx)]));
    }

    std::vector<FeatureSpec> features;
    for (size_t c = 0; c < n_cols; ++c) {
        if (static_cast<int>(c) == label_idx || static_cast<int>(c) == id_idx) continue;
        const std::string name = trim(header[c]);
        if (std::find(ignored.begin(), ignored.end(), name) != ignored.end()) continue;
        // all-empty columns count as categorical so they can one-hot to "other"
        const bool is_num = numeric[c] && nonempty_seen[c];
        features.push_back({name, is_num ? FeatureKind::Numeric : FeatureKind::Categorical});
    }
    return FeatureSchema(std::move(features), trim(header[static_cast<size_t>(label_idx)]),
                         id_idx >= 0 ? trim(header[static_cast<size_t>(id_idx)]) : "",
                         std::move(ignored));
}

}  // namespace netids
