#pragma once

#include <string>
#include <vector>

namespace netids {

enum class FeatureKind { Numeric, Categorical };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
};

// Ordered feature list plus the label column and optional id/ignored
// columns. Names are unique, at least one feature is numeric, and the label
// column never appears among the features (validated on construction).
class FeatureSchema {
public:
    FeatureSchema() = default;
    FeatureSchema(std::vector<FeatureSpec> features, std::string label_column,
                  std::string id_column = "", std::vector<std::string> ignored = {});

    const std::vector<FeatureSpec>& features() const { return features_; }
    size_t feature_count() const { return features_.size(); }
    const FeatureSpec& feature(size_t i) const { return features_[i]; }
    const std::string& label_column() const { return label_column_; }
    const std::string& id_column() const { return id_column_; }
    const std::vector<std::string>& ignored_columns() const { return ignored_; }

    // -1 if absent
    int feature_index(const std::string& name) const;
    bool all_numeric() const;

    bool operator==(const FeatureSchema& other) const;

private:
    std::vector<FeatureSpec> features_;
    std::string label_column_;
    std::string id_column_;
    std::vector<std::string> ignored_;
};

// Sidecar schema file: one `name,kind` line per column, `#` comments.
// Kinds: numeric, categorical, label, id, ignore.
FeatureSchema parse_schema_file(const std::string& path);
FeatureSchema parse_schema_lines(const std::vector<std::string>& lines, const std::string& origin);
void write_schema_file(const FeatureSchema& schema, const std::string& path);

// Scans the whole CSV. A column is numeric when every non-empty value
// parses as a float. The label column is `attack_cat` when present, else a
// column named label/class/category, else the last column. A column named
// `id` becomes the id column; a leftover binary `label` column next to
// `attack_cat` is ignored so the target never leaks into the features.
FeatureSchema infer_schema(const std::string& csv_path);

}  // namespace netids
