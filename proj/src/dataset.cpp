#include "netids/dataset.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "netids/csv.hpp"
#include "netids/errors.hpp"

namespace netids {

std::vector<AttackLabel> LabelSet::to_vector() const {
    std::vector<AttackLabel> out;
    for (AttackLabel l : all_labels())
        if (contains(l)) out.push_back(l);
    return out;
}

std::string LabelSet::to_string() const {
    std::string out;
    for (AttackLabel l : to_vector()) {
        if (!out.empty()) out.push_back('+');
        out += label_name(l);
    }
    return out;
}

Dataset::Dataset(FeatureSchema schema, std::vector<Column> columns,
                 std::vector<AttackLabel> labels, std::string provenance)
    : schema_(std::move(schema)),
      columns_(std::move(columns)),
      labels_(std::move(labels)),
      provenance_(std::move(provenance)) {
    assert(columns_.size() == schema_.feature_count());
}

Record Dataset::record(size_t i) const {
    Record r;
    r.values.reserve(columns_.size());
    for (const Column& c : columns_) {
        FeatureValue v;
        v.kind = c.kind;
        if (c.kind == FeatureKind::Numeric)
            v.num = c.num[i];
        else
            v.cat = c.token(i);
        r.values.push_back(std::move(v));
    }
    r.label = labels_[i];
    return r;
}

void Dataset::encoded_row(size_t i, std::span<double> out) const {
    assert(out.size() == columns_.size());
    for (size_t j = 0; j < columns_.size(); ++j) out[j] = columns_[j].num[i];
}

Dataset Dataset::subset_rows(const std::vector<size_t>& rows) const {
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (const Column& c : columns_) {
        Column nc;
        nc.kind = c.kind;
        nc.categories = c.categories;
        if (c.kind == FeatureKind::Numeric) {
            nc.num.reserve(rows.size());
            for (size_t r : rows) nc.num.push_back(c.num[r]);
        } else {
            nc.codes.reserve(rows.size());
            for (size_t r : rows) nc.codes.push_back(c.codes[r]);
        }
        cols.push_back(std::move(nc));
    }
    std::vector<AttackLabel> labels;
    labels.reserve(rows.size());
    for (size_t r : rows) labels.push_back(labels_[r]);
    Dataset out(schema_, std::move(cols), std::move(labels), provenance_);
    if (!binary_.empty()) {
        std::vector<uint8_t> y;
        y.reserve(rows.size());
        for (size_t r : rows) y.push_back(binary_[r]);
        out.set_binary_labels(std::move(y));
    }
    return out;
}

Dataset Dataset::subset_columns(const std::vector<size_t>& cols) const {
    std::vector<FeatureSpec> feats;
    std::vector<Column> new_cols;
    feats.reserve(cols.size());
    new_cols.reserve(cols.size());
    for (size_t j : cols) {
        feats.push_back(schema_.feature(j));
        new_cols.push_back(columns_[j]);
    }
    FeatureSchema sub(std::move(feats), schema_.label_column(), schema_.id_column(),
                      schema_.ignored_columns());
    Dataset out(std::move(sub), std::move(new_cols), labels_, provenance_);
    if (!binary_.empty()) out.set_binary_labels(binary_);
    return out;
}

Dataset load_csv(const std::string& path, const FeatureSchema& schema) {
    CsvReader reader(path);
    std::vector<std::string> header;
    if (!reader.next_row(header)) throw EmptyFileError(path);
    for (auto& h : header) {
        // header tokens may carry stray spaces
        while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
        while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    }

    // order-insensitive header matching; unlisted columns are skipped
    auto find_col = [&](const std::string& name) -> int {
        for (size_t c = 0; c < header.size(); ++c)
            if (header[c] == name) return static_cast<int>(c);
        return -1;
    };
    const size_t d = schema.feature_count();
    std::vector<int> src(d);
    for (size_t j = 0; j < d; ++j) {
        src[j] = find_col(schema.feature(j).name);
        if (src[j] < 0) throw MissingColumnError(schema.feature(j).name);
    }
    const int label_src = find_col(schema.label_column());
    if (label_src < 0) throw MissingColumnError(schema.label_column());

    std::vector<Column> columns(d);
    std::vector<std::unordered_map<std::string, int32_t>> code_of(d);
    for (size_t j = 0; j < d; ++j) columns[j].kind = schema.feature(j).kind;

    std::vector<AttackLabel> labels;
    std::vector<std::string> row;
    size_t row_no = 0;  // 1-based over data rows
    while (reader.next_row(row)) {
        ++row_no;
        if (row.size() < header.size()) throw DataError(path + ": row " + std::to_string(row_no) + " is short");
        for (size_t j = 0; j < d; ++j) {
            const std::string& tok = row[static_cast<size_t>(src[j])];
            Column& col = columns[j];
            if (col.kind == FeatureKind::Numeric) {
                auto v = parse_double(tok);
                if (!v) throw BadNumericError(row_no, schema.feature(j).name, tok);
                col.num.push_back(*v);
            } else {
                auto it = code_of[j].find(tok);
                int32_t code;
                if (it == code_of[j].end()) {
                    code = static_cast<int32_t>(col.categories.size());
                    col.categories.push_back(tok);
                    code_of[j].emplace(tok, code);
                } else {
                    code = it->second;
                }
                col.codes.push_back(code);
            }
        }
        auto label = parse_label(row[static_cast<size_t>(label_src)]);
        if (!label) throw UnknownLabelError(row_no, row[static_cast<size_t>(label_src)]);
        labels.push_back(*label);
    }
    if (labels.empty()) throw EmptyFileError(path);
    return Dataset(schema, std::move(columns), std::move(labels), path);
}

void write_csv(const Dataset& d, const std::string& path) {
    CsvWriter writer(path);
    std::vector<std::string> row;
    row.reserve(d.width() + 1);
    for (const auto& f : d.schema().features()) row.push_back(f.name);
    row.push_back(d.schema().label_column());
    writer.write_row(row);
    for (size_t i = 0; i < d.n(); ++i) {
        row.clear();
        for (size_t j = 0; j < d.width(); ++j) {
            const Column& c = d.column(j);
            row.push_back(c.kind == FeatureKind::Numeric ? format_double(c.num[i])
                                                         : c.token(i));
        }
        row.push_back(label_name(d.label(i)));
        writer.write_row(row);
    }
}

Dataset filter_labels(const Dataset& d, const LabelSet& excluded) {
    std::vector<size_t> keep;
    keep.reserve(d.n());
    for (size_t i = 0; i < d.n(); ++i)
        if (!excluded.contains(d.label(i))) keep.push_back(i);
    if (keep.empty()) throw AllRecordsExcludedError();
    if (keep.size() == d.n()) return d;
    return d.subset_rows(keep);
}

ClassStats class_stats(const Dataset& d) {
    ClassStats s;
    for (size_t i = 0; i < d.n(); ++i) ++s.counts[label_index(d.label(i))];
    s.total = d.n();
    return s;
}

Dataset relabel_binary(const Dataset& d, const LabelSet& positives) {
    if (positives.empty()) throw DataError("relabel_binary: empty positive set");
    Dataset out = d;
    std::vector<uint8_t> y(d.n());
    for (size_t i = 0; i < d.n(); ++i) y[i] = positives.contains(d.label(i)) ? 1 : 0;
    out.set_binary_labels(std::move(y));
    return out;
}

namespace {

bool column_is_constant(const Column& c, size_t n) {
    if (n <= 1) return true;
    if (c.kind == FeatureKind::Numeric) {
        const double v0 = c.num[0];
        for (size_t i = 1; i < n; ++i)
            if (c.num[i] != v0) return false;
    } else {
        const int32_t v0 = c.codes[0];
        for (size_t i = 1; i < n; ++i)
            if (c.codes[i] != v0) return false;
    }
    return true;
}

}  // namespace

std::pair<Dataset, std::vector<std::string>> drop_constant_features(const Dataset& d) {
    std::vector<size_t> keep;
    std::vector<std::string> dropped;
    for (size_t j = 0; j < d.width(); ++j) {
        if (column_is_constant(d.column(j), d.n()))
            dropped.push_back(d.schema().feature(j).name);
        else
            keep.push_back(j);
    }
    if (keep.empty()) throw AllFeaturesConstantError();
    if (dropped.empty()) return {d, {}};
    return {d.subset_columns(keep), std::move(dropped)};
}

uint64_t dataset_content_hash(const Dataset& d) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_bytes = [&h](const void* data, size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    auto mix_str = [&](const std::string& s) { mix_bytes(s.data(), s.size()); };
    for (const auto& f : d.schema().features()) mix_str(f.name);
    for (size_t j = 0; j < d.width(); ++j) {
        const Column& c = d.column(j);
        if (c.kind == FeatureKind::Numeric) {
            mix_bytes(c.num.data(), c.num.size() * sizeof(double));
        } else {
            for (int32_t code : c.codes) mix_str(c.categories[static_cast<size_t>(code)]);
        }
    }
    for (AttackLabel l : d.labels()) {
        auto idx = label_index(l);
        mix_bytes(&idx, sizeof idx);
    }
    return h;
}

}  // namespace netids
