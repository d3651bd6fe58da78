#include "netids/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "netids/errors.hpp"

namespace netids {

size_t EncodingMap::encoded_width() const {
    size_t w = numeric.size();
    for (const auto& c : categorical) w += c.kept.size() + 1;
    return w;
}

std::vector<ColumnGroup> EncodingMap::groups() const {
    std::vector<ColumnGroup> out;
    out.reserve(source_schema.feature_count());
    size_t col = 0;
    size_t num_i = 0, cat_i = 0;
    for (size_t j = 0; j < source_schema.feature_count(); ++j) {
        ColumnGroup g;
        g.source = source_schema.feature(j).name;
        g.first_col = col;
        if (source_schema.feature(j).kind == FeatureKind::Numeric) {
            g.count = 1;
            ++num_i;
        } else {
            g.count = categorical[cat_i].kept.size() + 1;
            ++cat_i;
        }
        col += g.count;
        out.push_back(std::move(g));
    }
    (void)num_i;
    return out;
}

EncodingMap fit_encoding(const Dataset& train, size_t max_categories) {
    if (train.n() == 0) throw DataError("fit_encoding: empty training data");
    if (max_categories < 1) throw DataError("fit_encoding: max_categories must be >= 1");

    EncodingMap e;
    e.source_schema = train.schema();
    e.max_categories = max_categories;
    for (size_t j = 0; j < train.width(); ++j) {
        const Column& col = train.column(j);
        if (col.kind == FeatureKind::Numeric) {
            double sum = 0.0;
            for (double v : col.num) sum += v;
            const double mean = sum / static_cast<double>(col.num.size());
            double ss = 0.0;
            for (double v : col.num) ss += (v - mean) * (v - mean);
            double sd = std::sqrt(ss / static_cast<double>(col.num.size()));
            if (sd == 0.0) sd = 1.0;
            e.numeric.push_back({j, mean, sd});
        } else {
            std::vector<uint64_t> freq(col.categories.size(), 0);
            for (int32_t code : col.codes) ++freq[static_cast<size_t>(code)];
            std::vector<size_t> order(col.categories.size());
            for (size_t k = 0; k < order.size(); ++k) order[k] = k;
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                if (freq[a] != freq[b]) return freq[a] > freq[b];
                return col.categories[a] < col.categories[b];
            });
            EncodingMap::CategoricalEncoding ce;
            ce.feature_index = j;
            const size_t keep = std::min(max_categories, order.size());
            for (size_t k = 0; k < keep; ++k) ce.kept.push_back(col.categories[order[k]]);
            e.categorical.push_back(std::move(ce));
        }
    }
    return e;
}

Dataset apply_encoding(const Dataset& d, const EncodingMap& e, bool standardize) {
    if (!(d.schema() == e.source_schema))
        throw SchemaMismatchError("dataset schema differs from the encoding's source schema");

    const size_t n = d.n();
    std::vector<FeatureSpec> out_features;
    std::vector<Column> out_cols;
    out_features.reserve(e.encoded_width());
    out_cols.reserve(e.encoded_width());

    size_t num_i = 0, cat_i = 0;
    for (size_t j = 0; j < d.width(); ++j) {
        const Column& col = d.column(j);
        const std::string& name = d.schema().feature(j).name;
        if (col.kind == FeatureKind::Numeric) {
            const auto& stats = e.numeric[num_i++];
            Column oc;
            oc.kind = FeatureKind::Numeric;
            if (standardize) {
                oc.num.reserve(n);
                for (double v : col.num) oc.num.push_back((v - stats.mean) / stats.stddev);
            } else {
                oc.num = col.num;
            }
            out_features.push_back({name, FeatureKind::Numeric});
            out_cols.push_back(std::move(oc));
        } else {
            const auto& ce = e.categorical[cat_i++];
            std::unordered_map<std::string, size_t> slot;
            for (size_t k = 0; k < ce.kept.size(); ++k) slot.emplace(ce.kept[k], k);
            const size_t block = ce.kept.size() + 1;  // + other
            std::vector<Column> hot(block);
            for (auto& h : hot) {
                h.kind = FeatureKind::Numeric;
                h.num.assign(n, 0.0);
            }
            for (size_t i = 0; i < n; ++i) {
                const std::string& tok = col.token(i);
                auto it = slot.find(tok);
                const size_t k = it == slot.end() ? block - 1 : it->second;
                hot[k].num[i] = 1.0;
            }
            for (size_t k = 0; k < ce.kept.size(); ++k) {
                out_features.push_back({name + "=" + ce.kept[k], FeatureKind::Numeric});
                out_cols.push_back(std::move(hot[k]));
            }
            out_features.push_back({name + "=other", FeatureKind::Numeric});
            out_cols.push_back(std::move(hot[block - 1]));
        }
    }

    FeatureSchema out_schema(std::move(out_features), d.schema().label_column(),
                             d.schema().id_column(), d.schema().ignored_columns());
    Dataset out(std::move(out_schema), std::move(out_cols), d.labels(), d.provenance());
    if (d.has_binary_labels()) out.set_binary_labels(d.binary_labels());
    return out;
}

std::vector<ColumnGroup> identity_groups(const FeatureSchema& schema) {
    std::vector<ColumnGroup> out;
    out.reserve(schema.feature_count());
    for (size_t j = 0; j < schema.feature_count(); ++j)
        out.push_back({schema.feature(j).name, j, 1});
    return out;
}

}  // namespace netids
