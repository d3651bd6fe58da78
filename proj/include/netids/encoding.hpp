#pragma once

#include <string>
#include <vector>

#include "netids/dataset.hpp"

namespace netids {

// Post-encoding block produced by one source feature: a numeric feature
// maps to a single column, a categorical one to its one-hot block
// (kept categories + "other"). Selection adds or withholds whole groups.
struct ColumnGroup {
    std::string source;
    size_t first_col = 0;
    size_t count = 1;
};

// Fitted on training data only. Unseen categories map to "other"; constant
// numeric features store stddev 1 so standardization never divides by zero.
class EncodingMap {
public:
    struct CategoricalEncoding {
        size_t feature_index = 0;
        std::vector<std::string> kept;  // by frequency desc, ties lexicographic
    };
    struct NumericStats {
        size_t feature_index = 0;
        double mean = 0.0;
        double stddev = 1.0;
    };

    FeatureSchema source_schema;
    std::vector<CategoricalEncoding> categorical;
    std::vector<NumericStats> numeric;
    size_t max_categories = 0;

    size_t encoded_width() const;
    std::vector<ColumnGroup> groups() const;  // in source-schema feature order
};

EncodingMap fit_encoding(const Dataset& train, size_t max_categories);

Dataset apply_encoding(const Dataset& d, const EncodingMap& e, bool standardize);

// Identity grouping for datasets that are already all numeric.
std::vector<ColumnGroup> identity_groups(const FeatureSchema& schema);

}  // namespace netids
