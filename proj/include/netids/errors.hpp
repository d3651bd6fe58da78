#pragma once

#include <stdexcept>
#include <string>

namespace netids {

// Base for all library errors. Subcommands map these to exit code 2
// (data/input) or 3 (training).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : Error {
    using Error::Error;
};
struct TrainError : Error {
    using Error::Error;
};

// dataset
struct MissingColumnError : DataError {
    explicit MissingColumnError(const std::string& name)
        : DataError("missing column: " + name) {}
};
struct BadNumericError : DataError {
    BadNumericError(size_t row, const std::string& column, const std::string& token)
        : DataError("row " + std::to_string(row) + ", column '" + column +
                    "': not a finite number: '" + token + "'") {}
};
struct UnknownLabelError : DataError {
    UnknownLabelError(size_t row, const std::string& token)
        : DataError("row " + std::to_string(row) + ": unknown label '" + token + "'") {}
};
struct EmptyFileError : DataError {
    explicit EmptyFileError(const std::string& path)
        : DataError("no data rows in " + path) {}
};
struct AllRecordsExcludedError : DataError {
    AllRecordsExcludedError() : DataError("all records excluded by label filter") {}
};
struct AllFeaturesConstantError : DataError {
    AllFeaturesConstantError() : DataError("every feature is constant; nothing left to drop to") {}
};
struct SchemaMismatchError : DataError {
    explicit SchemaMismatchError(const std::string& detail)
        : DataError("schema mismatch: " + detail) {}
};

// learners
struct NotEncodedError : TrainError {
    NotEncodedError() : TrainError("dataset has categorical features; encode it first") {}
};
struct NotBinaryError : TrainError {
    NotBinaryError() : TrainError("dataset has no binary labels; relabel it first") {}
};
struct DivergedError : TrainError {
    explicit DivergedError(int epoch)
        : TrainError("training diverged (non-finite loss at epoch " + std::to_string(epoch) + ")") {}
};
struct EmptyPartitionError : TrainError {
    EmptyPartitionError() : TrainError("impurity of an empty partition") {}
};
struct WidthMismatchError : DataError {
    WidthMismatchError(size_t expected, size_t got)
        : DataError("record width " + std::to_string(got) + " does not match model width " +
                     std::to_string(expected)) {}
};

// model files
struct CorruptModelError : DataError {
    explicit CorruptModelError(const std::string& detail)
        : DataError("corrupt model file: " + detail) {}
};
struct VersionMismatchError : DataError {
    explicit VersionMismatchError(uint32_t version)
        : DataError("model format version " + std::to_string(version) +
                     " is newer than this build supports") {}
};

// metrics
struct NoNegativesError : DataError {
    NoNegativesError() : DataError("no negative samples (tn+fp = 0)") {}
};
struct NoPositivesError : DataError {
    NoPositivesError() : DataError("no positive samples (fn+tp = 0)") {}
};
struct EmptyEvaluationError : DataError {
    EmptyEvaluationError() : DataError("empty evaluation (no samples)") {}
};
struct NoSourceRecordsError : DataError {
    explicit NoSourceRecordsError(const std::string& label)
        : DataError("no records of source class " + label) {}
};
struct TaxonomyMismatchError : DataError {
    explicit TaxonomyMismatchError(const std::string& detail)
        : DataError("reports cover different label sets: " + detail) {}
};

// feature selection
struct EmptyFeaturePoolError : DataError {
    EmptyFeaturePoolError() : DataError("no candidate features to select from") {}
};
struct CriterionUnavailableError : DataError {
    explicit CriterionUnavailableError(const std::string& label)
        : DataError("criterion needs label '" + label + "' which is absent from the evaluation split") {}
};

// categorization
struct MissingClassError : DataError {
    explicit MissingClassError(const std::string& label)
        : DataError("training data lacks required class " + label) {}
};
struct StageEmptyError : DataError {
    explicit StageEmptyError(const std::string& stage)
        : DataError("stage " + stage + " has no training records") {}
};
struct CascadeSpecError : DataError {
    explicit CascadeSpecError(const std::string& detail)
        : DataError("invalid cascade spec: " + detail) {}
};

}  // namespace netids
