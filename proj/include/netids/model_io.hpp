#pragma once

#include <string>
#include <string_view>

#include "netids/learners.hpp"

namespace netids {

// Versioned binary model container. Doubles are stored as raw IEEE-754
// bytes, so a loaded model scores bit-identically to the one saved.
inline constexpr char kModelMagic[8] = {'N', 'I', 'D', 'S', 'M', 'D', 'L', '\n'};
inline constexpr uint32_t kModelFormatVersion = 1;

struct ModelFile {
    ClassifierModel model;
    uint64_t schema_fingerprint = 0;
};

std::string serialize_model(const ClassifierModel& m, uint64_t schema_fingerprint);
ModelFile deserialize_model(std::string_view bytes);

void save_model(const ClassifierModel& m, uint64_t schema_fingerprint, const std::string& path);
ModelFile load_model(const std::string& path);

// FNV-1a over the encoded column names; stored in model files so a model
// is never silently applied to a differently-encoded dataset.
uint64_t schema_fingerprint(const FeatureSchema& schema);

// Hash of the serialized bytes; used by determinism checks.
uint64_t model_hash(const ClassifierModel& m);

}  // namespace netids
