#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netids/dataset.hpp"

namespace netids {

// Per-class, per-feature sampling distribution for synthetic datasets.
struct Distribution {
    enum class Kind { Gaussian, Uniform, Categorical };
    Kind kind = Kind::Gaussian;
    double a = 0.0;  // mean or lo
    double b = 1.0;  // stddev or hi
    std::vector<std::pair<std::string, double>> categories;  // token, weight
};

struct SynthClass {
    AttackLabel label = AttackLabel::Normal;
    size_t count = 0;
    std::vector<Distribution> dists;  // aligned to schema features
};

struct SynthSpec {
    FeatureSchema schema;
    std::vector<SynthClass> classes;
};

// Deterministic for a given (spec, seed); class counts are exact and the
// records of each class are consecutive in spec order.
Dataset synthesize(const SynthSpec& spec, uint64_t seed);

// Spec file = sidecar schema lines plus directives:
//   class,<Label>,<count>
//   dist,<Label>,<feature>,gaussian,<mean>,<stddev>
//   dist,<Label>,<feature>,uniform,<lo>,<hi>
//   dist,<Label>,<feature>,categorical,tok:w;tok:w;...
// Features without a dist line default to gaussian(0,1) / a single category.
SynthSpec parse_synth_spec_file(const std::string& path);

}  // namespace netids
