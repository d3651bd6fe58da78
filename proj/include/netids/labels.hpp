#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netids {

// Attack taxonomy. Enum order is the canonical stage-ordering key:
// descending training-set sample count, which is also how cascade stages
// are ordered by default. Fuzzers is loadable but excluded by default.
enum class AttackLabel : uint8_t {
    Normal = 0,
    Generic,
    Exploits,
    Fuzzers,
    DoS,
    Reconnaissance,
    Analysis,
    Backdoor,
    Shellcode,
    Worm,
};

constexpr size_t kLabelCount = 10;

const std::array<AttackLabel, kLabelCount>& all_labels();

// The nine attack labels (everything but Normal), in canonical order.
std::vector<AttackLabel> attack_labels(bool include_fuzzers = true);

const std::string& label_name(AttackLabel l);

// Case-insensitive, trims whitespace, accepts common dataset spellings
// ("Worms", "Backdoors", "Fuzzer"). Empty token means Normal.
std::optional<AttackLabel> parse_label(const std::string& token);

inline size_t label_index(AttackLabel l) { return static_cast<size_t>(l); }

}  // namespace netids
