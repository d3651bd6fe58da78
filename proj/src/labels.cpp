#include "netids/labels.hpp"

#include <algorithm>
#include <cctype>

namespace netids {

const std::array<AttackLabel, kLabelCount>& all_labels() {
    static const std::array<AttackLabel, kLabelCount> labels = {
        AttackLabel::Normal,         AttackLabel::Generic,  AttackLabel::Exploits,
        AttackLabel::Fuzzers,        AttackLabel::DoS,      AttackLabel::Reconnaissance,
        AttackLabel::Analysis,       AttackLabel::Backdoor, AttackLabel::Shellcode,
        AttackLabel::Worm,
    };
    return labels;
}

std::vector<AttackLabel> attack_labels(bool include_fuzzers) {
    std::vector<AttackLabel> out;
    for (AttackLabel l : all_labels()) {
        if (l == AttackLabel::Normal) continue;
        if (l == AttackLabel::Fuzzers && !include_fuzzers) continue;
        out.push_back(l);
    }
    return out;
}

const std::string& label_name(AttackLabel l) {
    static const std::array<std::string, kLabelCount> names = {
        "Normal",   "Generic",  "Exploits",  "Fuzzers",   "DoS",
        "Reconnaissance", "Analysis", "Backdoor", "Shellcode", "Worm",
    };
    return names[label_index(l)];
}

std::optional<AttackLabel> parse_label(const std::string& token) {
    std::string t;
    t.reserve(token.size());
    for (char c : token) {
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (t.empty() || t == "normal") return AttackLabel::Normal;
    if (t == "generic") return AttackLabel::Generic;
    if (t == "exploits" || t == "exploit") return AttackLabel::Exploits;
    if (t == "fuzzers" || t == "fuzzer") return AttackLabel::Fuzzers;
    if (t == "dos") return AttackLabel::DoS;
    if (t == "reconnaissance" || t == "recon") return AttackLabel::Reconnaissance;
    if (t == "analysis") return AttackLabel::Analysis;
    if (t == "backdoor" || t == "backdoors") return AttackLabel::Backdoor;
    if (t == "shellcode") return AttackLabel::Shellcode;
    if (t == "worm" || t == "worms") return AttackLabel::Worm;
    return std::nullopt;
}

}  // namespace netids
