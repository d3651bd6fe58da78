#pragma once

#include <string>

#include <json.hpp>

#include "netids/cascade.hpp"
#include "netids/metrics.hpp"
#include "netids/selection.hpp"

namespace netids {

using json = nlohmann::ordered_json;

json to_json(const MetricsReport& r);
std::string to_text(const MetricsReport& r);

json to_json(const CategorizationReport& r);
std::string to_text(const CategorizationReport& r);
CategorizationReport categorization_report_from_json(const json& j);

json to_json(const StrategyComparison& c);
std::string to_text(const StrategyComparison& c);

json to_json(const SelectionTrace& t);
void write_trace_csv(const SelectionTrace& t, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

json class_stats_json(const ClassStats& s);
std::string class_stats_text(const ClassStats& s, const std::string& title);

void write_text_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

uint64_t file_fnv1a(const std::string& path);

// Fixed-point with 2 decimals, the table convention throughout.
std::string pct(double v);

}  // namespace netids
