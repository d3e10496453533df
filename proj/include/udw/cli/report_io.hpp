#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "udw/harvesting.hpp"

namespace udw::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSpecVersion = 1;

/// 17 significant digits; the same double always prints the same bytes.
std::string format_real(double x);

/// Compact-per-leaf, two-space indented JSON with format_real for every float.
std::string dump_json(const Json& j);

Json element_to_json(const IntegralResult& r);
Json report_to_json(const HarvestReport& report, const HarvestScenario& scenario);

/// Problems found in a harvest document (empty when it conforms to schema version 1).
std::vector<std::string> validate_harvest_document(const Json& doc);

/// Writes `content` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& content);

/// One CSV row from already formatted cells.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace udw::cli
