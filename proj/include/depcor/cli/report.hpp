#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace depcor::cli {

using Json = nlohmann::ordered_json;

/// One JSON document per CLI run.
struct RunReport {
  std::string subcommand;
  Json input = Json::object();
  Json parameters = Json::object();
  Json results = Json::object();
  std::uint64_t seed = 0;
  /// Only recorded with --timing, so reports stay byte-reproducible by default.
  std::optional<double> duration_seconds;
};

Json to_json(const RunReport& r);
RunReport report_from_json(const Json& j);

/// Pretty-printed document followed by a newline.
std::string dump(const RunReport& r);

}  // namespace depcor::cli
