#include "depcor/cli/report.hpp"

namespace depcor::cli {

Json to_json(const RunReport& r) {
  Json j;
  j["subcommand"] = r.subcommand;
  j["seed"] = r.seed;
  j["input"] = r.input;
  j["parameters"] = r.parameters;
  j["results"] = r.results;
  if (r.duration_seconds) j["duration_seconds"] = *r.duration_seconds;
  return j;
}

RunReport report_from_json(const Json& j) {
  RunReport r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.input = j.at("input");
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  if (j.contains("duration_seconds")) r.duration_seconds = j.at("duration_seconds").get<double>();
  return r;
}

std::string dump(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace depcor::cli
