#pragma once

#include "depcor/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace depcor::cli {

enum class HeaderMode { automatic, yes, no };

HeaderMode parse_header_mode(const std::string& text);

struct CsvOptions {
  HeaderMode header = HeaderMode::automatic;
  /// Column selectors: 1-based indices or header names.
  std::vector<std::string> x_columns{"1"};
  std::vector<std::string> y_columns{"2"};
};

struct CsvSample {
  PairedSample sample;
  bool had_header = false;
  std::vector<std::string> x_names;  ///< resolved column names (or "#k" without a header)
  std::vector<std::string> y_names;
};

/// Reads a comma-separated file into a paired sample.
///
/// Fields follow RFC 4180 quoting; blank lines are skipped. Error messages
/// name rows by their 1-based line number in the file. In automatic mode the
/// first row is a header iff some field in it is not a number.
CsvSample ingest_csv(const std::filesystem::path& path, const CsvOptions& opts);
CsvSample parse_csv(std::istream& in, const CsvOptions& opts);

/// Header "x,y" for univariate samples, otherwise x1..xp,y1..yq. Values use
/// the shortest representation that round-trips.
void write_csv(std::ostream& out, const PairedSample& s);

/// Splits "1,2" into {"1","2"}.
std::vector<std::string> split_list(const std::string& text);

}  // namespace depcor::cli
