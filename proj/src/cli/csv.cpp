#include "depcor/cli/csv.hpp"

#include "depcor/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace depcor::cli {

namespace {

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<Record> read_records(std::istream& in) {
  std::vector<Record> records;
  std::size_t line = 1;
  Record current;
  current.line = line;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool record_has_content = false;

  auto finish_record = [&] {
    if (record_has_content || field_started || !field.empty()) {
      current.fields.push_back(field);
      records.push_back(std::move(current));
    }
    current = Record{};
    field.clear();
    field_started = false;
    record_has_content = false;
  };

  char ch;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        current.fields.push_back(field);
        field.clear();
        field_started = false;
        record_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        finish_record();
        ++line;
        current.line = line;
        break;
      default:
        field.push_back(ch);
        if (ch != ' ' && ch != '\t') field_started = true;
    }
  }
  if (in_quotes) throw DataError("row " + std::to_string(current.line) + ": unterminated quoted field");
  finish_record();
  return records;
}

std::optional<double> parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& selectors,
                                         const std::vector<std::string>& header, std::size_t width,
                                         const char* block) {
  if (selectors.empty()) throw UsageError(std::string("no ") + block + " columns selected");
  std::vector<std::size_t> out;
  for (const auto& raw : selectors) {
    const std::string sel = trim(raw);
    if (all_digits(sel)) {
      const auto idx = std::stoul(sel);
      if (idx < 1 || idx > width) {
        throw DataError(std::string(block) + " column " + sel + " out of range (file has " + std::to_string(width) +
                        " columns)");
      }
      out.push_back(idx - 1);
      continue;
    }
    if (header.empty()) {
      throw UsageError(std::string(block) + " column '" + sel + "' given by name but the file has no header");
    }
    const auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) { return trim(h) == sel; });
    if (it == header.end()) throw DataError(std::string(block) + " column '" + sel + "' not found in header");
    out.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return out;
}

}  // namespace

HeaderMode parse_header_mode(const std::string& text) {
  if (text == "auto") return HeaderMode::automatic;
  if (text == "yes") return HeaderMode::yes;
  if (text == "no") return HeaderMode::no;
  throw UsageError("header mode must be auto, yes or no");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

CsvSample parse_csv(std::istream& in, const CsvOptions& opts) {
  std::vector<Record> records = read_records(in);
  if (records.empty()) throw DataError("input has no rows");

  bool has_header = opts.header == HeaderMode::yes;
  if (opts.header == HeaderMode::automatic) {
    has_header = std::any_of(records.front().fields.begin(), records.front().fields.end(),
                             [](const std::string& f) { return !parse_number(f).has_value(); });
  }
  std::vector<std::string> header;
  if (has_header) {
    header = records.front().fields;
    records.erase(records.begin());
  }

  const std::size_t width = has_header ? header.size() : (records.empty() ? 0 : records.front().fields.size());
  for (const auto& r : records) {
    if (r.fields.size() != width) {
      throw DataError("row " + std::to_string(r.line) + ": expected " + std::to_string(width) + " fields, found " +
                      std::to_string(r.fields.size()));
    }
  }
  if (records.size() < 2) {
    throw DataError("need at least 2 data rows, found " + std::to_string(records.size()));
  }

  const auto xcols = resolve_columns(opts.x_columns, header, width, "x");
  const auto ycols = resolve_columns(opts.y_columns, header, width, "y");

  const auto n = static_cast<Index>(records.size());
  Matrix x(n, static_cast<Index>(xcols.size()));
  Matrix y(n, static_cast<Index>(ycols.size()));
  auto fill = [&](Matrix& m, const std::vector<std::size_t>& cols) {
    for (Index i = 0; i < n; ++i) {
      const Record& r = records[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const std::string& cell = r.fields[cols[j]];
        const auto v = parse_number(cell);
        if (!v) {
          throw DataError("row " + std::to_string(r.line) + ", column " + std::to_string(cols[j] + 1) +
                          ": cannot parse '" + cell + "' as a number");
        }
        if (!std::isfinite(*v)) {
          throw DataError("row " + std::to_string(r.line) + ", column " + std::to_string(cols[j] + 1) +
                          ": non-finite value");
        }
        m(i, static_cast<Index>(j)) = *v;
      }
    }
  };
  fill(x, xcols);
  fill(y, ycols);

  auto names = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::string> out;
    for (auto c : cols) out.push_back(has_header ? trim(header[c]) : "#" + std::to_string(c + 1));
    return out;
  };
  return CsvSample{PairedSample(std::move(x), std::move(y)), has_header, names(xcols), names(ycols)};
}

CsvSample ingest_csv(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path.string() + "'");
  return parse_csv(in, opts);
}

namespace {

void write_number(std::ostream& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

}  // namespace

void write_csv(std::ostream& out, const PairedSample& s) {
  if (s.is_univariate()) {
    out << "x,y\n";
  } else {
    for (Index j = 0; j < s.p(); ++j) out << (j ? "," : "") << 'x' << j + 1;
    for (Index j = 0; j < s.q(); ++j) out << ",y" << j + 1;
    out << '\n';
  }
  for (Index i = 0; i < s.n(); ++i) {
    for (Index j = 0; j < s.p(); ++j) {
      if (j) out << ',';
      write_number(out, s.x()(i, j));
    }
    for (Index j = 0; j < s.q(); ++j) {
      out << ',';
      write_number(out, s.y()(i, j));
    }
    out << '\n';
  }
}

}  // namespace depcor::cli
