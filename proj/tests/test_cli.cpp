#include "depcor/cli/app.hpp"
#include "depcor/cli/csv.hpp"
#include "depcor/cli/report.hpp"
#include "depcor/cli/svg.hpp"
#include "depcor/datagen.hpp"
#include "depcor/dcov.hpp"
#include "depcor/error.hpp"
#include "depcor/inference.hpp"
#include "depcor/renyi.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace depcor;
using namespace depcor::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("depcor_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

long count_of(const std::string& text, const std::string& needle) {
  long n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

Json results_of(const Outcome& o) { return Json::parse(o.out).at("results"); }

fs::path bump_csv(const std::string& name, Index n, std::uint64_t seed) {
  ModelConfig c;
  c.n = n;
  c.seed = seed;
  std::ostringstream body;
  write_csv(body, gen_bump(c));
  return write_file(name, body.str());
}

}  // namespace

TEST_CASE("csv ingestion examples") {
  std::istringstream two("x,y\n1,2\n3,5\n4,4\n");
  const CsvSample a = parse_csv(two, CsvOptions{});
  CHECK(a.had_header);
  CHECK(a.sample.n() == 3);
  CHECK(a.sample.y()(1, 0) == 5.0);
  CHECK(a.x_names == std::vector<std::string>{"x"});

  std::istringstream four("1,2,3,4\n5,6,7,8\n9,10,11,13\n");
  CsvOptions o;
  o.x_columns = {"1", "2"};
  o.y_columns = {"3", "4"};
  const CsvSample b = parse_csv(four, o);
  CHECK_FALSE(b.had_header);
  CHECK(b.sample.p() == 2);
  CHECK(b.sample.q() == 2);
  CHECK(b.sample.y()(2, 1) == 13.0);

  std::istringstream named("\"a, b\",c\n1,2\n3,4\n");
  CsvOptions byname;
  byname.x_columns = {"c"};
  byname.y_columns = {"a, b"};
  const CsvSample c = parse_csv(named, byname);
  CHECK(c.sample.x()(0, 0) == 2.0);
  CHECK(c.sample.y()(1, 0) == 3.0);
}

TEST_CASE("csv ingestion errors") {
  std::string body = "x,y\n";
  for (int i = 0; i < 5; ++i) body += std::to_string(i) + "," + std::to_string(2 * i) + "\n";
  body += "abc,1\n";  // line 7
  std::istringstream bad(body);
  try {
    parse_csv(bad, CsvOptions{});
    FAIL("expected a data error");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 7") != std::string::npos);
    CHECK(msg.find("abc") != std::string::npos);
  }

  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(parse_csv(ragged, CsvOptions{}), DataError);
  std::istringstream single("x,y\n1,2\n");
  CHECK_THROWS_AS(parse_csv(single, CsvOptions{}), DataError);
  std::istringstream unknown("x,y\n1,2\n3,4\n");
  CsvOptions o;
  o.y_columns = {"z"};
  CHECK_THROWS_AS(parse_csv(unknown, o), DataError);
  std::istringstream range("1,2\n3,4\n");
  o.y_columns = {"3"};
  CHECK_THROWS_AS(parse_csv(range, o), DataError);
  CHECK_THROWS_AS(ingest_csv(scratch_dir() / "missing.csv", CsvOptions{}), DataError);
  CHECK_THROWS_AS(parse_header_mode("maybe"), UsageError);
}

TEST_CASE("csv write and read round-trip exactly") {
  Rng rng(61);
  Matrix x(20, 2), y(20, 1);
  for (Index i = 0; i < 20; ++i) {
    x(i, 0) = rng.normal() * 1e-7;
    x(i, 1) = rng.normal() * 1e9;
    y(i, 0) = rng.uniform();
  }
  const PairedSample s(x, y);
  std::stringstream buf;
  write_csv(buf, s);
  CsvOptions o;
  o.x_columns = {"x1", "x2"};
  o.y_columns = {"y1"};
  const CsvSample back = parse_csv(buf, o);
  CHECK(back.sample.x() == x);
  CHECK(back.sample.y() == y);
}

TEST_CASE("exit codes") {
  const fs::path good = bump_csv("good.csv", 60, 3);
  CHECK(invoke({"pearson", "--in", good.string()}).code == kSuccess);
  CHECK(invoke({"--help"}).code == kSuccess);

  const Outcome missing = invoke({"dcor", "--in", (scratch_dir() / "nope.csv").string()});
  CHECK(missing.code == kDataError);
  CHECK_FALSE(missing.err.empty());
  const fs::path bad = write_file("bad.csv", "x,y\n1,2\nabc,3\n4,5\n");
  CHECK(invoke({"pearson", "--in", bad.string()}).code == kDataError);
  const fs::path flat = write_file("flat.csv", "x,y\n1,2\n2,2\n3,2\n");
  CHECK(invoke({"pearson", "--in", flat.string()}).code == kDataError);

  CHECK(invoke({}).code == kUsageError);
  CHECK(invoke({"frobnicate"}).code == kUsageError);
  CHECK(invoke({"pearson"}).code == kUsageError);
  CHECK(invoke({"renyi-kl", "--in", good.string(), "--K", "0"}).code == kUsageError);
  CHECK(invoke({"permtest", "--in", good.string(), "--stat", "kendall"}).code == kUsageError);
  CHECK(invoke({"power", "--alpha", "1.5", "--nsim", "2"}).code == kUsageError);
  CHECK(invoke({"ace", "--in", good.string(), "--span", "0"}).code == kUsageError);
  CHECK(invoke({"pearson", "--in", good.string(), "--threads", "0"}).code == kUsageError);
}

TEST_CASE("estimator subcommands agree bit-for-bit with the library") {
  const fs::path path = bump_csv("adapter.csv", 120, 5);
  const PairedSample s = ingest_csv(path, CsvOptions{}).sample;
  const auto x = s.x().col(0);
  const auto y = s.y().col(0);

  CHECK(results_of(invoke({"pearson", "--in", path.string()})).at("pearson").get<double>() == pearson(x, y));
  CHECK(results_of(invoke({"spearman", "--in", path.string()})).at("spearman").get<double>() == spearman(x, y));
  CHECK(results_of(invoke({"dcor", "--in", path.string()})).at("dcor").get<double>() == dcor(s));
  CHECK(results_of(invoke({"cca", "--in", path.string()})).at("rho").get<double>() == canonical_correlation(s).rho);
  CHECK(results_of(invoke({"renyi-kl", "--in", path.string(), "--K", "3", "--L", "4"})).at("rho").get<double>() ==
        kl_correlation(s, 3, 4).rho);

  const Json a = results_of(invoke({"ace", "--in", path.string()}));
  const AceResult lib = ace(s);
  CHECK(a.at("r_hat").get<double>() == lib.r_hat);
  CHECK(a.at("iterations").get<int>() == lib.iterations);

  const Json p = results_of(invoke({"permtest", "--in", path.string(), "--stat", "kl", "--b", "99", "--seed", "4"}));
  const PermTestResult t = permutation_test(s, make_statistic("kl"), 99, 4);
  CHECK(p.at("p_value").get<double>() == t.p_value);
  CHECK(p.at("count_ge").get<int>() == t.count_ge);
  CHECK(p.at("observed").get<double>() == t.observed);
}

TEST_CASE("reports echo inputs and parameters") {
  const fs::path path = bump_csv("echo.csv", 50, 6);
  const Json j = Json::parse(invoke({"renyi-kl", "--in", path.string(), "--seed", "11"}).out);
  CHECK(j.at("subcommand") == "renyi-kl");
  CHECK(j.at("seed") == 11);
  CHECK(j.at("input").at("n") == 50);
  CHECK(j.at("input").at("header") == true);
  CHECK(j.at("parameters").at("K") == 5);
  CHECK(j.at("parameters").at("L") == 5);
  CHECK(j.at("parameters").at("normalize") == true);
  CHECK_FALSE(j.contains("duration_seconds"));

  const fs::path report = scratch_dir() / "report.json";
  const Outcome o = invoke({"dcor", "--in", path.string(), "--out", report.string(), "--timing"});
  CHECK(o.code == kSuccess);
  const Json fromfile = Json::parse(read_file(report));
  CHECK(fromfile.contains("duration_seconds"));

  const RunReport r = report_from_json(fromfile);
  CHECK(to_json(r) == fromfile);
  CHECK(dump(report_from_json(Json::parse(dump(r)))) == dump(r));
}

TEST_CASE("simulate then estimate is reproducible") {
  const fs::path a = scratch_dir() / "sim_a.csv";
  const fs::path b = scratch_dir() / "sim_b.csv";
  CHECK(invoke({"simulate", "bump", "--seed", "7", "--out", a.string()}).code == kSuccess);
  CHECK(invoke({"simulate", "bump", "--seed", "7", "--out", b.string()}).code == kSuccess);
  CHECK(read_file(a) == read_file(b));

  ModelConfig c;
  c.seed = 7;
  const PairedSample lib = gen_bump(c);
  const PairedSample back = ingest_csv(a, CsvOptions{}).sample;
  CHECK(back.x() == lib.x());
  CHECK(back.y() == lib.y());

  const Outcome first = invoke({"permtest", "--in", a.string(), "--stat", "ace", "--b", "49", "--seed", "3"});
  const Outcome second = invoke({"permtest", "--in", b.string(), "--stat", "ace", "--b", "49", "--seed", "3"});
  const Outcome wide =
      invoke({"permtest", "--in", b.string(), "--stat", "ace", "--b", "49", "--seed", "3", "--threads", "8"});
  CHECK(first.code == kSuccess);
  CHECK(results_of(first) == results_of(second));
  CHECK(results_of(first) == results_of(wide));
  CHECK(read_file(a) != "");

  for (const char* model : {"gaussian", "independent"}) {
    const fs::path p = scratch_dir() / (std::string(model) + ".csv");
    CHECK(invoke({"simulate", model, "--n", "40", "--out", p.string()}).code == kSuccess);
    CHECK(ingest_csv(p, CsvOptions{}).sample.n() == 40);
  }
}

TEST_CASE("power subcommand") {
  const Outcome o = invoke({"power", "--model", "bump", "--stats", "pearson,dcor", "--n", "40", "--nsim", "6",
                            "--b", "49", "--threads", "3"});
  REQUIRE(o.code == kSuccess);
  const Json j = Json::parse(o.out);
  CHECK(j.at("results").at("cells").size() == 2);
  CHECK(j.at("input").at("model") == "bump");
  const Outcome single = invoke({"power", "--model", "bump", "--stats", "pearson,dcor", "--n", "40", "--nsim", "6",
                                 "--b", "49", "--threads", "1"});
  CHECK(results_of(single) == results_of(o));
}

TEST_CASE("svg rendering") {
  const std::vector<ScatterPanel> panels{{"a<b", "x", "y", {0, 1, 2}, {3, 1, 2}},
                                         {"second", "u", "v", {5, 5, 5}, {1, 2, 3}}};
  const std::string svg = render_scatter_svg(panels);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count_of(svg, "<svg ") == 1);
  CHECK(svg.find("width=\"840.00\"") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(count_of(svg, "<circle") == 6);

  const fs::path data = bump_csv("plot.csv", 80, 8);
  const fs::path out = scratch_dir() / "plot.svg";
  const Outcome o = invoke({"plot", "--in", data.string(), "--svg", out.string(), "--ace"});
  CHECK(o.code == kSuccess);
  const std::string written = read_file(out);
  CHECK(count_of(written, "<circle") == 160);
  CHECK(results_of(o).at("panels") == 2);
}
