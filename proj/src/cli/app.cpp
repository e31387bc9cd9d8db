#include "depcor/cli/app.hpp"

#include "depcor/cli/csv.hpp"
#include "depcor/cli/report.hpp"
#include "depcor/cli/svg.hpp"
#include "depcor/core.hpp"
#include "depcor/datagen.hpp"
#include "depcor/dcov.hpp"
#include "depcor/error.hpp"
#include "depcor/inference.hpp"
#include "depcor/renyi.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace depcor::cli {

namespace {

struct DataArgs {
  std::string in;
  std::string x = "1";
  std::string y = "2";
  std::string header = "auto";
};

struct CommonArgs {
  std::string out;
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = false;
};

struct EstimatorArgs {
  int k = 5;
  int l = 5;
  int start_index = 1;
  bool no_normalize = false;
  bool no_standardize = false;
  double ridge = 0.0;
  double rank_tol = 1e-10;
  double span = 0.1;
  int max_iterations = 100;
  double tolerance = 1e-6;
};

struct ModelArgs {
  std::string model = "bump";
  double beta1 = 1.5;
  double beta2 = 0.5;
  double beta3 = 0.5;
  std::optional<double> noise_sd;
  std::string x_law = "uniform:0,1";
  std::string y_law = "normal:0,1";
  double rho = 0.5;
};

struct Args {
  DataArgs data;
  CommonArgs common;
  EstimatorArgs est;
  ModelArgs model;
  std::string stat = "dcov2";
  std::string stats = "pearson,spearman,dcor,ace,kl";
  int b = 999;
  Index n = 500;
  Index power_n = 100;
  double alpha = 0.05;
  int nsim = 200;
  std::string svg;
  bool with_ace = false;
};

Json to_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

void add_data_options(CLI::App* sub, DataArgs& d) {
  sub->add_option("--in", d.in, "Input CSV file")->required();
  sub->add_option("--x", d.x, "x columns: 1-based indices or header names, comma separated")->capture_default_str();
  sub->add_option("--y", d.y, "y columns: 1-based indices or header names, comma separated")->capture_default_str();
  sub->add_option("--header", d.header, "Header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}))
      ->capture_default_str();
}

void add_common_options(CLI::App* sub, CommonArgs& c, bool out_is_report = true) {
  if (out_is_report) sub->add_option("--out", c.out, "Write the JSON report to this file instead of stdout");
  sub->add_option("--seed", c.seed, "Seed for all randomness")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  sub->add_flag("--timing", c.timing, "Record wall-clock duration in the report");
}

void add_cca_options(CLI::App* sub, EstimatorArgs& e) {
  sub->add_option("--ridge", e.ridge, "Ridge added to both covariance blocks")->capture_default_str();
  sub->add_option("--rank-tol", e.rank_tol, "Relative eigenvalue cutoff for rank truncation")->capture_default_str();
}

void add_kl_options(CLI::App* sub, EstimatorArgs& e) {
  sub->add_option("--K", e.k, "Number of basis functions for x")->capture_default_str();
  sub->add_option("--L", e.l, "Number of basis functions for y")->capture_default_str();
  sub->add_option("--start-index", e.start_index, "First Hermite index")->capture_default_str();
  sub->add_flag("--no-normalize", e.no_normalize, "Skip the L2 normalization constants");
  sub->add_flag("--no-standardize", e.no_standardize, "Do not standardize inputs before the basis");
  add_cca_options(sub, e);
}

void add_ace_options(CLI::App* sub, EstimatorArgs& e) {
  sub->add_option("--span", e.span, "Smoother window as a fraction of n")->capture_default_str();
  sub->add_option("--max-iter", e.max_iterations, "Maximum ACE iterations")->capture_default_str();
  sub->add_option("--tol", e.tolerance, "Convergence tolerance on r_hat")->capture_default_str();
}

void add_model_options(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--beta1", m.beta1, "Bump model beta1")->capture_default_str();
  sub->add_option("--beta2", m.beta2, "Bump model beta2")->capture_default_str();
  sub->add_option("--beta3", m.beta3, "Bump model beta3")->capture_default_str();
  sub->add_option("--noise-sd", m.noise_sd, "Noise standard deviation (default 0.02*beta1/beta2)");
  sub->add_option("--x-law", m.x_law, "x law: uniform:a,b or normal:mu,sigma")->capture_default_str();
  sub->add_option("--y-law", m.y_law, "y law for the independent model")->capture_default_str();
  sub->add_option("--rho", m.rho, "Correlation of the gaussian model")->capture_default_str();
}

KlOptions kl_options(const EstimatorArgs& e) {
  KlOptions o;
  o.start_index = e.start_index;
  o.normalize = !e.no_normalize;
  o.standardize_input = !e.no_standardize;
  o.cca.ridge = e.ridge;
  o.cca.rank_tol = e.rank_tol;
  return o;
}

AceOptions ace_options(const EstimatorArgs& e) {
  AceOptions o;
  o.span = e.span;
  o.max_iterations = e.max_iterations;
  o.tolerance = e.tolerance;
  o.validate();
  return o;
}

CcaOptions cca_options(const EstimatorArgs& e) { return {e.ridge, e.rank_tol}; }

StatisticOptions statistic_options(const EstimatorArgs& e) {
  if (e.k < 1 || e.l < 1) throw UsageError("--K and --L must be >= 1");
  StatisticOptions o;
  o.k = e.k;
  o.l = e.l;
  o.kl = kl_options(e);
  o.ace = ace_options(e);
  o.cca = cca_options(e);
  return o;
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) into[key] = value;
}

Json kl_params(const EstimatorArgs& e) {
  return {{"K", e.k},
          {"L", e.l},
          {"start_index", e.start_index},
          {"normalize", !e.no_normalize},
          {"standardize_input", !e.no_standardize},
          {"ridge", e.ridge},
          {"rank_tol", e.rank_tol}};
}

Json ace_params(const EstimatorArgs& e) {
  return {{"span", e.span}, {"max_iterations", e.max_iterations}, {"tolerance", e.tolerance}};
}

Json estimator_params(const EstimatorArgs& e) {
  Json j = kl_params(e);
  merge(j, ace_params(e));
  return j;
}

ModelConfig model_config(const ModelArgs& m, Index n, std::uint64_t seed) {
  ModelConfig c;
  c.beta1 = m.beta1;
  c.beta2 = m.beta2;
  c.beta3 = m.beta3;
  if (m.beta2 == 0.0) throw UsageError("--beta2 must be nonzero");
  c.noise_sd = m.noise_sd ? *m.noise_sd : default_noise_sd(m.beta1, m.beta2);
  c.x_law = Law::parse(m.x_law);
  c.n = n;
  c.seed = seed;
  c.validate();
  return c;
}

Json model_params(const ModelArgs& m) {
  Json j{{"model", m.model}};
  if (m.model == "bump") {
    j["beta1"] = m.beta1;
    j["beta2"] = m.beta2;
    j["beta3"] = m.beta3;
    j["noise_sd"] = m.noise_sd ? *m.noise_sd : default_noise_sd(m.beta1, m.beta2);
    j["x_law"] = Law::parse(m.x_law).to_string();
  } else if (m.model == "gaussian") {
    j["rho"] = m.rho;
  } else {
    j["x_law"] = Law::parse(m.x_law).to_string();
    j["y_law"] = Law::parse(m.y_law).to_string();
  }
  return j;
}

Generator make_generator(const ModelArgs& m) {
  if (m.model == "bump") return bump_generator(model_config(m, 2, 0));
  if (m.model == "gaussian") return gaussian_generator(m.rho);
  return independent_generator(Law::parse(m.x_law), Law::parse(m.y_law));
}

struct Loaded {
  PairedSample sample;
  Json descriptor;
};

Loaded load(const DataArgs& d) {
  CsvOptions o;
  o.header = parse_header_mode(d.header);
  o.x_columns = split_list(d.x);
  o.y_columns = split_list(d.y);
  CsvSample c = ingest_csv(d.in, o);
  Json desc{{"path", d.in},
            {"header", c.had_header},
            {"x_columns", c.x_names},
            {"y_columns", c.y_names},
            {"n", c.sample.n()},
            {"p", c.sample.p()},
            {"q", c.sample.q()}};
  return {std::move(c.sample), std::move(desc)};
}

Json data_params(const DataArgs& d) { return {{"x", d.x}, {"y", d.y}, {"header", d.header}}; }

void require_univariate(const PairedSample& s, const std::string& what) {
  if (!s.is_univariate()) throw UsageError(what + " requires exactly one x column and one y column");
}

RunReport run_pearson_like(const Args& a, const std::string& which) {
  Loaded l = load(a.data);
  require_univariate(l.sample, which);
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  const auto x = l.sample.x().col(0);
  const auto y = l.sample.y().col(0);
  r.results[which] = which == "pearson" ? pearson(x, y) : spearman(x, y);
  return r;
}

RunReport run_dcor(const Args& a) {
  Loaded l = load(a.data);
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  r.results["dcor"] = dcor(l.sample);
  r.results["dcov2"] = dcov2(l.sample);
  r.results["dcov2_xx"] = dcov2(PairedSample(l.sample.x(), l.sample.x()));
  r.results["dcov2_yy"] = dcov2(PairedSample(l.sample.y(), l.sample.y()));
  return r;
}

RunReport run_cca(const Args& a) {
  Loaded l = load(a.data);
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  r.parameters["ridge"] = a.est.ridge;
  r.parameters["rank_tol"] = a.est.rank_tol;
  const CcaResult c = canonical_correlation(l.sample, cca_options(a.est));
  r.results = {{"rho", c.rho},
               {"alpha", to_json(c.alpha)},
               {"beta", to_json(c.beta)},
               {"effective_rank_x", c.effective_rank_x},
               {"effective_rank_y", c.effective_rank_y}};
  return r;
}

RunReport run_kl(const Args& a) {
  if (a.est.k < 1 || a.est.l < 1) throw UsageError("--K and --L must be >= 1");
  Loaded l = load(a.data);
  require_univariate(l.sample, "renyi-kl");
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  merge(r.parameters, kl_params(a.est));
  const KlResult k = kl_correlation(l.sample, a.est.k, a.est.l, kl_options(a.est));
  r.results = {{"rho", k.rho},
               {"K", k.k},
               {"L", k.l},
               {"alpha", to_json(k.alpha)},
               {"beta", to_json(k.beta)},
               {"effective_rank_x", k.effective_rank_x},
               {"effective_rank_y", k.effective_rank_y}};
  return r;
}

Json ace_results(const AceResult& res) {
  return {{"r_hat", res.r_hat},
          {"iterations", res.iterations},
          {"converged", res.converged},
          {"history", res.history},
          {"fx", to_json(res.fx)},
          {"gy", to_json(res.gy)}};
}

RunReport run_ace(const Args& a) {
  const AceOptions opts = ace_options(a.est);
  Loaded l = load(a.data);
  require_univariate(l.sample, "ace");
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  merge(r.parameters, ace_params(a.est));
  r.results = ace_results(ace(l.sample, opts));
  return r;
}

RunReport run_permtest(const Args& a) {
  if (a.b < 1) throw UsageError("--b must be >= 1");
  const Statistic stat = make_statistic(a.stat, statistic_options(a.est));
  Loaded l = load(a.data);
  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  r.parameters["stat"] = a.stat;
  r.parameters["b"] = a.b;
  r.parameters["threads"] = a.common.threads;
  merge(r.parameters, estimator_params(a.est));
  const PermTestResult t = permutation_test(l.sample, stat, a.b, a.common.seed, a.common.threads);
  r.results = {{"statistic", t.statistic_name},
               {"observed", t.observed},
               {"b", t.b},
               {"count_ge", t.count_ge},
               {"p_value", t.p_value}};
  return r;
}

RunReport run_power(const Args& a) {
  PowerOptions po;
  po.n = a.power_n;
  po.alpha = a.alpha;
  po.nsim = a.nsim;
  po.b = a.b;
  po.seed = a.common.seed;
  po.threads = a.common.threads;
  po.validate();
  const StatisticOptions so = statistic_options(a.est);
  std::vector<Statistic> stats;
  for (const auto& name : split_list(a.stats)) stats.push_back(make_statistic(name, so));
  const Generator gen = make_generator(a.model);

  RunReport r;
  r.input = model_params(a.model);
  r.parameters = {{"stats", a.stats}, {"n", a.power_n},   {"alpha", a.alpha},
                  {"nsim", a.nsim},   {"b", a.b},   {"threads", a.common.threads}};
  merge(r.parameters, estimator_params(a.est));
  const PowerTable table = power_study(std::span(&gen, 1), stats, po);
  Json cells = Json::array();
  for (const auto& c : table.cells) {
    cells.push_back({{"statistic", c.statistic},
                     {"alternative", c.alternative},
                     {"rejections", c.rejections},
                     {"rate", c.rate}});
  }
  r.results = {{"n", table.n}, {"alpha", table.alpha}, {"nsim", table.nsim}, {"b", table.b}, {"cells", cells}};
  return r;
}

RunReport run_simulate(const Args& a) {
  if (a.common.out.empty()) throw UsageError("simulate needs --out for the CSV file");
  if (a.n < 2) throw UsageError("--n must be >= 2");
  std::optional<PairedSample> s;
  if (a.model.model == "bump") {
    s = gen_bump(model_config(a.model, a.n, a.common.seed));
  } else if (a.model.model == "gaussian") {
    s = gen_gaussian(a.n, a.model.rho, a.common.seed);
  } else {
    s = gen_independent(a.n, Law::parse(a.model.x_law), Law::parse(a.model.y_law), a.common.seed);
  }
  std::ofstream file(a.common.out, std::ios::binary);
  if (!file) throw DataError("cannot write '" + a.common.out + "'");
  write_csv(file, *s);
  if (!file) throw DataError("failed writing '" + a.common.out + "'");

  RunReport r;
  r.input = model_params(a.model);
  r.parameters = {{"n", a.n}};
  r.results = {{"path", a.common.out}, {"n", s->n()}, {"p", s->p()}, {"q", s->q()}};
  return r;
}

RunReport run_plot(const Args& a) {
  if (a.svg.empty()) throw UsageError("plot needs --svg");
  Loaded l = load(a.data);
  require_univariate(l.sample, "plot");
  const Vector x = l.sample.x().col(0);
  const Vector y = l.sample.y().col(0);
  std::vector<ScatterPanel> panels;
  panels.push_back({"data", "x", "y", {x.data(), x.data() + x.size()}, {y.data(), y.data() + y.size()}});

  RunReport r;
  r.input = l.descriptor;
  r.parameters = data_params(a.data);
  r.parameters["svg"] = a.svg;
  r.parameters["ace"] = a.with_ace;
  if (a.with_ace) {
    merge(r.parameters, ace_params(a.est));
    const AceResult res = ace(l.sample, ace_options(a.est));
    panels.push_back({"ACE transformations", "f(x)", "g(y)",
                      {res.fx.data(), res.fx.data() + res.fx.size()},
                      {res.gy.data(), res.gy.data() + res.gy.size()}});
    r.results["r_hat"] = res.r_hat;
    r.results["iterations"] = res.iterations;
    r.results["converged"] = res.converged;
  }
  std::ofstream file(a.svg, std::ios::binary);
  if (!file) throw DataError("cannot write '" + a.svg + "'");
  file << render_scatter_svg(panels);
  r.results["svg"] = a.svg;
  r.results["panels"] = panels.size();
  r.results["points_per_panel"] = l.sample.n();
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"depcor: dependence measures, permutation tests and power studies"};
  app.require_subcommand(1);
  app.name("depcor");

  std::string chosen;
  auto subcommand = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->callback([&chosen, name] { chosen = name; });
    return sub;
  };

  for (auto [name, desc] : {std::pair<std::string, std::string>{"pearson", "Pearson correlation"},
                            {"spearman", "Spearman rank correlation (midranks for ties)"},
                            {"dcor", "Distance correlation and covariance"}}) {
    CLI::App* sub = subcommand(name, desc);
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
  }
  {
    CLI::App* sub = subcommand("cca", "First canonical correlation of the x and y blocks");
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
    add_cca_options(sub, a.est);
  }
  {
    CLI::App* sub = subcommand("renyi-kl", "(K,L) Hermite-basis approximate Renyi correlation");
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
    add_kl_options(sub, a.est);
  }
  {
    CLI::App* sub = subcommand("ace", "Alternating conditional expectations estimate of the Renyi correlation");
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
    add_ace_options(sub, a.est);
  }
  {
    CLI::App* sub = subcommand("permtest", "Permutation test of independence");
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
    sub->add_option("--stat", a.stat, "Statistic")->check(CLI::IsMember(statistic_names()))->capture_default_str();
    sub->add_option("--b", a.b, "Number of permutation replicates")->capture_default_str();
    add_kl_options(sub, a.est);
    add_ace_options(sub, a.est);
  }
  {
    CLI::App* sub = subcommand("power", "Monte Carlo power study");
    add_common_options(sub, a.common);
    sub->add_option("--model", a.model.model, "Data-generating model")
        ->check(CLI::IsMember({"bump", "gaussian", "independent"}))
        ->capture_default_str();
    sub->add_option("--stats", a.stats, "Comma-separated statistics")->capture_default_str();
    sub->add_option("--n", a.power_n, "Sample size")->capture_default_str();
    sub->add_option("--alpha", a.alpha, "Test level")->capture_default_str();
    sub->add_option("--nsim", a.nsim, "Number of simulated samples")->capture_default_str();
    sub->add_option("--b", a.b, "Permutation replicates per test")->capture_default_str();
    add_model_options(sub, a.model);
    add_kl_options(sub, a.est);
    add_ace_options(sub, a.est);
  }
  {
    CLI::App* sub = subcommand("simulate", "Write a synthetic sample as CSV");
    sub->add_option("model", a.model.model, "bump, gaussian or independent")
        ->check(CLI::IsMember({"bump", "gaussian", "independent"}))
        ->capture_default_str();
    sub->add_option("--out", a.common.out, "CSV file to write")->required();
    add_common_options(sub, a.common, false);
    sub->add_option("--n", a.n, "Sample size")->capture_default_str();
    add_model_options(sub, a.model);
  }
  {
    CLI::App* sub = subcommand("plot", "SVG scatter of the data, optionally beside the ACE transformations");
    add_data_options(sub, a.data);
    add_common_options(sub, a.common);
    sub->add_option("--svg", a.svg, "SVG file to write")->required();
    sub->add_flag("--ace", a.with_ace, "Add a panel of the ACE transformations");
    add_ace_options(sub, a.est);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  const std::unordered_map<std::string, std::function<RunReport(const Args&)>> handlers{
      {"pearson", [](const Args& x) { return run_pearson_like(x, "pearson"); }},
      {"spearman", [](const Args& x) { return run_pearson_like(x, "spearman"); }},
      {"dcor", run_dcor},
      {"cca", run_cca},
      {"renyi-kl", run_kl},
      {"ace", run_ace},
      {"permtest", run_permtest},
      {"power", run_power},
      {"simulate", run_simulate},
      {"plot", run_plot},
  };

  try {
    const auto start = std::chrono::steady_clock::now();
    RunReport report = handlers.at(chosen)(a);
    report.subcommand = chosen;
    report.seed = a.common.seed;
    if (a.common.timing) {
      report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string text = dump(report);
    if (!a.common.out.empty() && chosen != "simulate") {
      std::ofstream file(a.common.out, std::ios::binary);
      if (!file) throw DataError("cannot write '" + a.common.out + "'");
      file << text;
    } else {
      out << text;
    }
    return kSuccess;
  } catch (const UsageError& e) {
    err << "depcor " << chosen << ": usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "depcor " << chosen << ": " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "depcor " << chosen << ": internal error: " << e.what() << '\n';
    return kDataError;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace depcor::cli
