#include "depcor/inference.hpp"

#include "depcor/dcov.hpp"
#include "depcor/error.hpp"
#include "depcor/parallel.hpp"
#include "depcor/rng.hpp"

#include <algorithm>
#include <cmath>

namespace depcor {

namespace {

constexpr std::uint64_t kReplicateStream = 0x5045524DULL;  // "PERM"
constexpr std::uint64_t kSampleStream = 0x53414D50ULL;     // "SAMP"
constexpr std::uint64_t kPowerTestStream = 0x54455354ULL;  // "TEST"

void require_univariate(const PairedSample& s, const char* what) {
  if (!s.is_univariate()) throw UsageError(std::string(what) + ": requires univariate x and y");
}

}  // namespace

std::vector<std::string> statistic_names() { return {"pearson", "spearman", "cca", "dcov2", "dcor", "ace", "kl"}; }

Statistic make_statistic(std::string_view name, const StatisticOptions& opts) {
  if (name == "pearson") {
    return {"pearson", [](const PairedSample& s) {
              require_univariate(s, "pearson");
              return std::abs(pearson(s.x().col(0), s.y().col(0)));
            }};
  }
  if (name == "spearman") {
    return {"spearman", [](const PairedSample& s) {
              require_univariate(s, "spearman");
              return std::abs(spearman(s.x().col(0), s.y().col(0)));
            }};
  }
  if (name == "cca") {
    return {"cca", [cca = opts.cca](const PairedSample& s) { return canonical_correlation(s, cca).rho; }};
  }
  if (name == "dcov2") return {"dcov2", [](const PairedSample& s) { return dcov2(s); }};
  if (name == "dcor") return {"dcor", [](const PairedSample& s) { return dcor(s); }};
  if (name == "ace") {
    opts.ace.validate();
    return {"ace", [ace_opts = opts.ace](const PairedSample& s) { return ace(s, ace_opts).r_hat; }};
  }
  if (name == "kl") {
    if (opts.k < 1 || opts.l < 1) throw UsageError("kl statistic: K and L must be >= 1");
    return {"kl(" + std::to_string(opts.k) + "," + std::to_string(opts.l) + ")",
            [k = opts.k, l = opts.l, kl = opts.kl](const PairedSample& s) { return kl_correlation(s, k, l, kl).rho; }};
  }
  throw UsageError("unknown statistic '" + std::string(name) + "'");
}

double permutation_p_value(double observed, std::span<const double> replicates) {
  const auto count_ge = std::count_if(replicates.begin(), replicates.end(), [&](double v) { return v >= observed; });
  return (1.0 + static_cast<double>(count_ge)) / (static_cast<double>(replicates.size()) + 1.0);
}

std::vector<Index> replicate_permutation(Index n, std::uint64_t seed, int replicate) {
  Rng rng(derive_seed(seed, kReplicateStream, static_cast<std::uint64_t>(replicate)));
  return random_permutation(n, rng);
}

PermTestResult permutation_test(const PairedSample& s, const Statistic& stat, int b, std::uint64_t seed,
                                int threads) {
  if (b < 1) throw UsageError("permutation test: b must be >= 1");
  PermTestResult r;
  r.statistic_name = stat.name;
  r.b = b;
  r.observed = stat.fn(s);

  std::vector<double> replicates(static_cast<std::size_t>(b));
  parallel_for(replicates.size(), threads, [&](std::size_t i) {
    const int replicate = static_cast<int>(i) + 1;
    try {
      replicates[i] = stat.fn(s.with_permuted_y(replicate_permutation(s.n(), seed, replicate)));
    } catch (const std::exception& e) {
      throw DataError("permutation test: statistic '" + stat.name + "' failed on replicate " +
                      std::to_string(replicate) + ": " + e.what());
    }
  });

  r.count_ge = static_cast<int>(
      std::count_if(replicates.begin(), replicates.end(), [&](double v) { return v >= r.observed; }));
  r.p_value = (1.0 + r.count_ge) / (static_cast<double>(b) + 1.0);
  return r;
}

Generator bump_generator(const ModelConfig& base) {
  base.validate();
  return {"bump", [base](Index n, std::uint64_t seed) {
            ModelConfig c = base;
            c.n = n;
            c.seed = seed;
            return gen_bump(c);
          }};
}

Generator gaussian_generator(double rho) {
  if (!(std::abs(rho) < 1.0)) throw UsageError("gaussian model: |rho| must be < 1");
  return {"gaussian", [rho](Index n, std::uint64_t seed) { return gen_gaussian(n, rho, seed); }};
}

Generator independent_generator(const Law& x_law, const Law& y_law) {
  x_law.validate();
  y_law.validate();
  return {"independent",
          [x_law, y_law](Index n, std::uint64_t seed) { return gen_independent(n, x_law, y_law, seed); }};
}

void PowerOptions::validate() const {
  if (n < 2) throw UsageError("power study: n must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("power study: alpha must lie in (0,1)");
  if (nsim < 1) throw UsageError("power study: nsim must be >= 1");
  if (b < 1) throw UsageError("power study: b must be >= 1");
}

double PowerTable::rate(std::string_view statistic, std::string_view alternative) const {
  for (const auto& c : cells) {
    if (c.statistic == statistic && c.alternative == alternative) return c.rate;
  }
  throw UsageError("power table: no cell for " + std::string(statistic) + " / " + std::string(alternative));
}

PowerTable power_study(std::span<const Generator> generators, std::span<const Statistic> statistics,
                       const PowerOptions& opts) {
  opts.validate();
  const std::size_t ng = generators.size();
  const std::size_t ns = statistics.size();
  const auto nsim = static_cast<std::size_t>(opts.nsim);

  // reject[(g * nsim + sim) * ns + stat]
  std::vector<char> reject(ng * nsim * ns, 0);
  parallel_for(ng * nsim, opts.threads, [&](std::size_t task) {
    const std::size_t g = task / nsim;
    const std::size_t sim = task % nsim;
    const PairedSample sample = generators[g].draw(opts.n, derive_seed(opts.seed, kSampleStream, sim));
    const std::uint64_t test_seed = derive_seed(opts.seed, kPowerTestStream, sim);
    for (std::size_t j = 0; j < ns; ++j) {
      const PermTestResult t = permutation_test(sample, statistics[j], opts.b, test_seed, 1);
      reject[task * ns + j] = t.p_value <= opts.alpha ? 1 : 0;
    }
  });

  PowerTable table;
  table.n = opts.n;
  table.alpha = opts.alpha;
  table.nsim = opts.nsim;
  table.b = opts.b;
  table.seed = opts.seed;
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t j = 0; j < ns; ++j) {
      PowerCell cell;
      cell.statistic = statistics[j].name;
      cell.alternative = generators[g].name;
      for (std::size_t sim = 0; sim < nsim; ++sim) cell.rejections += reject[(g * nsim + sim) * ns + j];
      cell.rate = static_cast<double>(cell.rejections) / static_cast<double>(opts.nsim);
      table.cells.push_back(cell);
    }
  }
  return table;
}

}  // namespace depcor
