#pragma once

#include "depcor/core.hpp"
#include "depcor/datagen.hpp"
#include "depcor/renyi.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace depcor {

/// A named dependence statistic. Larger values mean stronger dependence; the
/// function must be pure so replicates can run concurrently.
struct Statistic {
  std::string name;
  std::function<double(const PairedSample&)> fn;
};

struct StatisticOptions {
  int k = 5;
  int l = 5;
  KlOptions kl;
  AceOptions ace;
  CcaOptions cca;
};

/// Names accepted by make_statistic.
std::vector<std::string> statistic_names();

/// pearson and spearman are taken in absolute value; "kl" uses opts.k, opts.l.
Statistic make_statistic(std::string_view name, const StatisticOptions& opts = {});

struct PermTestResult {
  std::string statistic_name;
  double observed = 0.0;
  int b = 0;
  int count_ge = 0;
  double p_value = 1.0;
};

/// (1 + #{replicates >= observed}) / (b + 1).
double permutation_p_value(double observed, std::span<const double> replicates);

/// The permutation of y rows used by replicate i (1-based) under `seed`.
std::vector<Index> replicate_permutation(Index n, std::uint64_t seed, int replicate);

/// Permutation test of independence: y rows are shuffled, x is held fixed.
/// Replicate i draws its permutation from its own stream derived from
/// (seed, i), so the result does not depend on `threads`.
PermTestResult permutation_test(const PairedSample& s, const Statistic& stat, int b, std::uint64_t seed,
                                int threads = 1);

/// Draws a sample of size n from a named data-generating process.
struct Generator {
  std::string name;
  std::function<PairedSample(Index n, std::uint64_t seed)> draw;
};

Generator bump_generator(const ModelConfig& base);
Generator gaussian_generator(double rho);
Generator independent_generator(const Law& x_law, const Law& y_law);

struct PowerOptions {
  Index n = 100;
  double alpha = 0.05;
  int nsim = 200;
  int b = 999;
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const;
};

struct PowerCell {
  std::string statistic;
  std::string alternative;
  int rejections = 0;
  double rate = 0.0;
};

struct PowerTable {
  Index n = 0;
  double alpha = 0.0;
  int nsim = 0;
  int b = 0;
  std::uint64_t seed = 0;
  std::vector<PowerCell> cells;  ///< generator-major, statistics in the order given

  double rate(std::string_view statistic, std::string_view alternative) const;
};

/// Monte Carlo rejection rates: each simulation draws a fresh sample and
/// rejects for a statistic when its permutation p-value is <= alpha.
PowerTable power_study(std::span<const Generator> generators, std::span<const Statistic> statistics,
                       const PowerOptions& opts);

}  // namespace depcor
