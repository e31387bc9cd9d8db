#pragma once

#include "depcor/core.hpp"
#include "depcor/rng.hpp"

#include <cstdint>
#include <string>

namespace depcor {

/// Marginal law for generated x (or y) values.
struct Law {
  enum class Kind { uniform, normal };
  Kind kind = Kind::uniform;
  double a = 0.0;  ///< uniform lower bound, or normal mean
  double b = 1.0;  ///< uniform upper bound, or normal standard deviation

  static Law uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
  static Law normal(double mu, double sigma) { return {Kind::normal, mu, sigma}; }

  /// Parses "uniform:a,b" or "normal:mu,sigma".
  static Law parse(const std::string& text);
  std::string to_string() const;

  void validate() const;
  double draw(Rng& rng) const;
};

/// Default noise level of the bump model, 2% of the peak height beta1/beta2.
constexpr double default_noise_sd(double beta1, double beta2) { return 0.02 * (beta1 / beta2); }

/// Gaussian-bump regression y = (beta1/beta2) exp(-(x-beta3)^2 / (2 beta2^2)) + eps.
struct ModelConfig {
  double beta1 = 1.5;
  double beta2 = 0.5;
  double beta3 = 0.5;
  double noise_sd = default_noise_sd(1.5, 0.5);
  Law x_law = Law::uniform(0.0, 1.0);
  Index n = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Noise-free regression function of the bump model.
double bump_mean(const ModelConfig& c, double x);

/// x from stream 0 of the seed, noise from stream 1.
PairedSample gen_bump(const ModelConfig& c);

/// Unit-variance bivariate normal pairs with correlation rho.
PairedSample gen_gaussian(Index n, double rho, std::uint64_t seed);

/// x and y drawn independently from disjoint streams.
PairedSample gen_independent(Index n, const Law& x_law, const Law& y_law, std::uint64_t seed);

}  // namespace depcor
