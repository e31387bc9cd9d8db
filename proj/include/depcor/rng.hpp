#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace depcor {

/// Mixes (seed, stream, index) into an independent 64-bit seed. Streams used
/// by this library: permutation replicates, power-study samples, generator
/// sub-streams. Derivation is a SplitMix64 finalizer chain, so it depends on
/// nothing but the three integers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// xoshiro256** seeded through SplitMix64.
///
/// All variates are produced by code in this file so streams are identical
/// across standard libraries: uniform() = (next() >> 11) * 2^-53, normal()
/// uses the Marsaglia polar method and returns both variates of a pair in turn,
/// below() uses Lemire's multiply-and-reject bounded integers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal();
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform random permutation of 0..n-1 by Fisher-Yates.
std::vector<Eigen::Index> random_permutation(Eigen::Index n, Rng& rng);

}  // namespace depcor
