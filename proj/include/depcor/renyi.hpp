#pragma once

#include "depcor/basis.hpp"
#include "depcor/core.hpp"

#include <vector>

namespace depcor {

struct KlOptions {
  int start_index = 1;
  bool normalize = true;
  bool standardize_input = true;
  CcaOptions cca;
};

struct KlResult {
  double rho = 0.0;
  Vector alpha;
  Vector beta;
  int k = 0;
  int l = 0;
  Index effective_rank_x = 0;
  Index effective_rank_y = 0;
};

/// (K,L) approximate Renyi correlation: first canonical correlation between
/// K weighted Hermite features of x and L of y. Requires p = q = 1.
KlResult kl_correlation(const PairedSample& s, int k, int l, const KlOptions& opts = {});

/// Grid-search oracle for kl_correlation (K, L <= 2, n <= 200).
///
/// Unit coefficient vectors are parameterized by angles on a grid finer than
/// 0.001 rad, the best cell is refined by a shrinking pattern search.
/// Moments are accumulated here directly, not through covariance_triple.
double kl_bruteforce(const PairedSample& s, int k, int l, const KlOptions& opts = {});

/// Symmetric nearest-neighbour running mean.
///
/// For each point the window holds ceil(span*n) points, contiguous in x-order,
/// grown one neighbour at a time toward whichever side is closer in x. When
/// both candidates are equally far the window grows toward the nearer end of
/// the data (the lower-ranked side at the exact middle).
class NeighborSmoother {
 public:
  NeighborSmoother(VectorView x, double span);

  /// Local means of z, i.e. an estimate of E[z | x] at every x_i.
  Vector apply(VectorView z) const;

  Index window_size() const { return window_; }

 private:
  std::vector<Index> order_;  // rank -> observation index
  std::vector<Index> lo_;     // per rank, first rank in window
  std::vector<Index> hi_;     // per rank, one past last rank in window
  Index window_ = 0;
};

Vector smooth(VectorView x, VectorView z, double span);

struct AceOptions {
  double span = 0.1;
  int max_iterations = 100;
  /// Stop once |r_hat change| between iterations drops below this.
  double tolerance = 1e-6;

  void validate() const;
};

struct AceResult {
  double r_hat = 0.0;
  Vector fx;  ///< transformed x, mean 0 and variance 1
  Vector gy;  ///< transformed y, mean 0 and variance 1
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  ///< r_hat after each iteration
};

/// Alternating conditional expectations estimate of the Renyi correlation.
///
/// Starts from g = standardize(y), so g is positively related to y's ranks,
/// then alternates f <- standardize(E[g|x]), g <- standardize(E[f|y]).
AceResult ace(const PairedSample& s, const AceOptions& opts = {});

}  // namespace depcor
