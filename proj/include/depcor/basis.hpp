#pragma once

#include "depcor/core.hpp"

namespace depcor {

/// Probabilists' Hermite polynomial He_n(x), via He_{n+1} = x He_n - n He_{n-1}.
double hermite(int n, double x);

/// Mean 0, variance 1 (divisor n). Throws DataError on zero variance.
Vector standardize(VectorView v);

/// Weighted Hermite features c_k * exp(-x^2/4) * He_k(x),
/// k = start_index .. start_index + count - 1.
struct BasisSpec {
  int count = 1;
  int start_index = 1;
  /// c_k = (2*pi)^(-1/4) / sqrt(k!) makes the columns orthonormal in L2(dx).
  bool normalize = true;
  bool standardize_input = true;

  void validate() const;
};

/// Normalization constant for the k-th weighted Hermite function.
double hermite_function_norm(int k);

/// n×count feature matrix for the values in v.
Matrix feature_matrix(VectorView v, const BasisSpec& spec);

}  // namespace depcor
