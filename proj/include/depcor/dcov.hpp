#pragma once

#include "depcor/core.hpp"

namespace depcor {

/// Euclidean distances between the rows of an n×d point matrix.
Matrix pairwise_distances(const Matrix& points);

/// a_jk - rowmean_j - colmean_k + grandmean.
Matrix double_center(const Matrix& m);

struct CenteredDistances {
  Matrix a;  ///< doubly-centered distances of x
  Matrix b;  ///< doubly-centered distances of y
};

CenteredDistances centered_distances(const PairedSample& s);

/// Squared sample distance covariance V_n^2 = mean over (j,k) of a_jk * b_jk.
///
/// Distance matrices are materialized, so memory is O(n^2); n up to about
/// 20000 is practical. Floating-point cancellation below zero is clamped.
double dcov2(const PairedSample& s);

/// The same statistic expanded into raw distance sums, S1 + S2 - 2*S3,
/// without any centering. Refuses n > 200.
double dcov2_naive(const PairedSample& s);

/// Distance correlation in [0,1]; 0 when either marginal is degenerate.
double dcor(const PairedSample& s);

}  // namespace depcor
