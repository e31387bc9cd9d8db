#pragma once

#include <Eigen/Dense>

#include <span>

namespace depcor {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using VectorView = Eigen::Ref<const Vector>;

/// n paired observations: x is n×p, y is n×q.
///
/// Construction validates that both blocks have the same row count n ≥ 2,
/// at least one column each, and only finite entries.
class PairedSample {
 public:
  PairedSample(Matrix x, Matrix y);

  static PairedSample univariate(std::span<const double> x, std::span<const double> y);

  const Matrix& x() const { return x_; }
  const Matrix& y() const { return y_; }
  Index n() const { return x_.rows(); }
  Index p() const { return x_.cols(); }
  Index q() const { return y_.cols(); }
  bool is_univariate() const { return p() == 1 && q() == 1; }

  /// Same x, rows of y reordered so that row i of the result is row perm[i] of y.
  PairedSample with_permuted_y(std::span<const Index> perm) const;
  /// Exchanges the roles of x and y.
  PairedSample swapped() const;

 private:
  Matrix x_;
  Matrix y_;
};

double pearson(VectorView x, VectorView y);

/// Average ranks (1-based), ties share the mean of the ranks they span.
Vector midranks(VectorView v);

double spearman(VectorView x, VectorView y);

/// Empirical centered second moments of two feature blocks (divisor n).
struct CovTriple {
  Matrix cxx;
  Matrix cyy;
  Matrix cxy;
};

CovTriple covariance_triple(const Matrix& fx, const Matrix& gy);

struct CcaOptions {
  double ridge = 0.0;
  /// Eigenvalues of cxx / cyy below rank_tol * (largest eigenvalue) are dropped.
  double rank_tol = 1e-10;
};

struct CcaResult {
  double rho = 0.0;
  Vector alpha;
  Vector beta;
  Index effective_rank_x = 0;
  Index effective_rank_y = 0;
};

/// First canonical correlation by whitening each block on its retained
/// eigen-subspace and taking the top singular value of the whitened
/// cross-covariance. alpha's first nonzero coordinate is made nonnegative.
CcaResult first_canonical_correlation(const CovTriple& c, const CcaOptions& opts = {});

/// First canonical correlation between the raw x and y blocks of a sample.
CcaResult canonical_correlation(const PairedSample& s, const CcaOptions& opts = {});

}  // namespace depcor
