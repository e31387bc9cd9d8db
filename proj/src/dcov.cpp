#include "depcor/dcov.hpp"

#include "depcor/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depcor {

namespace {

double mean_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum() / static_cast<double>(a.size());
}

// Rounding can push a mathematically nonnegative V^2 slightly below zero.
double clamp_nonnegative(double v, double scale) {
  if (v >= 0.0) return v;
  if (v >= -1e-12 * std::max(1.0, scale)) return 0.0;
  throw std::logic_error("dcov2: negative squared distance covariance beyond rounding tolerance");
}

double dcov2_centered(const Matrix& a, const Matrix& b) {
  const double v = mean_product(a, b);
  const double scale = a.cwiseAbs().mean() * b.cwiseAbs().mean();
  return clamp_nonnegative(v, scale);
}

}  // namespace

Matrix pairwise_distances(const Matrix& points) {
  const Index n = points.rows();
  const Index d = points.cols();
  Matrix dist = Matrix::Zero(n, n);
  if (d == 1) {
    const double* v = points.data();
    for (Index k = 0; k < n; ++k) {
      for (Index j = k + 1; j < n; ++j) dist(j, k) = std::abs(v[j] - v[k]);
    }
  } else {
    const Matrix pts = points.transpose();  // one point per contiguous column
    for (Index k = 0; k < n; ++k) {
      for (Index j = k + 1; j < n; ++j) dist(j, k) = (pts.col(j) - pts.col(k)).norm();
    }
  }
  dist.triangularView<Eigen::StrictlyUpper>() = dist.transpose();
  return dist;
}

Matrix double_center(const Matrix& m) {
  const Eigen::RowVectorXd col_means = m.colwise().mean();
  // for symmetric input reuse the column means so the output is exactly symmetric
  const Vector row_means = m == m.transpose() ? Vector(col_means.transpose()) : Vector(m.rowwise().mean());
  const double grand = m.mean();
  Matrix out(m.rows(), m.cols());
  for (Index k = 0; k < m.cols(); ++k) {
    for (Index j = 0; j < m.rows(); ++j) out(j, k) = (m(j, k) - (row_means[j] + col_means[k])) + grand;
  }
  return out;
}

CenteredDistances centered_distances(const PairedSample& s) {
  return {double_center(pairwise_distances(s.x())), double_center(pairwise_distances(s.y()))};
}

double dcov2(const PairedSample& s) {
  const CenteredDistances cd = centered_distances(s);
  return dcov2_centered(cd.a, cd.b);
}

double dcov2_naive(const PairedSample& s) {
  const Index n = s.n();
  if (n > 200) throw UsageError("dcov2_naive: n > 200 refused");
  const double nd = static_cast<double>(n);

  auto dist = [](const Matrix& pts, Index j, Index k) {
    double acc = 0.0;
    for (Index c = 0; c < pts.cols(); ++c) {
      const double diff = pts(j, c) - pts(k, c);
      acc += diff * diff;
    }
    return std::sqrt(acc);
  };

  double s1 = 0.0, sum_a = 0.0, sum_b = 0.0, s3 = 0.0;
  for (Index j = 0; j < n; ++j) {
    double row_a = 0.0, row_b = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double a = dist(s.x(), j, k);
      const double b = dist(s.y(), j, k);
      s1 += a * b;
      row_a += a;
      row_b += b;
    }
    sum_a += row_a;
    sum_b += row_b;
    s3 += row_a * row_b;
  }
  s1 /= nd * nd;
  const double s2 = (sum_a / (nd * nd)) * (sum_b / (nd * nd));
  s3 /= nd * nd * nd;
  const double v = s1 + s2 - 2.0 * s3;
  return clamp_nonnegative(v, (sum_a / (nd * nd)) * (sum_b / (nd * nd)));
}

double dcor(const PairedSample& s) {
  const CenteredDistances cd = centered_distances(s);
  const double vxy = dcov2_centered(cd.a, cd.b);
  const double vxx = dcov2_centered(cd.a, cd.a);
  const double vyy = dcov2_centered(cd.b, cd.b);
  const double denom = std::sqrt(vxx * vyy);
  if (!(denom > 0.0)) return 0.0;
  return std::clamp(std::sqrt(vxy / denom), 0.0, 1.0);
}

}  // namespace depcor
