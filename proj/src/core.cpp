#include "depcor/core.hpp"

#include "depcor/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace depcor {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

bool is_constant(VectorView v) { return v.size() == 0 || v.minCoeff() == v.maxCoeff(); }

// Column-centers in place; exactly constant columns become exact zeros.
void center_columns(Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    if (is_constant(m.col(j))) {
      m.col(j).setZero();
    } else {
      m.col(j).array() -= m.col(j).mean();
    }
  }
}

}  // namespace

PairedSample::PairedSample(Matrix x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.rows()) {
    throw DataError("paired sample: x has " + std::to_string(x_.rows()) + " rows but y has " +
                    std::to_string(y_.rows()));
  }
  if (x_.rows() < 2) throw DataError("paired sample: need at least 2 observations");
  if (x_.cols() < 1 || y_.cols() < 1) throw DataError("paired sample: empty x or y block");
  if (!all_finite(x_) || !all_finite(y_)) throw DataError("paired sample: non-finite entry");
}

PairedSample PairedSample::univariate(std::span<const double> x, std::span<const double> y) {
  Matrix mx = Eigen::Map<const Vector>(x.data(), static_cast<Index>(x.size()));
  Matrix my = Eigen::Map<const Vector>(y.data(), static_cast<Index>(y.size()));
  return PairedSample(std::move(mx), std::move(my));
}

PairedSample PairedSample::with_permuted_y(std::span<const Index> perm) const {
  if (static_cast<Index>(perm.size()) != n()) throw UsageError("permutation length differs from n");
  Matrix py(n(), q());
  for (Index i = 0; i < n(); ++i) py.row(i) = y_.row(perm[static_cast<std::size_t>(i)]);
  return PairedSample(x_, std::move(py));
}

PairedSample PairedSample::swapped() const { return PairedSample(y_, x_); }

double pearson(VectorView x, VectorView y) {
  if (x.size() != y.size()) throw DataError("pearson: length mismatch");
  if (x.size() < 2) throw DataError("pearson: need at least 2 observations");
  if (is_constant(x) || is_constant(y)) throw DataError("pearson: degenerate (zero) variance");
  const Vector dx = x.array() - x.mean();
  const Vector dy = y.array() - y.mean();
  const double sxx = dx.squaredNorm();
  const double syy = dy.squaredNorm();
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DataError("pearson: degenerate (zero) variance");
  const double r = dx.dot(dy) / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

Vector midranks(VectorView v) {
  const auto n = static_cast<std::size_t>(v.size());
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return v[a] < v[b]; });
  Vector ranks(v.size());
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && v[order[j]] == v[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double spearman(VectorView x, VectorView y) {
  if (x.size() != y.size()) throw DataError("spearman: length mismatch");
  return pearson(midranks(x), midranks(y));
}

CovTriple covariance_triple(const Matrix& fx, const Matrix& gy) {
  if (fx.rows() != gy.rows()) throw DataError("covariance_triple: row count mismatch");
  if (fx.rows() < 2) throw DataError("covariance_triple: need at least 2 rows");
  Matrix f = fx;
  Matrix g = gy;
  center_columns(f);
  center_columns(g);
  const double inv_n = 1.0 / static_cast<double>(fx.rows());
  CovTriple c;
  c.cxx = (f.transpose() * f) * inv_n;
  c.cyy = (g.transpose() * g) * inv_n;
  c.cxy = (f.transpose() * g) * inv_n;
  // exact symmetry
  c.cxx = 0.5 * (c.cxx + c.cxx.transpose()).eval();
  c.cyy = 0.5 * (c.cyy + c.cyy.transpose()).eval();
  return c;
}

namespace {

struct Whitener {
  Matrix w;  // K × r, with w^T (c + ridge I) w = I_r
};

Whitener whiten(const Matrix& c, double ridge, double rank_tol) {
  Matrix reg = c;
  reg.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(reg);
  if (eig.info() != Eigen::Success) throw DataError("canonical correlation: eigendecomposition failed");
  const Vector& vals = eig.eigenvalues();
  const double top = vals.size() > 0 ? vals.maxCoeff() : 0.0;
  if (!(top > std::numeric_limits<double>::min())) throw DataError("degenerate features");
  std::vector<Index> keep;
  for (Index i = vals.size() - 1; i >= 0; --i) {
    if (vals[i] > rank_tol * top && vals[i] > 0.0) keep.push_back(i);
  }
  Whitener out;
  out.w.resize(c.rows(), static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.w.col(static_cast<Index>(j)) = eig.eigenvectors().col(keep[j]) / std::sqrt(vals[keep[j]]);
  }
  return out;
}

}  // namespace

CcaResult first_canonical_correlation(const CovTriple& c, const CcaOptions& opts) {
  if (c.cxx.rows() != c.cxx.cols() || c.cyy.rows() != c.cyy.cols() || c.cxy.rows() != c.cxx.rows() ||
      c.cxy.cols() != c.cyy.rows()) {
    throw UsageError("canonical correlation: inconsistent covariance shapes");
  }
  if (!(opts.ridge >= 0.0)) throw UsageError("canonical correlation: ridge must be >= 0");
  if (!(opts.rank_tol >= 0.0 && opts.rank_tol < 1.0)) {
    throw UsageError("canonical correlation: rank_tol must lie in [0,1)");
  }

  const Whitener wx = whiten(c.cxx, opts.ridge, opts.rank_tol);
  const Whitener wy = whiten(c.cyy, opts.ridge, opts.rank_tol);

  const Matrix m = wx.w.transpose() * c.cxy * wy.w;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);

  CcaResult r;
  r.effective_rank_x = wx.w.cols();
  r.effective_rank_y = wy.w.cols();
  r.rho = std::clamp(svd.singularValues()[0], 0.0, 1.0);
  r.alpha = wx.w * svd.matrixU().col(0);
  r.beta = wy.w * svd.matrixV().col(0);

  for (Index i = 0; i < r.alpha.size(); ++i) {
    if (r.alpha[i] != 0.0) {
      if (r.alpha[i] < 0.0) {
        r.alpha = -r.alpha;
        r.beta = -r.beta;
      }
      break;
    }
  }
  return r;
}

CcaResult canonical_correlation(const PairedSample& s, const CcaOptions& opts) {
  return first_canonical_correlation(covariance_triple(s.x(), s.y()), opts);
}

}  // namespace depcor
