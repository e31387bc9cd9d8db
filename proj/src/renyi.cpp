#include "depcor/renyi.hpp"

#include "depcor/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace depcor {

namespace {

void require_univariate(const PairedSample& s, const char* what) {
  if (!s.is_univariate()) throw UsageError(std::string(what) + ": requires univariate x and y");
}

BasisSpec basis_for(int count, const KlOptions& opts) {
  BasisSpec spec;
  spec.count = count;
  spec.start_index = opts.start_index;
  spec.normalize = opts.normalize;
  spec.standardize_input = opts.standardize_input;
  return spec;
}

}  // namespace

KlResult kl_correlation(const PairedSample& s, int k, int l, const KlOptions& opts) {
  require_univariate(s, "kl_correlation");
  if (k < 1 || l < 1) throw UsageError("kl_correlation: K and L must be >= 1");
  const Matrix fx = feature_matrix(s.x().col(0), basis_for(k, opts));
  const Matrix gy = feature_matrix(s.y().col(0), basis_for(l, opts));
  const CcaResult cca = first_canonical_correlation(covariance_triple(fx, gy), opts.cca);

  KlResult r;
  r.rho = cca.rho;
  r.alpha = cca.alpha;
  r.beta = cca.beta;
  r.k = k;
  r.l = l;
  r.effective_rank_x = cca.effective_rank_x;
  r.effective_rank_y = cca.effective_rank_y;
  return r;
}

double kl_bruteforce(const PairedSample& s, int k, int l, const KlOptions& opts) {
  require_univariate(s, "kl_bruteforce");
  if (k < 1 || l < 1 || k > 2 || l > 2) throw UsageError("kl_bruteforce: K and L must be 1 or 2");
  if (s.n() > 200) throw UsageError("kl_bruteforce: n > 200 refused");

  const Matrix f = feature_matrix(s.x().col(0), basis_for(k, opts));
  const Matrix g = feature_matrix(s.y().col(0), basis_for(l, opts));
  const Index n = s.n();

  // raw centered moment sums, accumulated by hand
  std::array<double, 2> mf{0, 0}, mg{0, 0};
  for (Index i = 0; i < n; ++i) {
    for (int a = 0; a < k; ++a) mf[a] += f(i, a);
    for (int b = 0; b < l; ++b) mg[b] += g(i, b);
  }
  for (auto& v : mf) v /= static_cast<double>(n);
  for (auto& v : mg) v /= static_cast<double>(n);
  double sff[2][2] = {{0, 0}, {0, 0}}, sgg[2][2] = {{0, 0}, {0, 0}}, sfg[2][2] = {{0, 0}, {0, 0}};
  for (Index i = 0; i < n; ++i) {
    double df[2] = {0, 0}, dg[2] = {0, 0};
    for (int a = 0; a < k; ++a) df[a] = f(i, a) - mf[a];
    for (int b = 0; b < l; ++b) dg[b] = g(i, b) - mg[b];
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        sff[a][b] += df[a] * df[b];
        sgg[a][b] += dg[a] * dg[b];
        sfg[a][b] += df[a] * dg[b];
      }
    }
  }

  auto unit = [](int dim, double angle) {
    return dim == 1 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{std::cos(angle), std::sin(angle)};
  };
  auto quad = [](const double m[2][2], const std::array<double, 2>& u) {
    return u[0] * u[0] * m[0][0] + 2.0 * u[0] * u[1] * m[0][1] + u[1] * u[1] * m[1][1];
  };
  // |corr(F a, G b)|, or -1 where either combination is constant
  auto abs_corr = [&](double theta, double phi) {
    const auto a = unit(k, theta);
    const auto b = unit(l, phi);
    const double vf = quad(sff, a);
    const double vg = quad(sgg, b);
    if (!(vf > 1e-300) || !(vg > 1e-300)) return -1.0;
    double cov = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) cov += a[i] * sfg[i][j] * b[j];
    return std::abs(cov) / std::sqrt(vf * vg);
  };

  const int steps = 3200;  // pi / 3200 < 0.001 rad
  const double h = std::numbers::pi / steps;
  const int nt = k == 1 ? 1 : steps;
  const int np = l == 1 ? 1 : steps;
  double best = -1.0, best_t = 0.0, best_p = 0.0;
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double v = abs_corr(i * h, j * h);
      if (v > best) {
        best = v;
        best_t = i * h;
        best_p = j * h;
      }
    }
  }

  // pattern search around the best grid cell
  double step = h;
  while (step > 1e-12) {
    bool moved = false;
    for (int dt = -1; dt <= 1; ++dt) {
      for (int dp = -1; dp <= 1; ++dp) {
        if ((dt != 0 && k == 1) || (dp != 0 && l == 1) || (dt == 0 && dp == 0)) continue;
        const double t = best_t + dt * step;
        const double p = best_p + dp * step;
        const double v = abs_corr(t, p);
        if (v > best) {
          best = v;
          best_t = t;
          best_p = p;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  if (best < 0.0) throw DataError("degenerate features");
  return std::min(best, 1.0);
}

NeighborSmoother::NeighborSmoother(VectorView x, double span) {
  if (!(span > 0.0 && span <= 1.0)) throw UsageError("smoother: span must lie in (0,1]");
  const Index n = x.size();
  if (n < 1) throw DataError("smoother: empty input");
  window_ = std::clamp<Index>(static_cast<Index>(std::ceil(span * static_cast<double>(n) - 1e-9)), 1, n);

  order_.resize(static_cast<std::size_t>(n));
  std::iota(order_.begin(), order_.end(), Index{0});
  std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) { return x[a] < x[b]; });

  lo_.resize(order_.size());
  hi_.resize(order_.size());
  const double middle = 0.5 * static_cast<double>(n - 1);
  for (Index r = 0; r < n; ++r) {
    const double xr = x[order_[r]];
    const bool prefer_left = static_cast<double>(r) <= middle;
    Index lo = r, hi = r + 1;
    while (hi - lo < window_) {
      if (lo == 0) {
        ++hi;
      } else if (hi == n) {
        --lo;
      } else {
        const double dl = xr - x[order_[lo - 1]];
        const double dr = x[order_[hi]] - xr;
        if (dl < dr || (dl == dr && prefer_left)) {
          --lo;
        } else {
          ++hi;
        }
      }
    }
    lo_[r] = lo;
    hi_[r] = hi;
  }
}

Vector NeighborSmoother::apply(VectorView z) const {
  const auto n = static_cast<Index>(order_.size());
  if (z.size() != n) throw DataError("smoother: length mismatch");
  std::vector<long double> prefix(order_.size() + 1, 0.0L);
  for (Index r = 0; r < n; ++r) prefix[r + 1] = prefix[r] + static_cast<long double>(z[order_[r]]);
  Vector out(n);
  for (Index r = 0; r < n; ++r) {
    out[order_[r]] = static_cast<double>((prefix[hi_[r]] - prefix[lo_[r]]) / static_cast<long double>(hi_[r] - lo_[r]));
  }
  return out;
}

Vector smooth(VectorView x, VectorView z, double span) {
  if (x.size() != z.size()) throw DataError("smooth: length mismatch");
  return NeighborSmoother(x, span).apply(z);
}

void AceOptions::validate() const {
  if (!(span > 0.0 && span <= 1.0)) throw UsageError("ace: span must lie in (0,1]");
  if (max_iterations < 1) throw UsageError("ace: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw UsageError("ace: tolerance must be > 0");
}

namespace {

Vector standardize_transform(const Vector& v) {
  try {
    return standardize(v);
  } catch (const DataError&) {
    throw DataError("ace: transformation collapsed to a constant (span too large?)");
  }
}

}  // namespace

AceResult ace(const PairedSample& s, const AceOptions& opts) {
  require_univariate(s, "ace");
  opts.validate();
  if (s.n() < 10) throw DataError("ace: need at least 10 observations");

  const NeighborSmoother sx(s.x().col(0), opts.span);
  const NeighborSmoother sy(s.y().col(0), opts.span);

  AceResult r;
  r.gy = standardize(s.y().col(0));
  r.fx = standardize_transform(sx.apply(r.gy));
  r.gy = standardize_transform(sy.apply(r.fx));
  double current = pearson(r.fx, r.gy);
  r.history.push_back(current);
  r.iterations = 1;
  while (r.iterations < opts.max_iterations) {
    Vector fx = standardize_transform(sx.apply(r.gy));
    Vector gy = standardize_transform(sy.apply(fx));
    const double next = pearson(fx, gy);
    // the criterion failed to improve: keep the previous pair
    if (next < current) {
      r.converged = true;
      break;
    }
    r.fx = std::move(fx);
    r.gy = std::move(gy);
    r.history.push_back(next);
    ++r.iterations;
    if (next - current < opts.tolerance) {
      r.converged = true;
      break;
    }
    current = next;
  }
  if (pearson(r.fx, r.gy) < 0.0) r.gy = -r.gy;
  r.r_hat = pearson(r.fx, r.gy);
  return r;
}

}  // namespace depcor
