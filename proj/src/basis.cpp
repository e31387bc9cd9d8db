#include "depcor/basis.hpp"

#include "depcor/error.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace depcor {

double hermite(int n, double x) {
  if (n < 0) throw UsageError("hermite: negative index");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Vector standardize(VectorView v) {
  if (v.size() < 2) throw DataError("standardize: need at least 2 values");
  if (v.minCoeff() == v.maxCoeff()) throw DataError("standardize: zero variance");
  Vector out = v.array() - v.mean();
  const double sd = std::sqrt(out.squaredNorm() / static_cast<double>(v.size()));
  if (!(sd > 0.0)) throw DataError("standardize: zero variance");
  out /= sd;
  return out;
}

void BasisSpec::validate() const {
  if (count < 1) throw UsageError("basis: count must be >= 1");
  if (start_index < 0) throw UsageError("basis: start_index must be >= 0");
}

double hermite_function_norm(int k) {
  // (2 pi)^(-1/4) * (k!)^(-1/2), through lgamma to stay finite for large k
  return std::exp(-0.25 * std::log(2.0 * std::numbers::pi) - 0.5 * std::lgamma(static_cast<double>(k) + 1.0));
}

Matrix feature_matrix(VectorView v, const BasisSpec& spec) {
  spec.validate();
  if (!v.allFinite()) throw DataError("feature_matrix: non-finite input");
  const Vector x = spec.standardize_input ? standardize(v) : Vector(v);
  const int top = spec.start_index + spec.count - 1;

  std::vector<double> scale(static_cast<std::size_t>(spec.count), 1.0);
  if (spec.normalize) {
    for (int j = 0; j < spec.count; ++j) scale[static_cast<std::size_t>(j)] = hermite_function_norm(spec.start_index + j);
  }

  Matrix f(x.size(), spec.count);
  for (Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double weight = std::exp(-0.25 * xi * xi);
    double prev = 0.0;
    double cur = 1.0;  // He_0
    for (int k = 0; k <= top; ++k) {
      if (k >= spec.start_index) {
        const int j = k - spec.start_index;
        f(i, j) = scale[static_cast<std::size_t>(j)] * weight * cur;
      }
      const double next = xi * cur - static_cast<double>(k) * prev;
      prev = cur;
      cur = next;
    }
  }
  return f;
}

}  // namespace depcor
