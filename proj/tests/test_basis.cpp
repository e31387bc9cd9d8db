#include "depcor/basis.hpp"
#include "depcor/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace depcor;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// He_n(x) = n! * sum_m (-1)^m x^(n-2m) / (m! (n-2m)! 2^m)
double hermite_explicit(int n, double x) {
  double sum = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    const double term = std::pow(x, n - 2 * m) / (factorial(m) * factorial(n - 2 * m) * std::pow(2.0, m));
    sum += (m % 2 == 0 ? term : -term);
  }
  return factorial(n) * sum;
}

double gauss(double x) { return std::exp(-0.5 * x * x); }

// n-th central difference of exp(-x^2/2), Richardson-extrapolated in h
double nth_derivative(int n, double x, double h) {
  auto diff = [&](double step) {
    double acc = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      acc += (k % 2 == 0 ? 1.0 : -1.0) * binom * gauss(x + (0.5 * n - k) * step);
      binom = binom * (n - k) / (k + 1);
    }
    return acc / std::pow(step, n);
  };
  return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

double rodrigues(int n, double x) {
  return (n % 2 == 0 ? 1.0 : -1.0) * std::exp(0.5 * x * x) * nth_derivative(n, x, 0.02);
}

}  // namespace

TEST_CASE("hermite examples") {
  CHECK(hermite(0, 0.0) == 1.0);
  CHECK(hermite(0, -17.5) == 1.0);
  CHECK(hermite(2, 2.0) == 3.0);
  CHECK(hermite(3, 1.0) == -2.0);
  CHECK_THROWS_AS(hermite(-1, 0.0), UsageError);
}

TEST_CASE("hermite recurrence matches explicit coefficients") {
  for (int n = 0; n <= 8; ++n) {
    for (int i = 0; i < 20; ++i) {
      const double x = -3.0 + 6.0 * i / 19.0;
      const double expected = hermite_explicit(n, x);
      CHECK(std::abs(hermite(n, x) - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("hermite matches finite differences of the Rodrigues formula") {
  for (int n = 0; n <= 4; ++n) {
    for (int i = 0; i <= 16; ++i) {
      const double x = -2.0 + 0.25 * i;
      CHECK(std::abs(hermite(n, x) - rodrigues(n, x)) < 1e-5);
    }
  }
}

TEST_CASE("standardize examples") {
  Vector v(2);
  v << 0, 2;
  const Vector s = standardize(v);
  CHECK(s[0] == doctest::Approx(-1.0));
  CHECK(s[1] == doctest::Approx(1.0));
  CHECK((standardize(s) - s).cwiseAbs().maxCoeff() < 1e-12);

  Vector flat(3);
  flat << 5, 5, 5;
  CHECK_THROWS_AS(standardize(flat), DataError);

  Vector w(5);
  w << 3, -1, 8, 2, 2.5;
  const Vector z = standardize(w);
  CHECK(std::abs(z.mean()) < 1e-14);
  CHECK(z.squaredNorm() / 5.0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("feature_matrix examples") {
  Vector zero(1);
  zero << 0.0;
  BasisSpec odd{1, 1, false, false};
  CHECK(feature_matrix(zero, odd)(0, 0) == 0.0);
  BasisSpec constant{1, 0, false, false};
  CHECK(feature_matrix(zero, constant)(0, 0) == 1.0);

  CHECK_THROWS_AS(feature_matrix(zero, BasisSpec{0, 1, true, true}), UsageError);
  CHECK_THROWS_AS(feature_matrix(zero, BasisSpec{1, -1, true, true}), UsageError);
  Vector flat(3);
  flat << 2, 2, 2;
  CHECK_THROWS_AS(feature_matrix(flat, BasisSpec{2, 1, true, true}), DataError);
}

TEST_CASE("feature columns follow c_k exp(-x^2/4) He_k(x)") {
  Vector v(4);
  v << -1.3, 0.2, 0.9, 2.4;
  const BasisSpec spec{4, 1, true, false};
  const Matrix f = feature_matrix(v, spec);
  for (Index i = 0; i < v.size(); ++i) {
    for (int j = 0; j < 4; ++j) {
      const int k = j + 1;
      const double expected = std::pow(2.0 * M_PI, -0.25) / std::sqrt(factorial(k)) *
                              std::exp(-0.25 * v[i] * v[i]) * hermite_explicit(k, v[i]);
      CHECK(f(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalized weighted Hermite functions are orthonormal in L2(dx)") {
  const double h = 1e-3;
  const Index points = static_cast<Index>(24.0 / h) + 1;
  Vector grid(points);
  for (Index i = 0; i < points; ++i) grid[i] = -12.0 + h * static_cast<double>(i);
  const Matrix f = feature_matrix(grid, BasisSpec{7, 0, true, false});

  // trapezoid rule; the integrands vanish at the ends
  Matrix gram = (f.transpose() * f) * h;
  gram -= 0.5 * h * (f.row(0).transpose() * f.row(0) + f.row(points - 1).transpose() * f.row(points - 1));
  CHECK((gram - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-6);
}
