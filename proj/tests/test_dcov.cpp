#include "depcor/dcov.hpp"
#include "depcor/error.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace depcor;
using depcor::test::random_matrix;

namespace {

Matrix column(std::initializer_list<double> v) {
  Matrix m(static_cast<Index>(v.size()), 1);
  Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

}  // namespace

TEST_CASE("pairwise_distances examples") {
  const Matrix d = pairwise_distances(column({0, 1}));
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == 1.0);
  CHECK(d(1, 0) == 1.0);
  CHECK(d(1, 1) == 0.0);

  Matrix pts(2, 2);
  pts << 0, 0, 3, 4;
  CHECK(pairwise_distances(pts)(0, 1) == 5.0);
  CHECK(pairwise_distances(pts)(1, 0) == 5.0);

  Matrix same(3, 2);
  same << 1, 2, 1, 2, 1, 2;
  CHECK(pairwise_distances(same).isZero(0.0));
}

TEST_CASE("double_center examples") {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  Matrix expected(2, 2);
  expected << -0.5, 0.5, 0.5, -0.5;
  CHECK(double_center(m).isApprox(expected));
  CHECK(double_center(Matrix::Zero(4, 4)).isZero(0.0));
  CHECK(double_center(Matrix::Constant(5, 5, 3.7)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("centered distances have zero margins") {
  Rng rng(21);
  const PairedSample s(random_matrix(rng, 40, 2), random_matrix(rng, 40, 3));
  const CenteredDistances cd = centered_distances(s);
  const double scale = 40.0 * pairwise_distances(s.x()).mean();
  CHECK(cd.a.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9 * scale);
  CHECK(cd.a.colwise().sum().cwiseAbs().maxCoeff() < 1e-9 * scale);
  CHECK((cd.a - cd.a.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cd.b - cd.b.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dcov2 and dcov2_naive examples") {
  const PairedSample s(column({0, 1}), column({0, 1}));
  CHECK(dcov2(s) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(dcov2_naive(s) == doctest::Approx(0.25).epsilon(1e-15));

  const PairedSample flat(column({0, 1, 5, 2}), column({3, 3, 3, 3}));
  CHECK(dcov2(flat) == 0.0);
  CHECK(dcov2_naive(flat) == 0.0);
}

TEST_CASE("dcov2 agrees with the expanded-sum oracle") {
  Rng rng(22);
  for (int rep = 0; rep < 60; ++rep) {
    const Index n = 2 + static_cast<Index>(rng.below(49));
    const Index p = 1 + static_cast<Index>(rng.below(3));
    const Index q = 1 + static_cast<Index>(rng.below(3));
    Matrix x = random_matrix(rng, n, p);
    Matrix y = random_matrix(rng, n, q);
    y.col(0) += x.col(0).cwiseAbs();
    const PairedSample s(x, y);
    const double fast = dcov2(s);
    const double slow = dcov2_naive(s);
    CHECK(std::abs(fast - slow) <= 1e-10 * std::max(1.0, std::abs(slow)));
  }
}

TEST_CASE("dcov2_naive refuses large n") {
  Rng rng(23);
  const PairedSample s(random_matrix(rng, 201, 1), random_matrix(rng, 201, 1));
  CHECK_THROWS_AS(dcov2_naive(s), UsageError);
}

TEST_CASE("dcor examples") {
  Rng rng(24);
  const Matrix x = random_matrix(rng, 30, 1);
  CHECK(dcor(PairedSample(x, x)) == doctest::Approx(1.0).epsilon(1e-12));
  const Matrix y = (3.0 * x.array() - 7.0).matrix();
  CHECK(std::abs(dcor(PairedSample(x, y)) - 1.0) < 1e-9);
  CHECK(dcor(PairedSample(Matrix::Constant(10, 1, 2.0), Matrix::Constant(10, 1, -1.0))) == 0.0);
  CHECK(dcor(PairedSample(x, Matrix::Constant(30, 1, 4.0))) == 0.0);
}

TEST_CASE("dcor range, symmetry and scale-freeness") {
  Rng rng(25);
  for (int rep = 0; rep < 30; ++rep) {
    const Index n = 5 + static_cast<Index>(rng.below(40));
    const Matrix x = random_matrix(rng, n, 1);
    Matrix y = random_matrix(rng, n, 1);
    y.col(0) += x.col(0).array().square().matrix();
    const PairedSample s(x, y);
    const double d = dcor(s);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(dcor(s.swapped()) == d);

    const double a = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.01 + 100.0 * rng.uniform());
    const double c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.01 + 100.0 * rng.uniform());
    const PairedSample moved((a * x.array() + 3.0).matrix(), (c * y.array() - 11.0).matrix());
    CHECK(std::abs(dcor(moved) - d) < 1e-9);
  }
}

TEST_CASE("dcor is invariant to rotation plus scaling of multivariate blocks") {
  Rng rng(26);
  const Matrix x = random_matrix(rng, 40, 2);
  Matrix y = random_matrix(rng, 40, 2);
  y.col(1) += x.col(0).cwiseAbs();
  const double theta = 0.7;
  Matrix rot(2, 2);
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  const PairedSample s(x, y);
  const PairedSample moved(((x * rot) * 4.5).rowwise() + Eigen::RowVector2d(1.0, -2.0), y * rot.transpose() * 0.2);
  CHECK(std::abs(dcor(moved) - dcor(s)) < 1e-9);
}
