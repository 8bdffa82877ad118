#include <random>

#include "doctest.h"
#include "procova/error.hpp"
#include "procova/numeric.hpp"
#include "support.hpp"

using namespace procova;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected procova::Error");
  return ErrorKind::Schema;
}

}  // namespace

TEST_CASE("least squares: intercept-only mean") {
  const Matrix x = Matrix::Ones(4, 1);
  const Vector y = Vector::Constant(4, 3.0);
  const Vector b = solve_least_squares(x, y);
  REQUIRE(b.size() == 1);
  CHECK(b(0) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("least squares: exact line") {
  Matrix x(4, 2);
  x << 1, 0, 1, 1, 1, 2, 1, 3;
  Vector y(4);
  y << 1, 3, 5, 7;
  const Vector b = solve_least_squares(x, y);
  CHECK(b(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(b(1) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("least squares: fixed 5x3 design against the normal equations") {
  Matrix x(5, 3);
  x << 1, 0.5, -1.2,
       1, 1.7, 0.3,
       1, -0.4, 2.2,
       1, 2.9, -0.7,
       1, 0.1, 1.1;
  Vector y(5);
  y << 2.1, 3.4, -0.6, 5.9, 0.8;
  const Vector b = solve_least_squares(x, y);
  const Vector oracle = test::normal_equation_ols(x, y);
  CHECK(test::max_abs(b - oracle) < 1e-10);
}

TEST_CASE("least squares: errors") {
  Matrix x(3, 2);
  x << 1, 2, 1, 2, 1, 2;  // collinear
  CHECK(kind_of([&] { solve_least_squares(x, Vector::Ones(3)); }) == ErrorKind::RankDeficient);
  CHECK(kind_of([&] { solve_least_squares(Matrix::Ones(1, 2), Vector::Ones(1)); }) ==
        ErrorKind::RankDeficient);
  CHECK(kind_of([&] { solve_least_squares(Matrix::Ones(3, 1), Vector::Ones(2)); }) ==
        ErrorKind::DimensionMismatch);
  Matrix bad = Matrix::Ones(3, 1);
  bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of([&] { solve_least_squares(bad, Vector::Ones(3)); }) == ErrorKind::NonFinite);
}

TEST_CASE("least squares: residual orthogonal to every design column") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index n = 20 + rep;
    const Eigen::Index p = 1 + rep % 6;
    Matrix x(n, p);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) x(i, j) = z(rng);
      y(i) = z(rng) * 3.0;
    }
    const Vector r = y - x * solve_least_squares(x, y);
    for (Eigen::Index j = 0; j < p; ++j) {
      CHECK(std::abs(x.col(j).dot(r)) <= 1e-8 * y.norm() * x.col(j).norm());
    }
  }
}

TEST_CASE("invert: identity, diagonal, multiply-back") {
  CHECK(test::max_abs(invert(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)) == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const Matrix di = invert(d);
  CHECK(di(0, 0) == doctest::Approx(0.5));
  CHECK(di(1, 1) == doctest::Approx(0.25));
  CHECK(di(0, 1) == 0.0);

  Matrix m(3, 3);
  m << 4, -2, 1,
       3, 6, -4,
       2, 1, 8;
  CHECK(test::max_abs(m * invert(m) - Matrix::Identity(3, 3)) < 1e-10);
  CHECK(test::max_abs(invert(m) * m - Matrix::Identity(3, 3)) < 1e-10);
}

TEST_CASE("invert: errors") {
  Matrix s(2, 2);
  s << 1, 2, 2, 4;
  CHECK(kind_of([&] { invert(s); }) == ErrorKind::Singular);
  CHECK(kind_of([&] { invert(Matrix::Ones(2, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("invert twice recovers the matrix") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index p = 2 + rep % 5;
    Matrix m(p, p);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = z(rng);
    m += 3.0 * Matrix::Identity(p, p);
    Eigen::JacobiSVD<Matrix> svd(m);
    const double cond = svd.singularValues()(0) / svd.singularValues()(p - 1);
    if (cond >= 1e6) continue;
    CHECK(test::max_rel(invert(invert(m)), m) < 1e-8);
  }
}

TEST_CASE("quadratic form") {
  Vector e(2);
  e << 1, 0;
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 5;
  m(1, 1) = 7;
  CHECK(quadratic_form(e, m) == 5.0);
  e << 1, 1;
  m << 1, 2, 2, 1;
  CHECK(quadratic_form(e, m) == 6.0);
  CHECK_THROWS_AS(quadratic_form(Vector::Ones(3), m), Error);
}

TEST_CASE("quadratic form: PSD matrices give non-negative values") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  // L L' with L lower triangular is PSD by construction.
  Matrix l = Matrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) l(i, j) = z(rng);
  }
  const Matrix m = l * l.transpose();
  for (int k = 0; k < 100; ++k) {
    Vector e(4);
    for (Eigen::Index j = 0; j < 4; ++j) e(j) = z(rng);
    CHECK(quadratic_form(e, m) >= 0.0);
  }
}

TEST_CASE("quadratic form: linear in m, quadratic in e") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int k = 0; k < 20; ++k) {
    Matrix a(3, 3), b(3, 3);
    Vector e(3);
    for (Eigen::Index i = 0; i < 9; ++i) {
      a.data()[i] = z(rng);
      b.data()[i] = z(rng);
    }
    for (Eigen::Index i = 0; i < 3; ++i) e(i) = z(rng);
    const double c = 1.0 + std::abs(z(rng));
    const double scale = 1.0 + std::abs(quadratic_form(e, a)) + std::abs(quadratic_form(e, b));
    CHECK(std::abs(quadratic_form(e, a + b) - quadratic_form(e, a) - quadratic_form(e, b)) <
          1e-12 * scale);
    CHECK(std::abs(quadratic_form(c * e, a) - c * c * quadratic_form(e, a)) < 1e-12 * c * c * scale);
  }
}

TEST_CASE("reciprocal condition and finiteness helpers") {
  CHECK(reciprocal_condition(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(reciprocal_condition(Matrix::Zero(2, 2)) == 0.0);
  CHECK(all_finite(Matrix::Ones(2, 2)));
  Matrix m = Matrix::Ones(2, 2);
  m(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_FALSE(all_finite(m));
  const Matrix r = Matrix::Random(3, 3);
  CHECK(test::max_abs(symmetrize(r) - symmetrize(r).transpose()) == 0.0);
}
