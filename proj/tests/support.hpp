#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "procova/data.hpp"
#include "procova/numeric.hpp"

namespace procova::test {

inline std::vector<std::string> names_for(Eigen::Index q) {
  std::vector<std::string> names{kInterceptName};
  for (Eigen::Index j = 1; j < q; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

/// Random covariates with an intercept column; outcome nonlinear in the
/// covariates with heteroskedastic noise.
inline TrialDataset random_trial(std::uint64_t seed, Eigen::Index n, Eigen::Index q) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  TrialDataset d;
  d.covariates.resize(n, q);
  d.treatment.resize(n);
  d.outcome.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.covariates(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < q; ++j) d.covariates(i, j) = z(rng) + 0.3 * static_cast<double>(j);
    d.treatment(i) = coin(rng) ? 1.0 : 0.0;
  }
  // Guarantee both arms.
  d.treatment(0) = 0.0;
  d.treatment(1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x1 = d.covariates(i, 1);
    const double x2 = q > 2 ? d.covariates(i, 2) : 0.0;
    d.outcome(i) = 0.5 + x1 + 0.4 * x1 * x1 - 0.7 * x2 + d.treatment(i) * (0.8 + 0.5 * x1) +
                   (1.0 + 0.5 * std::abs(x1)) * z(rng);
  }
  d.covariate_names = names_for(q);
  return d;
}

inline HistoricalDataset random_historical(std::uint64_t seed, Eigen::Index n, Eigen::Index q) {
  auto t = random_trial(seed, n, q);
  HistoricalDataset h;
  h.covariates = t.covariates;
  h.outcome = t.outcome - 0.8 * t.treatment;
  h.covariate_names = t.covariate_names;
  return h;
}

/// Normal-equation solve, independent of the QR path in the library.
inline Vector normal_equation_ols(const Matrix& x, const Vector& y) {
  return (x.transpose() * x).ldlt().solve(x.transpose() * y);
}

/// One-pass HC0 covariance of sqrt(n)(beta_hat - beta): (X'X/n)^{-1} (sum e^2 x x'/n) (X'X/n)^{-1},
/// accumulated row by row with plain loops.
inline Matrix hc0_one_pass(const Matrix& x, const Vector& e) {
  const auto n = x.rows();
  const auto p = x.cols();
  Matrix bread = Matrix::Zero(p, p);
  Matrix meat = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < p; ++a) {
      for (Eigen::Index b = 0; b < p; ++b) {
        const double xx = x(i, a) * x(i, b);
        bread(a, b) += xx;
        meat(a, b) += e(i) * e(i) * xx;
      }
    }
  }
  bread /= static_cast<double>(n);
  meat /= static_cast<double>(n);
  const Matrix inv = bread.llt().solve(Matrix::Identity(p, p));
  return inv * meat * inv;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_rel(const Matrix& a, const Matrix& b) {
  const double scale = std::max(max_abs(b), 1e-300);
  return max_abs(a - b) / scale;
}

}  // namespace procova::test
