#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "procova/error.hpp"
#include "procova/estimation.hpp"
#include "procova/inference.hpp"
#include "procova/simulation.hpp"
#include "support.hpp"

using namespace procova;

namespace {

double t_density(double df, double x) {
  const double logc = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                      0.5 * std::log(df * std::numbers::pi);
  return std::exp(logc - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// P(0 < T < x) by adaptive Simpson quadrature of the density.
double t_mass(double df, double x) {
  const auto f = [df](double u) { return t_density(df, u); };
  const double fa = f(0.0), fb = f(x), fm = f(0.5 * x);
  return simpson(f, 0.0, x, fa, fm, fb, x / 6.0 * (fa + 4.0 * fm + fb), 1e-14, 50);
}

/// Quantile by bisection on the quadrature CDF.
double t_quantile_oracle(double df, double p) {
  double lo = 0.0, hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 + t_mass(df, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ProcovaFit hand_fit(Eigen::Index n, const Vector& beta, const Matrix& v_fix, const Matrix& v_est) {
  ProcovaFit f;
  f.beta_hat = beta;
  f.n_trial = n;
  f.v_fix = v_fix;
  f.v_est = v_est;
  return f;
}

}  // namespace

TEST_CASE("t quantile: median and symmetry") {
  for (const double df : {1.0, 2.0, 5.0, 30.0, 197.0, 1e5}) {
    CHECK(std::abs(t_quantile(df, 0.5)) < 1e-14);
    for (const double p : {0.001, 0.025, 0.1, 0.3}) {
      CHECK(t_quantile(df, p) == doctest::Approx(-t_quantile(df, 1.0 - p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("t quantile: closed forms for one and two degrees of freedom") {
  for (const double p : {0.6, 0.9, 0.975, 0.999}) {
    CHECK(t_quantile(1.0, p) == doctest::Approx(std::tan(std::numbers::pi * (p - 0.5))).epsilon(1e-10));
    const double t2 = (2.0 * p - 1.0) / std::sqrt(2.0 * p * (1.0 - p));
    CHECK(t_quantile(2.0, p) == doctest::Approx(t2).epsilon(1e-10));
  }
}

TEST_CASE("t quantile: quadrature oracle") {
  CHECK(std::abs(t_quantile(197.0, 0.975) - t_quantile_oracle(197.0, 0.975)) < 1e-7);
  for (const double df : {3.0, 10.0, 47.0}) {
    for (const double p : {0.9, 0.95, 0.995}) {
      CHECK(std::abs(t_quantile(df, p) - t_quantile_oracle(df, p)) < 1e-7);
    }
  }
  CHECK(t_cdf(10.0, 2.228138851986) == doctest::Approx(0.975).epsilon(1e-10));
}

TEST_CASE("t quantile: normal limit") {
  const double q = t_quantile(1e6, 0.975);
  CHECK(q >= 1.9599);
  CHECK(q <= 1.9600);
}

TEST_CASE("t quantile: invalid arguments") {
  for (const auto& [df, p] : {std::pair{10.0, 0.0}, {10.0, 1.0}, {10.0, -0.2}, {0.5, 0.9}, {0.0, 0.5}}) {
    try {
      t_quantile(df, p);
      FAIL("expected InvalidProbability");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidProbability);
    }
  }
}

TEST_CASE("summarize: zero variances give degenerate intervals") {
  Vector beta(3);
  beta << 0.4, 1.5, 0.9;
  const auto rows = summarize(hand_fit(50, beta, Matrix::Zero(3, 3), Matrix::Zero(3, 3)));
  REQUIRE(rows.size() == 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    const auto& r = rows[static_cast<std::size_t>(j)];
    CHECK(r.estimate == beta(j));
    CHECK(r.se_fix == 0.0);
    CHECK(r.se_est == 0.0);
    CHECK(r.ci_fix.lo == r.estimate);
    CHECK(r.ci_est.hi == r.estimate);
    CHECK(r.df == 47);
  }
}

TEST_CASE("summarize: normal-limit interval half-widths") {
  const Eigen::Index n = 2'000'000;
  Matrix v = Matrix::Zero(3, 3);
  v.diagonal() << 4, 9, 1;
  v *= static_cast<double>(n);
  Vector beta(3);
  beta << 1.0, -2.0, 0.5;
  const auto rows = summarize(hand_fit(n, beta, v, v), 0.95);
  const double se[] = {2, 3, 1};
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(rows[j].se_fix == doctest::Approx(se[j]).epsilon(1e-12));
    CHECK(std::abs(rows[j].ci_fix.lo - (beta(static_cast<Eigen::Index>(j)) - 1.96 * se[j])) < 0.001);
    CHECK(std::abs(rows[j].ci_est.hi - (beta(static_cast<Eigen::Index>(j)) + 1.96 * se[j])) < 0.001);
  }
  CHECK_THROWS_AS(summarize(hand_fit(n, beta, v, v), 1.0), Error);
}

TEST_CASE("summarize: centered variants add the control-mean-plus-effect row") {
  ModelSpec spec;
  spec.variant = ModelVariant::AncovaCentered;
  const auto fit = fit_procova(test::random_trial(1, 60, 3), fit_prognostic(test::random_historical(2, 50, 3)), spec);
  const auto rows = summarize(fit);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3].coefficient_label == "beta0+betaA");
  CHECK(rows[3].estimate == doctest::Approx(fit.beta_hat(0) + fit.beta_hat(1)));
  CHECK(rows[0].df == 57);
}

TEST_CASE("summarize: equivariant under rescaling the trial outcome") {
  const auto prog = fit_prognostic(test::random_historical(3, 80, 3));
  for (const auto v : {ModelVariant::Ancova, ModelVariant::AncovaCentered, ModelVariant::Anhecova}) {
    ModelSpec spec;
    spec.variant = v;
    auto t = test::random_trial(4, 70, 3);
    const auto base = summarize(fit_procova(t, prog, spec));
    const double c = 3.7;
    t.outcome *= c;
    const auto scaled = summarize(fit_procova(t, prog, spec));
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(scaled[k].estimate == doctest::Approx(c * base[k].estimate).epsilon(1e-10));
      CHECK(scaled[k].se_fix == doctest::Approx(c * base[k].se_fix).epsilon(1e-10));
      CHECK(scaled[k].se_est == doctest::Approx(c * base[k].se_est).epsilon(1e-10));
      CHECK(scaled[k].ci_est.lo == doctest::Approx(c * base[k].ci_est.lo).epsilon(1e-10));
      CHECK(scaled[k].ci_fix.hi == doctest::Approx(c * base[k].ci_fix.hi).epsilon(1e-10));
    }
  }
}

TEST_CASE("summarize: treatment SEs nearly agree while intercept SEs differ and shrink in the history size") {
  double prev_gap = std::numeric_limits<double>::infinity();
  for (const long n_hist : {100L, 200L, 400L}) {
    ScenarioConfig cfg;
    cfg.outcome_model = OutcomeModel::D;
    cfg.shift_pattern = 5;
    cfg.n_trial = 200;
    cfg.n_hist = n_hist;
    cfg.seed = 31;
    double gap0 = 0.0, gap_a = 0.0;
    const int reps = 40;
    for (int r = 0; r < reps; ++r) {
      const auto [t, h] = generate_pair(cfg, static_cast<std::uint64_t>(r));
      const auto rows = summarize(fit_procova(t, fit_prognostic(h)));
      gap0 += (rows[0].se_est - rows[0].se_fix) / rows[0].se_fix / reps;
      gap_a += (rows[1].se_est - rows[1].se_fix) / rows[1].se_fix / reps;
    }
    MESSAGE("n_hist " << n_hist << ": relative SE gap beta0 " << gap0 << ", betaA " << gap_a);
    CHECK(gap_a < 0.05);
    CHECK(gap_a < 0.25 * gap0);
    CHECK(gap0 > gap_a);
    CHECK(gap0 < prev_gap);
    prev_gap = gap0;
  }
}

TEST_CASE("variance ratio") {
  Matrix vf = Matrix::Identity(3, 3);
  Matrix ve = 2.0 * Matrix::Identity(3, 3);
  vf(2, 2) = 0.0;
  const auto fit = hand_fit(10, Vector::Zero(3), vf, ve);
  CHECK(variance_ratio(fit, Vector::Unit(3, 0)) == 2.0);
  CHECK(std::isnan(variance_ratio(fit, Vector::Unit(3, 2))));
}
