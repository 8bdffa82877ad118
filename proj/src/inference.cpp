#include "procova/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "procova/error.hpp"

namespace procova {

namespace {

// P[T > x] for x >= 0.
double upper_tail(double df, double x) {
  return 0.5 * boost::math::ibeta(0.5 * df, 0.5, df / (df + x * x));
}

double t_density(double df, double x) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

}  // namespace

double t_cdf(double df, double x) {
  if (!(df > 0.0)) throw Error(ErrorKind::InvalidProbability, "degrees of freedom must be positive");
  if (std::isnan(x)) return x;
  return x >= 0.0 ? 1.0 - upper_tail(df, x) : upper_tail(df, -x);
}

double t_quantile(double df, double p) {
  if (!(df >= 1.0)) throw Error(ErrorKind::InvalidProbability, "degrees of freedom must be >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::InvalidProbability, "probability must lie strictly inside (0, 1)");
  }
  if (p == 0.5) return 0.0;
  const double tail = p > 0.5 ? 1.0 - p : p;

  // Bracket the root of upper_tail(x) = tail on [lo, hi]; upper_tail decreases.
  double lo = 0.0;
  double hi = 1.0;
  while (upper_tail(df, hi) > tail) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) break;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = upper_tail(df, x) - tail;
    if (f == 0.0) break;
    if (f > 0.0) lo = x; else hi = x;
    double next = x + f / t_density(df, x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x)) {
      x = next;
      break;
    }
    x = next;
  }
  return p > 0.5 ? x : -x;
}

double variance_ratio(const ProcovaFit& fit, const Vector& e) {
  const double fix = quadratic_form(e, fit.v_fix);
  if (fix == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return quadratic_form(e, fit.v_est) / fix;
}

std::vector<InferenceResult> summarize(const ProcovaFit& fit, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidProbability, "confidence level must lie inside (0, 1)");
  }
  const int p = fit.spec.parameter_count();
  const long df = static_cast<long>(fit.n_trial) - p;
  if (df < 1) {
    throw Error(ErrorKind::RankDeficient, "no residual degrees of freedom for inference");
  }
  const double crit = t_quantile(static_cast<double>(df), 1.0 - 0.5 * (1.0 - level));
  const double n = static_cast<double>(fit.n_trial);

  std::vector<std::pair<std::string, Vector>> rows;
  const auto labels = coefficient_labels(fit.spec);
  for (int j = 0; j < p; ++j) rows.emplace_back(labels[j], Vector::Unit(p, j));
  if (fit.spec.centered()) {
    rows.emplace_back("beta0+betaA", contrast_vector(fit.spec, Contrast::ControlMeanPlusEffect));
  }

  std::vector<InferenceResult> out;
  out.reserve(rows.size());
  for (auto& [label, e] : rows) {
    InferenceResult r;
    r.coefficient_label = label;
    r.estimate = e.dot(fit.beta_hat);
    // Clamp tiny negative rounding on exactly-zero variances.
    r.se_fix = std::sqrt(std::max(0.0, quadratic_form(e, fit.v_fix)) / n);
    r.se_est = std::sqrt(std::max(0.0, quadratic_form(e, fit.v_est)) / n);
    r.ci_fix = {r.estimate - crit * r.se_fix, r.estimate + crit * r.se_fix};
    r.ci_est = {r.estimate - crit * r.se_est, r.estimate + crit * r.se_est};
    r.df = df;
    r.level = level;
    r.contrast = std::move(e);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace procova
