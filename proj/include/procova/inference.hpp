#pragma once

#include <string>
#include <utility>
#include <vector>

#include "procova/estimation.hpp"

namespace procova {

inline constexpr double kDefaultLevel = 0.95;

/// Student-t distribution function.
double t_cdf(double df, double x);

/// Inverse of t_cdf, found by safeguarded Newton iteration on the upper
/// tail. Throws InvalidProbability unless 0 < p < 1, and for df < 1.
double t_quantile(double df, double p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct InferenceResult {
  std::string coefficient_label;
  Vector contrast;
  double estimate = 0.0;
  double se_fix = 0.0;
  double se_est = 0.0;
  Interval ci_fix;
  Interval ci_est;
  long df = 0;
  double level = kDefaultLevel;
};

/// One row per coefficient, plus "beta0+betaA" for the centered variants.
/// df = n - p. Throws InvalidProbability for level outside (0, 1).
std::vector<InferenceResult> summarize(const ProcovaFit& fit, double level = kDefaultLevel);

/// e'V_est e / e'V_fix e; NaN when e'V_fix e is zero.
double variance_ratio(const ProcovaFit& fit, const Vector& e);

}  // namespace procova
