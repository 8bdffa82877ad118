#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "procova/data.hpp"
#include "procova/models.hpp"
#include "procova/numeric.hpp"

namespace procova {

/// Population with finitely many covariate values. A is independent of W
/// with P[A=1] = pi. Given (A=a, W=w_k) the outcome takes the two values
/// mean_a(k) +/- sd with probability 1/2 each, so every expectation is an
/// exact finite sum.
struct DiscretePopulation {
  struct Atom {
    Vector w;                    // covariate vector, intercept first
    double probability = 0.0;
    double mean_control = 0.0;   // m(0, w)
    double mean_treated = 0.0;   // m(1, w)
  };

  std::vector<Atom> support;
  double pi = 0.5;
  double outcome_variance = 1.0;

  /// Throws DimensionMismatch / InvalidProbability.
  void validate() const;
  Eigen::Index covariate_dim() const { return support.empty() ? 0 : support.front().w.size(); }
};

/// Population counterparts of the sandwich pieces at (beta*(theta), theta).
/// Centered variants center at E[theta'W].
struct PopulationMoments {
  Matrix q0;
  Matrix q1;
  Matrix omega;
  Vector beta_star;
  double score_mean = 0.0;
  double score_variance = 0.0;
};

/// Throws DegenerateScore when theta'W is constant over the support.
PopulationMoments population_moments(const DiscretePopulation& pop, const Vector& theta,
                                     const ModelSpec& spec);

Vector population_beta_star(const DiscretePopulation& pop, const Vector& theta,
                            const ModelSpec& spec);

/// E[psi(O; beta, theta)] with population centering.
Vector expected_estimating_function(const DiscretePopulation& pop, const Vector& beta,
                                    const Vector& theta, const ModelSpec& spec);

/// max |e' Q0^{-1} Q1|.
double orthogonality_check(const DiscretePopulation& pop, const Vector& theta,
                           const ModelSpec& spec, const Vector& e);

/// Central difference of theta -> beta*(theta), p x q.
Matrix beta_star_jacobian_fd(const DiscretePopulation& pop, const Vector& theta,
                             const ModelSpec& spec, double step = 1e-6);

/// max |FD d beta*/d theta' - (-Q0^{-1} Q1)|.
double beta_star_derivative_check(const DiscretePopulation& pop, const Vector& theta,
                                  const ModelSpec& spec, double step = 1e-6);

/// Random population: `support_size` atoms, covariate dimension `dim`
/// (intercept included), nonlinear conditional means, pi in [0.1, 0.9].
DiscretePopulation random_population(std::uint64_t seed, int support_size, int dim);

/// Central finite difference of theta -> mean_estimating_function(trial,
/// beta, theta, spec) with step 1e-5 * max(1, |theta_j|).
Matrix q1_finite_difference(const TrialDataset& trial, const Vector& beta, const Vector& theta,
                            const ModelSpec& spec);

struct CheckResult {
  std::string name;
  double value = 0.0;       // worst discrepancy observed (or smallest gap for lower-bound checks)
  double tolerance = 0.0;
  bool lower_bound = false; // pass means value > tolerance instead of value < tolerance
  bool passed = false;
};

struct CheckOptions {
  /// Multiplies every tolerance; the "strict" profile uses 0.5.
  double tolerance_scale = 1.0;
  /// Added to Q1_hat(0,0) before the finite-difference gate. Mutation hook.
  double q1_perturbation = 0.0;
  std::uint64_t seed = 20240917;
  int populations = 20;
  int datasets = 50;
  long dataset_size = 200;
};

/// Exact orthogonality identities, the derivative identity, the population
/// first-order condition, and the Q1_hat finite-difference gate for every
/// model variant.
std::vector<CheckResult> run_checks(const CheckOptions& options = {});

}  // namespace procova
