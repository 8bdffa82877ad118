#pragma once

#include <utility>

#include "procova/data.hpp"
#include "procova/estimation.hpp"
#include "procova/models.hpp"
#include "procova/numeric.hpp"

namespace procova {

struct SandwichComponents {
  Matrix q0_hat;       // p x p, -(1/n) sum X X'
  Matrix omega_hat;    // p x p, (1/n) sum e^2 X X'
  Matrix q1_hat;       // p x q
  Matrix v_theta_hat;  // q x q
  double kappa_hat = 0.0;  // n / n_hist
};

struct SandwichEstimates {
  Matrix v_fix;
  Matrix v_est;
};

/// Returns (Q0_hat, Omega_hat). Throws DimensionMismatch.
std::pair<Matrix, Matrix> compute_q0_omega(const SecondStageDesign& design,
                                           const Vector& residuals);

/// (1/n) sum psi(O_i; beta, theta) with psi = (Y - beta'X_theta) X_theta and
/// X_theta built exactly as the fitted model builds it (sample centering
/// for the centered variants, recomputed at every theta).
Vector mean_estimating_function(const TrialDataset& trial, const Vector& beta,
                                const Vector& theta, const ModelSpec& spec);

/// Analytic Jacobian of mean_estimating_function in theta, evaluated at
/// (beta_hat, theta_hat). Row j is the derivative of the j-th estimating
/// equation. For the centered variants the sample score mean moves with
/// theta, so its derivative (the mean covariate vector) enters through the
/// chain rule.
Matrix compute_q1(const TrialDataset& trial, const Vector& beta_hat, const Vector& theta_hat,
                  const ModelSpec& spec);

/// Q2^{-1} Q3 Q2^{-T}. Throws Singular.
Matrix compute_v_theta(const PrognosticFit& prog);

/// V_fix = Q0^{-1} Omega Q0^{-T}; V_est = V_fix + kappa Q0^{-1} Q1 V_theta Q1' Q0^{-T}.
/// Both outputs are symmetrized. Throws Singular.
SandwichEstimates assemble(const SandwichComponents& components);

}  // namespace procova
