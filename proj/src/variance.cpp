#include "procova/variance.hpp"

#include <string>

#include "procova/error.hpp"

namespace procova {

std::pair<Matrix, Matrix> compute_q0_omega(const SecondStageDesign& design,
                                           const Vector& residuals) {
  const Matrix& x = design.design;
  const auto n = x.rows();
  if (residuals.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "residuals have " + std::to_string(residuals.size()) + " entries, design has " +
                    std::to_string(n) + " rows");
  }
  if (n == 0) throw Error(ErrorKind::EmptyData, "empty second-stage design");
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix q0 = -inv_n * (x.transpose() * x);
  const Matrix weighted = residuals.array().square().matrix().asDiagonal() * x;
  Matrix omega = inv_n * (x.transpose() * weighted);
  return {symmetrize(q0), symmetrize(omega)};
}

Vector mean_estimating_function(const TrialDataset& trial, const Vector& beta,
                                const Vector& theta, const ModelSpec& spec) {
  const auto design = second_stage_design(trial, theta, spec);
  if (beta.size() != design.design.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "beta length does not match the model");
  }
  const Vector residual = trial.outcome - design.design * beta;
  return design.design.transpose() * residual / static_cast<double>(trial.size());
}

Matrix compute_q1(const TrialDataset& trial, const Vector& beta_hat, const Vector& theta_hat,
                  const ModelSpec& spec) {
  const auto design = second_stage_design(trial, theta_hat, spec);
  const Matrix& x = design.design;
  const auto n = x.rows();
  const auto p = x.cols();
  if (beta_hat.size() != p) {
    throw Error(ErrorKind::DimensionMismatch, "beta length does not match the model");
  }
  if (n == 0) throw Error(ErrorKind::EmptyData, "empty trial dataset");

  // d(score_i)/d(theta) is W_i, or W_i - mean(W) once the score is centered.
  Matrix grad = trial.covariates;
  if (spec.centered()) grad.rowwise() -= trial.covariates.colwise().mean();

  const Vector residual = trial.outcome - x * beta_hat;
  const bool interaction = spec.variant == ModelVariant::Anhecova;

  // d psi_i / d theta' = c_i grad_i', with
  //   c_i = r_i * dX_i/d(score) - (beta1 + beta2 A_i) X_i.
  Matrix coef(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = trial.treatment(i);
    const double slope = beta_hat(2) + (interaction ? beta_hat(3) * a : 0.0);
    coef.row(i) = -slope * x.row(i);
    coef(i, 2) += residual(i);
    if (interaction) coef(i, 3) += residual(i) * a;
  }
  return coef.transpose() * grad / static_cast<double>(n);
}

Matrix compute_v_theta(const PrognosticFit& prog) {
  const Matrix q2_inv = invert(prog.q2_hat);
  return symmetrize(q2_inv * prog.q3_hat * q2_inv.transpose());
}

SandwichEstimates assemble(const SandwichComponents& c) {
  const auto p = c.q0_hat.rows();
  if (c.omega_hat.rows() != p || c.omega_hat.cols() != p || c.q1_hat.rows() != p ||
      c.q1_hat.cols() != c.v_theta_hat.rows() || c.v_theta_hat.rows() != c.v_theta_hat.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "sandwich component shapes disagree");
  }
  const Matrix q0_inv = invert(c.q0_hat);
  const Matrix bread_q1 = q0_inv * c.q1_hat;
  SandwichEstimates out;
  out.v_fix = symmetrize(q0_inv * c.omega_hat * q0_inv.transpose());
  const Matrix add_on = symmetrize(bread_q1 * c.v_theta_hat * bread_q1.transpose());
  out.v_est = out.v_fix + c.kappa_hat * add_on;
  return out;
}

}  // namespace procova
