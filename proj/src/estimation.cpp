#include "procova/estimation.hpp"

#include <string>

#include "procova/error.hpp"
#include "procova/variance.hpp"

namespace procova {

PrognosticFit fit_prognostic(const HistoricalDataset& historical) {
  const Matrix w = prognostic_design(historical);
  const auto n = w.rows();
  const auto q = w.cols();
  if (n <= q) {
    throw Error(ErrorKind::RankDeficient,
                "historical sample of " + std::to_string(n) + " rows cannot identify " +
                    std::to_string(q) + " prognostic coefficients with residual variation");
  }

  PrognosticFit fit;
  fit.theta_hat = solve_least_squares(w, historical.outcome);
  fit.n_hist = n;
  fit.residuals = historical.outcome - w * fit.theta_hat;
  const double inv_n = 1.0 / static_cast<double>(n);
  fit.q2_hat = symmetrize(-inv_n * (w.transpose() * w));
  const Matrix weighted = fit.residuals.array().square().matrix().asDiagonal() * w;
  fit.q3_hat = symmetrize(inv_n * (w.transpose() * weighted));
  return fit;
}

ProcovaFit fit_procova(const TrialDataset& trial, const PrognosticFit& prog,
                       const ModelSpec& spec) {
  trial.validate();
  const auto n = trial.size();
  if (n == 0) throw Error(ErrorKind::EmptyData, "trial dataset is empty");
  const double first = trial.treatment(0);
  if ((trial.treatment.array() == first).all()) {
    throw Error(ErrorKind::SingleArm, "all trial subjects have treatment " +
                                          std::to_string(static_cast<int>(first)));
  }
  if (prog.n_hist <= 0) throw Error(ErrorKind::EmptyData, "prognostic fit has no historical rows");

  ProcovaFit fit;
  fit.spec = spec;
  fit.n_trial = n;
  fit.n_hist = prog.n_hist;
  fit.theta_hat = prog.theta_hat;
  fit.design = second_stage_design(trial, prog.theta_hat, spec);
  fit.beta_hat = solve_least_squares(fit.design.design, trial.outcome);
  fit.residuals = trial.outcome - fit.design.design * fit.beta_hat;

  SandwichComponents parts;
  std::tie(parts.q0_hat, parts.omega_hat) = compute_q0_omega(fit.design, fit.residuals);
  parts.q1_hat = compute_q1(trial, fit.beta_hat, prog.theta_hat, spec);
  parts.v_theta_hat = compute_v_theta(prog);
  parts.kappa_hat = static_cast<double>(n) / static_cast<double>(prog.n_hist);

  const auto sandwich = assemble(parts);
  fit.q0_hat = std::move(parts.q0_hat);
  fit.omega_hat = std::move(parts.omega_hat);
  fit.q1_hat = std::move(parts.q1_hat);
  fit.v_theta_hat = std::move(parts.v_theta_hat);
  fit.kappa_hat = parts.kappa_hat;
  fit.v_fix = sandwich.v_fix;
  fit.v_est = sandwich.v_est;
  return fit;
}

}  // namespace procova
