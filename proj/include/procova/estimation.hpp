#pragma once

#include "procova/data.hpp"
#include "procova/models.hpp"
#include "procova/numeric.hpp"

namespace procova {

/// First-stage OLS of historical outcome on covariates, plus the pieces of
/// its sandwich variance.
struct PrognosticFit {
  Vector theta_hat;     // q
  Eigen::Index n_hist = 0;
  Vector residuals;     // n_hist
  Matrix q2_hat;        // -(1/n_hist) sum W W'
  Matrix q3_hat;        // (1/n_hist) sum e^2 W W'
};

/// Second-stage fit with both sandwich variance estimators. `v_fix` treats
/// the prognostic coefficients as known; `v_est` adds the first-stage term.
/// Both are variances of sqrt(n) (beta_hat - beta), so a standard error is
/// sqrt(e' V e / n).
struct ProcovaFit {
  Vector beta_hat;
  ModelSpec spec;
  Eigen::Index n_trial = 0;
  Eigen::Index n_hist = 0;
  Vector residuals;
  SecondStageDesign design;
  Vector theta_hat;
  Matrix q0_hat;
  Matrix omega_hat;
  Matrix q1_hat;
  Matrix v_theta_hat;
  double kappa_hat = 0.0;
  Matrix v_fix;
  Matrix v_est;
};

/// Throws EmptyData for an empty sample and RankDeficient when the
/// historical design has no residual degrees of freedom or is collinear.
PrognosticFit fit_prognostic(const HistoricalDataset& historical);

/// Throws SingleArm when every subject has the same treatment, RankDeficient
/// when the second-stage design is degenerate (for instance a constant
/// score), DimensionMismatch when covariate dimensions disagree.
ProcovaFit fit_procova(const TrialDataset& trial, const PrognosticFit& prog,
                       const ModelSpec& spec = {});

}  // namespace procova
