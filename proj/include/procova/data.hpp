#pragma once

#include <string>
#include <vector>

#include "procova/numeric.hpp"

namespace procova {

/// Randomized-trial sample. Row i holds covariates W_i (first entry is the
/// intercept), treatment A_i in {0,1}, and outcome Y_i.
struct TrialDataset {
  Matrix covariates;  // n x q
  Vector treatment;   // n, entries 0.0 or 1.0
  Vector outcome;     // n
  std::vector<std::string> covariate_names;  // q names, "(intercept)" first

  Eigen::Index size() const { return outcome.size(); }
  Eigen::Index covariate_dim() const { return covariates.cols(); }

  /// Throws DimensionMismatch / NonFinite / Schema (treatment not 0/1).
  void validate() const;
};

/// Historical control sample used to learn the prognostic score. Treatment
/// is identically 0 and therefore not stored.
struct HistoricalDataset {
  Matrix covariates;  // n_hist x q
  Vector outcome;     // n_hist
  std::vector<std::string> covariate_names;

  Eigen::Index size() const { return outcome.size(); }
  Eigen::Index covariate_dim() const { return covariates.cols(); }

  void validate() const;
};

inline constexpr const char* kInterceptName = "(intercept)";

}  // namespace procova
