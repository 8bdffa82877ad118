#include "procova/models.hpp"

#include <string>

#include "procova/error.hpp"

namespace procova {

namespace {

void check_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::NonFinite, std::string(what) + " has non-finite entries");
}

}  // namespace

void TrialDataset::validate() const {
  const auto n = outcome.size();
  if (covariates.rows() != n || treatment.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "trial covariates/treatment/outcome row counts differ");
  }
  if (!covariate_names.empty() &&
      static_cast<Eigen::Index>(covariate_names.size()) != covariates.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "trial covariate names do not match columns");
  }
  check_finite(covariates, "trial covariates");
  check_finite(outcome, "trial outcome");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (treatment(i) != 0.0 && treatment(i) != 1.0) {
      throw Error(ErrorKind::Schema, "treatment at row " + std::to_string(i) + " is not 0/1");
    }
  }
}

void HistoricalDataset::validate() const {
  if (covariates.rows() != outcome.size()) {
    throw Error(ErrorKind::DimensionMismatch, "historical covariate/outcome row counts differ");
  }
  if (!covariate_names.empty() &&
      static_cast<Eigen::Index>(covariate_names.size()) != covariates.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "historical covariate names do not match columns");
  }
  check_finite(covariates, "historical covariates");
  check_finite(outcome, "historical outcome");
}

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::Ancova: return "ancova";
    case ModelVariant::AncovaCentered: return "ancova-centered";
    case ModelVariant::Anhecova: return "anhecova";
  }
  return "ancova";
}

ModelSpec parse_model_spec(std::string_view name) {
  if (name == "ancova") return {ModelVariant::Ancova};
  if (name == "ancova-centered") return {ModelVariant::AncovaCentered};
  if (name == "anhecova") return {ModelVariant::Anhecova};
  throw Error(ErrorKind::InvalidTarget, "unknown model '" + std::string(name) + "'");
}

Matrix prognostic_design(const HistoricalDataset& historical) {
  if (historical.size() == 0) throw Error(ErrorKind::EmptyData, "historical dataset is empty");
  historical.validate();
  return historical.covariates;
}

Vector prognostic_scores(const TrialDataset& trial, const Vector& theta) {
  if (trial.covariates.cols() != theta.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "theta has " + std::to_string(theta.size()) + " entries but trial has " +
                    std::to_string(trial.covariates.cols()) + " covariates");
  }
  return trial.covariates * theta;
}

SecondStageDesign design_from_scores(const Vector& scores, const Vector& treatment,
                                     const ModelSpec& spec) {
  const auto n = scores.size();
  if (treatment.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "scores and treatment lengths differ");
  }
  SecondStageDesign out;
  out.score_column = scores;
  out.centering_offset = (spec.centered() && n > 0) ? scores.mean() : 0.0;
  out.design.resize(n, spec.parameter_count());
  out.design.col(0).setOnes();
  out.design.col(1) = treatment;
  out.design.col(2) = scores.array() - out.centering_offset;
  if (spec.variant == ModelVariant::Anhecova) {
    out.design.col(3) = out.design.col(1).cwiseProduct(out.design.col(2));
  }
  return out;
}

SecondStageDesign second_stage_design(const TrialDataset& trial, const Vector& theta,
                                      const ModelSpec& spec) {
  return design_from_scores(prognostic_scores(trial, theta), trial.treatment, spec);
}

Vector contrast_vector(const ModelSpec& spec, Contrast target) {
  Vector e = Vector::Zero(spec.parameter_count());
  switch (target) {
    case Contrast::Intercept: e(0) = 1.0; break;
    case Contrast::Treatment: e(1) = 1.0; break;
    case Contrast::Score: e(2) = 1.0; break;
    case Contrast::ScoreByTreatment:
      if (spec.variant != ModelVariant::Anhecova) {
        throw Error(ErrorKind::InvalidTarget, "score-by-treatment term exists only in anhecova");
      }
      e(3) = 1.0;
      break;
    case Contrast::ControlMeanPlusEffect:
      if (!spec.centered()) {
        throw Error(ErrorKind::InvalidTarget,
                    "control mean plus effect is only identified with a centered score");
      }
      e(0) = 1.0;
      e(1) = 1.0;
      break;
  }
  return e;
}

std::vector<std::string> coefficient_labels(const ModelSpec& spec) {
  std::vector<std::string> labels{"beta0", "betaA", "beta1"};
  if (spec.variant == ModelVariant::Anhecova) labels.emplace_back("beta2");
  return labels;
}

}  // namespace procova
