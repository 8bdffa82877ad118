#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "procova/data.hpp"
#include "procova/numeric.hpp"

namespace procova {

/// Second-stage working model.
///
///  - Ancova:         X = (1, A, s)
///  - AncovaCentered: X = (1, A, s - mean(s))
///  - Anhecova:       X = (1, A, s - mean(s), A (s - mean(s)))
///
/// where s = theta' W is the prognostic score and mean(s) is taken over the
/// trial sample.
enum class ModelVariant { Ancova, AncovaCentered, Anhecova };

struct ModelSpec {
  ModelVariant variant = ModelVariant::Ancova;

  int parameter_count() const { return variant == ModelVariant::Anhecova ? 4 : 3; }
  bool centered() const { return variant != ModelVariant::Ancova; }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

std::string_view to_string(ModelVariant v);
/// Accepts "ancova", "ancova-centered", "anhecova". Throws InvalidTarget.
ModelSpec parse_model_spec(std::string_view name);

struct SecondStageDesign {
  Matrix design;             // n x p
  double centering_offset;   // sample mean subtracted from the scores; 0 for Ancova
  Vector score_column;       // raw scores theta' W_i
};

enum class Contrast { Intercept, Treatment, Score, ScoreByTreatment, ControlMeanPlusEffect };

/// Rows are the historical covariate vectors. Throws EmptyData.
Matrix prognostic_design(const HistoricalDataset& historical);

/// Scores theta' W_i for every trial row. Throws DimensionMismatch.
Vector prognostic_scores(const TrialDataset& trial, const Vector& theta);

/// Design built from precomputed scores; this is the plug-in point for any
/// score function, linear or not.
SecondStageDesign design_from_scores(const Vector& scores, const Vector& treatment,
                                     const ModelSpec& spec);

SecondStageDesign second_stage_design(const TrialDataset& trial, const Vector& theta,
                                      const ModelSpec& spec);

/// Throws InvalidTarget when the contrast does not exist for the model.
Vector contrast_vector(const ModelSpec& spec, Contrast target);

/// "beta0", "betaA", "beta1", "beta2" (Anhecova only).
std::vector<std::string> coefficient_labels(const ModelSpec& spec);

}  // namespace procova
