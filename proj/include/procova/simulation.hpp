#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "procova/data.hpp"
#include "procova/models.hpp"

namespace procova {

/// Outcome-mean families. A/B: linear control mean (correct prognostic
/// model); C/D: nonlinear control mean. A/C: constant treatment effect;
/// B/D: heterogeneous effect.
enum class OutcomeModel { A, B, C, D };

inline constexpr double kTrueAte = 0.835;
inline constexpr int kSimulationCovariates = 7;  // W1..W7, intercept excluded

struct CovariateShift {
  double b = 0.0;  // location shift of historical W1
  double c = 0.0;  // location shift of historical U
};

/// Patterns 1..9 -> (b, c). Throws InvalidTarget for anything else.
CovariateShift shift_parameters(int pattern);

OutcomeModel parse_outcome_model(std::string_view name);
char to_char(OutcomeModel m);

struct ScenarioConfig {
  OutcomeModel outcome_model = OutcomeModel::A;
  int shift_pattern = 1;
  long n_trial = 100;
  long n_hist = 100;
  long replications = 1000;
  std::uint64_t seed = 0;
  ModelSpec spec;
  double level = 0.95;

  /// Throws InvalidTarget / InvalidProbability / EmptyData.
  void validate() const;
  /// "D-5" style identifier.
  std::string label() const;
};

/// Conditional outcome means. `w` holds W1..W7 (no intercept).
double control_mean(OutcomeModel model, const double* w, double u);
double treated_mean(OutcomeModel model, const double* w, double u);

/// Unobserved U draws behind a generated pair.
struct LatentDraws {
  Vector trial_u;
  Vector historical_u;
};

/// Trial and historical samples for one replication. The random stream is
/// keyed by (config.seed, rep_index) only, so any replication can be
/// regenerated in isolation. When `latents` is given it receives U.
std::pair<TrialDataset, HistoricalDataset> generate_pair(const ScenarioConfig& config,
                                                         std::uint64_t rep_index,
                                                         LatentDraws* latents = nullptr);

/// Average treatment effect for the scenario family (0.835 for all four).
double true_targets(OutcomeModel model);

/// Mean of Y(1) - Y(0) over `samples` trial subjects with both potential
/// outcomes drawn.
double potential_outcome_ate(OutcomeModel model, long samples, std::uint64_t seed);

/// Population coefficients beta*(theta*) for every row produced by
/// `summarize` (coefficients, then beta0+betaA for centered variants),
/// looked up from the frozen registry.
std::vector<double> coefficient_targets(OutcomeModel model, int shift_pattern,
                                        const ModelSpec& spec);

/// Large-sample plug-in evaluation used to build the registry: theta* from
/// `samples` historical draws, then beta*(theta*) from `samples` trial
/// covariate draws with both treatment arms weighted by 1/2 and outcomes
/// replaced by their conditional means.
std::vector<double> compute_coefficient_targets(OutcomeModel model, int shift_pattern,
                                                const ModelSpec& spec, long samples,
                                                std::uint64_t seed, int threads = 1);

struct CoefficientMetrics {
  std::string label;
  double target = 0.0;
  double coverage_fix = 0.0;
  double coverage_est = 0.0;
  double mean_variance_ratio = 0.0;
  double min_variance_ratio = 0.0;
  double mean_estimate = 0.0;
  double sd_estimate = 0.0;
  double mean_se_fix = 0.0;
  double mean_se_est = 0.0;
};

struct ReplicationMetrics {
  ScenarioConfig config;
  std::vector<CoefficientMetrics> coefficients;
  long replications_completed = 0;
  long replications_failed = 0;
  std::string rng_algorithm;
};

/// Per-replication record; `ok` is false when the fit failed (rank
/// deficiency, single arm).
struct ReplicationOutcome {
  bool ok = false;
  std::string failure;
  std::vector<double> estimate;
  std::vector<double> se_fix;
  std::vector<double> se_est;
  std::vector<double> variance_ratio;
  std::vector<bool> covered_fix;
  std::vector<bool> covered_est;
};

ReplicationOutcome run_replication(const ScenarioConfig& config, std::uint64_t rep_index,
                                   const std::vector<double>& targets);

/// Aggregate outcomes in replication-index order. Throws
/// AllReplicationsFailed when nothing completed.
ReplicationMetrics aggregate_replications(const ScenarioConfig& config,
                                          const std::vector<double>& targets,
                                          const std::vector<ReplicationOutcome>& outcomes);

/// Runs every replication on `threads` workers. Results do not depend on
/// the thread count.
ReplicationMetrics run_replications(const ScenarioConfig& config, int threads = 1);

/// Like run_replications but with explicit coverage targets.
ReplicationMetrics run_replications(const ScenarioConfig& config,
                                    const std::vector<double>& targets, int threads);

}  // namespace procova
