#include <random>

#include "doctest.h"
#include "procova/error.hpp"
#include "procova/rng.hpp"
#include "procova/simulation.hpp"
#include "support.hpp"

using namespace procova;

TEST_CASE("xoshiro streams are reproducible and distinct") {
  Xoshiro256 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs_c = differs_c || x != c();
    differs_d = differs_d || x != d();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("xoshiro256** reference output") {
  // Published first outputs of xoshiro256** from state {1, 2, 3, 4}.
  auto raw = Xoshiro256::from_state(1, 2, 3, 4);
  CHECK(raw() == 11520ULL);
  CHECK(raw() == 0ULL);
  CHECK(raw() == 1509978240ULL);
  CHECK(raw() == 1215971899390074240ULL);
}

TEST_CASE("shift patterns and scenario parsing") {
  CHECK(shift_parameters(1).b == 0.0);
  CHECK(shift_parameters(5).b == -2.0);
  CHECK(shift_parameters(5).c == 0.5);
  CHECK(shift_parameters(9).b == -5.0);
  CHECK(shift_parameters(9).c == 1.5);
  CHECK_THROWS_AS(shift_parameters(0), Error);
  CHECK_THROWS_AS(shift_parameters(10), Error);
  CHECK(parse_outcome_model("D") == OutcomeModel::D);
  CHECK_THROWS_AS(parse_outcome_model("E"), Error);
  ScenarioConfig cfg;
  cfg.outcome_model = OutcomeModel::C;
  cfg.shift_pattern = 7;
  CHECK(cfg.label() == "C-7");
}

TEST_CASE("generate_pair is deterministic in (seed, rep_index)") {
  ScenarioConfig cfg;
  cfg.outcome_model = OutcomeModel::D;
  cfg.shift_pattern = 5;
  cfg.n_trial = 300;
  cfg.n_hist = 200;
  cfg.seed = 77;
  const auto [t1, h1] = generate_pair(cfg, 12);
  const auto [t2, h2] = generate_pair(cfg, 12);
  CHECK(t1.covariates == t2.covariates);
  CHECK(t1.treatment == t2.treatment);
  CHECK(t1.outcome == t2.outcome);
  CHECK(h1.covariates == h2.covariates);
  CHECK(h1.outcome == h2.outcome);
  const auto [t3, h3] = generate_pair(cfg, 13);
  CHECK_FALSE(t1.outcome == t3.outcome);
}

TEST_CASE("potential-outcome average treatment effect") {
  CHECK(std::abs(potential_outcome_ate(OutcomeModel::A, 1'000'000, 5) - 0.835) < 0.01);
  CHECK(true_targets(OutcomeModel::A) == 0.835);
  CHECK(true_targets(OutcomeModel::C) == 0.835);
}

TEST_CASE("heterogeneous-effect scenarios agree with the nominal effect at 10^7 samples") {
  for (const auto m : {OutcomeModel::B, OutcomeModel::D}) {
    const double ate = potential_outcome_ate(m, 10'000'000, 2024);
    CHECK(std::abs(ate - true_targets(m)) < 0.005);
  }
}

TEST_CASE("covariate moments and historical support") {
  ScenarioConfig cfg;
  cfg.n_trial = 1'000'000;
  cfg.n_hist = 10;
  cfg.seed = 3;
  const auto [t, h] = generate_pair(cfg, 0);
  CHECK(std::abs(t.covariates.col(4).mean() - 1.25) < 0.01);
  CHECK(std::abs(t.covariates.col(5).mean() - 0.5) < 0.01);
  CHECK(std::abs(t.treatment.mean() - 0.5) < 0.01);

  ScenarioConfig d5;
  d5.outcome_model = OutcomeModel::D;
  d5.shift_pattern = 5;
  d5.n_trial = 100;
  d5.n_hist = 100'000;
  LatentDraws latents;
  const auto [td, hd] = generate_pair(d5, 0, &latents);
  CHECK(latents.historical_u.minCoeff() >= 0.5);
  CHECK(latents.historical_u.maxCoeff() <= 1.5);
  CHECK(latents.trial_u.minCoeff() >= 0.0);
  CHECK(latents.trial_u.maxCoeff() <= 1.0);
  CHECK(hd.covariates.col(1).minCoeff() >= -4.0);
  CHECK(hd.covariates.col(1).maxCoeff() <= -1.0);
}

TEST_CASE("replications: rigged targets give full or zero coverage") {
  ScenarioConfig cfg;
  cfg.n_trial = 200;
  cfg.n_hist = 200;
  cfg.replications = 1;
  cfg.seed = 9;
  const auto [t, h] = generate_pair(cfg, 0);
  const auto once = run_replication(cfg, 0, {0.0, 0.0, 0.0});
  REQUIRE(once.ok);
  // Targets equal to the estimates are always covered.
  const auto m = run_replications(cfg, once.estimate, 1);
  for (const auto& c : m.coefficients) {
    CHECK(c.coverage_fix == 1.0);
    CHECK(c.coverage_est == 1.0);
  }
  const auto far = run_replications(cfg, {1e6, 1e6, 1e6}, 1);
  for (const auto& c : far.coefficients) CHECK(c.coverage_est == 0.0);
}

TEST_CASE("replications: every completed replication has ratio at least one") {
  ScenarioConfig cfg;
  cfg.outcome_model = OutcomeModel::D;
  cfg.shift_pattern = 5;
  cfg.n_trial = 100;
  cfg.n_hist = 60;
  cfg.seed = 5;
  for (const auto v : {ModelVariant::Ancova, ModelVariant::AncovaCentered, ModelVariant::Anhecova}) {
    cfg.spec.variant = v;
    for (std::uint64_t r = 0; r < 50; ++r) {
      const auto o = run_replication(cfg, r, std::vector<double>(v == ModelVariant::Ancova ? 3 : v == ModelVariant::Anhecova ? 5 : 4));
      REQUIRE(o.ok);
      for (const double ratio : o.variance_ratio) CHECK(ratio >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("replications: results independent of thread count") {
  ScenarioConfig cfg;
  cfg.outcome_model = OutcomeModel::B;
  cfg.shift_pattern = 6;
  cfg.n_trial = 80;
  cfg.n_hist = 40;
  cfg.replications = 64;
  cfg.seed = 123;
  cfg.spec.variant = ModelVariant::Anhecova;
  const auto targets = std::vector<double>{0, 0.835, 0, 0, 0};
  const auto a = run_replications(cfg, targets, 1);
  const auto b = run_replications(cfg, targets, 8);
  const auto c = run_replications(cfg, targets, 3);
  REQUIRE(a.coefficients.size() == b.coefficients.size());
  for (std::size_t j = 0; j < a.coefficients.size(); ++j) {
    for (const auto* other : {&b, &c}) {
      const auto& x = a.coefficients[j];
      const auto& y = other->coefficients[j];
      CHECK(x.mean_estimate == y.mean_estimate);
      CHECK(x.sd_estimate == y.sd_estimate);
      CHECK(x.coverage_fix == y.coverage_fix);
      CHECK(x.coverage_est == y.coverage_est);
      CHECK(x.mean_variance_ratio == y.mean_variance_ratio);
      CHECK(x.min_variance_ratio == y.min_variance_ratio);
    }
  }
}

TEST_CASE("replications: failures are counted, total failure raises") {
  ScenarioConfig cfg;
  cfg.n_trial = 3;  // fewer rows than parameters plus one; inference impossible
  cfg.n_hist = 50;
  cfg.replications = 4;
  try {
    run_replications(cfg, {0, 0, 0}, 2);
    FAIL("expected AllReplicationsFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AllReplicationsFailed);
  }

  ScenarioConfig small;
  small.n_trial = 4;  // a single-arm draw has probability 1/8
  small.n_hist = 50;
  small.replications = 200;
  small.seed = 1;
  const auto m = run_replications(small, {0, 0.835, 0}, 4);
  CHECK(m.replications_completed + m.replications_failed == 200);
  CHECK(m.replications_failed > 0);
}

TEST_CASE("coefficient targets: registry matches a fresh plug-in evaluation") {
  ModelSpec spec;
  spec.variant = ModelVariant::Anhecova;
  const auto frozen = coefficient_targets(OutcomeModel::D, 5, spec);
  const auto fresh = compute_coefficient_targets(OutcomeModel::D, 5, spec, 2'000'000, 99, 4);
  REQUIRE(frozen.size() == fresh.size());
  CHECK(frozen[1] == 0.835);
  for (std::size_t j = 0; j < frozen.size(); ++j) {
    if (j == 1) continue;
    CHECK(std::abs(frozen[j] - fresh[j]) < 0.02 * (1.0 + std::abs(fresh[j])));
  }
}
