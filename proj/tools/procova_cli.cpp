#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "procova/error.hpp"
#include "procova/estimation.hpp"
#include "procova/inference.hpp"
#include "procova/oracle.hpp"
#include "procova/report.hpp"
#include "procova/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitEstimation = 3;

struct Options {
  std::string trial;
  std::string historical;
  std::string model = "ancova";
  double level = procova::kDefaultLevel;
  std::uint64_t seed = 1;
  long reps = 1000;
  int threads = 1;
  std::string out;
  std::string format = "json";
  std::string scenario = "A";
  int shift = 1;
  long n = 100;
  long n_hist = 1000;
  std::string profile = "default";
  double perturb_q1 = 0.0;
  long samples = 10'000'000;
  std::uint64_t target_seed = 20250101;
};

int exit_code_for(procova::ErrorKind kind) {
  using procova::ErrorKind;
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::EmptyData:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidTarget:
    case ErrorKind::InvalidProbability:
    case ErrorKind::NonFinite:
      return kExitInput;
    default:
      return kExitEstimation;
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw procova::Error(procova::ErrorKind::Schema, "cannot write '" + path + "'");
  out << text;
}

void check_level(double level) {
  if (!(level > 0.5 && level < 1.0)) {
    throw procova::Error(procova::ErrorKind::InvalidProbability, "--level must lie in (0.5, 1)");
  }
}

int cmd_fit(const Options& o) {
  check_level(o.level);
  const auto spec = procova::parse_model_spec(o.model);
  const auto trial = procova::read_trial_csv(o.trial);
  const auto historical = procova::read_historical_csv(o.historical, trial.covariate_names);
  if (trial.size() < 10) {
    throw procova::Error(procova::ErrorKind::EmptyData, "trial CSV needs at least 10 rows");
  }
  const auto prog = procova::fit_prognostic(historical);
  const auto fit = procova::fit_procova(trial, prog, spec);
  const auto rows = procova::summarize(fit, o.level);
  write_output(o.out, o.format == "csv" ? procova::fit_report_csv(fit, rows)
                                        : procova::fit_report_json(fit, rows));
  return kExitOk;
}

procova::ScenarioConfig scenario_config(const Options& o) {
  procova::ScenarioConfig cfg;
  cfg.outcome_model = procova::parse_outcome_model(o.scenario);
  cfg.shift_pattern = o.shift;
  cfg.n_trial = o.n;
  cfg.n_hist = o.n_hist;
  cfg.replications = o.reps;
  cfg.seed = o.seed;
  cfg.spec = procova::parse_model_spec(o.model);
  cfg.level = o.level;
  check_level(cfg.level);
  if (cfg.n_trial < 10) {
    throw procova::Error(procova::ErrorKind::EmptyData, "--n must be at least 10");
  }
  cfg.validate();
  return cfg;
}

int cmd_simulate(const Options& o) {
  const auto cfg = scenario_config(o);
  const auto metrics = procova::run_replications(cfg, o.threads);
  if (!o.out.empty()) {
    write_output(o.out + ".csv", procova::metrics_csv(metrics));
    write_output(o.out + ".json", procova::metrics_json(metrics));
  } else {
    write_output("", o.format == "csv" ? procova::metrics_csv(metrics)
                                       : procova::metrics_json(metrics));
  }
  if (metrics.replications_failed > 0) {
    std::cerr << "warning: " << metrics.replications_failed << " of " << cfg.replications
              << " replications failed\n";
  }
  return kExitOk;
}

int cmd_check(const Options& o) {
  procova::CheckOptions opts;
  if (o.profile == "strict") {
    opts.tolerance_scale = 0.5;
  } else if (o.profile != "default") {
    throw procova::Error(procova::ErrorKind::InvalidTarget, "unknown profile '" + o.profile + "'");
  }
  opts.q1_perturbation = o.perturb_q1;
  const auto results = procova::run_checks(opts);
  bool all = true;
  std::printf("%-52s %14s %12s  %s\n", "check", "value", "tolerance", "result");
  for (const auto& r : results) {
    std::printf("%-52s %14.6e %s%11.3e  %s\n", r.name.c_str(), r.value, r.lower_bound ? ">" : "<",
                r.tolerance, r.passed ? "PASS" : "FAIL");
    all = all && r.passed;
  }
  if (!all) {
    for (const auto& r : results) {
      if (!r.passed) {
        std::fprintf(stderr, "check failed: %s (max discrepancy %.6e)\n", r.name.c_str(), r.value);
      }
    }
  }
  std::fflush(stdout);
  return all ? kExitOk : kExitCheckFailed;
}

// Prints the frozen coefficient-target table in source form.
int cmd_targets(const Options& o) {
  std::printf("// model, shift, variant, targets (beta0, betaA, beta1[, beta2 | beta0+betaA])\n");
  for (const char model : {'A', 'B', 'C', 'D'}) {
    for (int shift = 1; shift <= 9; ++shift) {
      for (const auto variant : {procova::ModelVariant::Ancova, procova::ModelVariant::AncovaCentered,
                                 procova::ModelVariant::Anhecova}) {
        procova::ModelSpec spec;
        spec.variant = variant;
        const auto t = procova::compute_coefficient_targets(
            procova::parse_outcome_model(std::string(1, model)), shift, spec, o.samples, o.target_seed,
            o.threads);
        std::printf("    {'%c', %d, %d, {", model, shift, static_cast<int>(variant));
        for (std::size_t i = 0; i < t.size(); ++i) std::printf("%s%.17g", i ? ", " : "", t[i]);
        std::printf("}},\n");
        std::fflush(stdout);
      }
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prognostic covariate adjustment for randomized trials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "procova 0.1.0");
  Options o;

  const auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--model", o.model, "Second-stage model")
        ->check(CLI::IsMember({"ancova", "ancova-centered", "anhecova"}));
    cmd->add_option("--level", o.level, "Confidence level");
    cmd->add_option("--out", o.out, "Output path (simulate: prefix for .csv and .json)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* fit = app.add_subcommand("fit", "Fit the two-stage model to trial and historical CSVs");
  fit->add_option("--trial", o.trial, "Trial CSV (y, a, covariates)")->required();
  fit->add_option("--historical", o.historical, "Historical CSV (y, covariates)")->required();
  add_common(fit);

  auto* sim = app.add_subcommand("simulate", "Run replications of a simulation scenario");
  add_common(sim);
  sim->add_option("--scenario", o.scenario, "Outcome model")->check(CLI::IsMember({"A", "B", "C", "D"}));
  sim->add_option("--shift", o.shift, "Covariate-shift pattern")->check(CLI::Range(1, 9));
  sim->add_option("--n", o.n, "Trial sample size");
  sim->add_option("--n-hist", o.n_hist, "Historical sample size");
  sim->add_option("--reps", o.reps, "Replications");
  sim->add_option("--seed", o.seed, "Seed");
  sim->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Run the oracle and finite-difference checks");
  check->add_option("--profile", o.profile, "Tolerance profile")
      ->check(CLI::IsMember({"default", "strict"}));
  check->add_option("--perturb-q1", o.perturb_q1, "Added to one entry of Q1_hat (test hook)");

  auto* targets = app.add_subcommand("targets", "Regenerate the coefficient-target table");
  targets->group("");
  targets->add_option("--samples", o.samples, "Plug-in sample size");
  targets->add_option("--seed", o.target_seed, "Seed");
  targets->add_option("--threads", o.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*fit) return cmd_fit(o);
    if (*sim) return cmd_simulate(o);
    if (*check) return cmd_check(o);
    if (*targets) return cmd_targets(o);
  } catch (const procova::Error& e) {
    std::cerr << "error (" << procova::to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEstimation;
  }
  return kExitInput;
}
