#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "procova/error.hpp"
#include "procova/estimation.hpp"
#include "procova/inference.hpp"
#include "procova/oracle.hpp"
#include "procova/report.hpp"
#include "procova/simulation.hpp"

namespace py = pybind11;
using namespace procova;

namespace {

std::vector<std::string> with_intercept(std::vector<std::string> names, Eigen::Index q) {
  if (names.empty()) {
    for (Eigen::Index j = 1; j <= q; ++j) names.push_back("x" + std::to_string(j));
  }
  if (static_cast<Eigen::Index>(names.size()) != q) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(q) + " covariate names");
  }
  names.insert(names.begin(), kInterceptName);
  return names;
}

Matrix prepend_ones(const Matrix& w) {
  Matrix out(w.rows(), w.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(w.cols()) = w;
  return out;
}

py::dict interval(const Interval& ci) {
  py::dict d;
  d["lo"] = ci.lo;
  d["hi"] = ci.hi;
  return d;
}

py::dict fit(const Vector& y, const Vector& a, const Matrix& w, const Vector& y_hist,
             const Matrix& w_hist, const std::string& model, double level,
             const std::vector<std::string>& names) {
  TrialDataset trial;
  trial.outcome = y;
  trial.treatment = a;
  trial.covariates = prepend_ones(w);
  trial.covariate_names = with_intercept(names, w.cols());
  HistoricalDataset hist;
  hist.outcome = y_hist;
  hist.covariates = prepend_ones(w_hist);
  hist.covariate_names = trial.covariate_names;

  const auto result = fit_procova(trial, fit_prognostic(hist), parse_model_spec(model));
  const auto rows = summarize(result, level);

  py::list coefficients;
  for (const auto& r : rows) {
    py::dict c;
    c["label"] = r.coefficient_label;
    c["estimate"] = r.estimate;
    c["se_fix"] = r.se_fix;
    c["se_est"] = r.se_est;
    c["ci_fix"] = interval(r.ci_fix);
    c["ci_est"] = interval(r.ci_est);
    c["df"] = r.df;
    c["variance_ratio"] = variance_ratio(result, r.contrast);
    coefficients.append(c);
  }
  py::dict out;
  out["model"] = std::string(to_string(result.spec.variant));
  out["n"] = result.n_trial;
  out["n_hist"] = result.n_hist;
  out["kappa"] = result.kappa_hat;
  out["level"] = level;
  out["theta"] = result.theta_hat;
  out["beta"] = result.beta_hat;
  out["v_fix"] = result.v_fix;
  out["v_est"] = result.v_est;
  out["coefficients"] = coefficients;
  out["report_json"] = fit_report_json(result, rows);
  return out;
}

std::string simulate(const std::string& scenario, int shift, long n, long n_hist, long reps,
                     std::uint64_t seed, const std::string& model, double level, int threads) {
  ScenarioConfig cfg;
  cfg.outcome_model = parse_outcome_model(scenario);
  cfg.shift_pattern = shift;
  cfg.n_trial = n;
  cfg.n_hist = n_hist;
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.spec = parse_model_spec(model);
  cfg.level = level;
  return metrics_json(run_replications(cfg, threads));
}

py::list checks(const std::string& profile, double perturb_q1) {
  CheckOptions options;
  if (profile == "strict") {
    options.tolerance_scale = 0.5;
  } else if (profile != "default") {
    throw Error(ErrorKind::InvalidTarget, "unknown profile '" + profile + "'");
  }
  options.q1_perturbation = perturb_q1;
  py::list out;
  for (const auto& r : run_checks(options)) {
    py::dict d;
    d["name"] = r.name;
    d["value"] = r.value;
    d["tolerance"] = r.tolerance;
    d["lower_bound"] = r.lower_bound;
    d["passed"] = r.passed;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prognostic covariate adjustment with estimated-score variance";

  py::register_exception<Error>(m, "ProcovaError", PyExc_ValueError);

  m.def("fit", &fit, py::arg("y"), py::arg("a"), py::arg("w"), py::arg("y_hist"),
        py::arg("w_hist"), py::arg("model") = "ancova", py::arg("level") = kDefaultLevel,
        py::arg("names") = std::vector<std::string>{},
        "Fit the two-stage estimator. Covariate matrices exclude the intercept column.");
  m.def("simulate", &simulate, py::arg("scenario") = "A", py::arg("shift") = 1,
        py::arg("n") = 100, py::arg("n_hist") = 100, py::arg("reps") = 1000,
        py::arg("seed") = 0, py::arg("model") = "ancova", py::arg("level") = 0.95,
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
        "Run a simulation scenario and return the metrics document as JSON text.");
  m.def("checks", &checks, py::arg("profile") = "default", py::arg("perturb_q1") = 0.0,
        "Run the built-in consistency checks.");
  m.def("t_quantile", &t_quantile, py::arg("df"), py::arg("p"));
  m.def("t_cdf", &t_cdf, py::arg("df"), py::arg("x"));
}
