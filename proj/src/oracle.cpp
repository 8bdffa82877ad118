#include "procova/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "procova/error.hpp"
#include "procova/estimation.hpp"
#include "procova/rng.hpp"
#include "procova/simulation.hpp"
#include "procova/variance.hpp"

namespace procova {

namespace {

struct ScoreLaw {
  double mean = 0.0;
  double variance = 0.0;
  Vector covariate_mean;
};

ScoreLaw score_law(const DiscretePopulation& pop, const Vector& theta) {
  if (theta.size() != pop.covariate_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "theta dimension does not match the population");
  }
  ScoreLaw law;
  law.covariate_mean = Vector::Zero(theta.size());
  double second = 0.0;
  for (const auto& atom : pop.support) {
    const double s = theta.dot(atom.w);
    law.mean += atom.probability * s;
    second += atom.probability * s * s;
    law.covariate_mean += atom.probability * atom.w;
  }
  law.variance = second - law.mean * law.mean;
  if (!(law.variance > 1e-14 * std::max(1.0, second))) {
    throw Error(ErrorKind::DegenerateScore, "theta'W is constant over the support");
  }
  return law;
}

Vector regressors(const Vector& w, double a, const Vector& theta, double center,
                  const ModelSpec& spec) {
  Vector x(spec.parameter_count());
  const double d = theta.dot(w) - center;
  x(0) = 1.0;
  x(1) = a;
  x(2) = d;
  if (spec.variant == ModelVariant::Anhecova) x(3) = a * d;
  return x;
}

template <class Fn>
void for_each_cell(const DiscretePopulation& pop, Fn&& fn) {
  for (const auto& atom : pop.support) {
    fn(atom, 0.0, atom.probability * (1.0 - pop.pi), atom.mean_control);
    fn(atom, 1.0, atom.probability * pop.pi, atom.mean_treated);
  }
}

}  // namespace

void DiscretePopulation::validate() const {
  if (support.empty()) throw Error(ErrorKind::EmptyData, "population has no support points");
  if (!(pi > 0.0 && pi < 1.0)) throw Error(ErrorKind::InvalidProbability, "pi must lie in (0, 1)");
  if (!(outcome_variance >= 0.0)) {
    throw Error(ErrorKind::InvalidProbability, "outcome variance must be non-negative");
  }
  double total = 0.0;
  for (const auto& atom : support) {
    if (atom.w.size() != covariate_dim()) {
      throw Error(ErrorKind::DimensionMismatch, "support points have different dimensions");
    }
    if (!(atom.probability >= 0.0)) {
      throw Error(ErrorKind::InvalidProbability, "negative support probability");
    }
    total += atom.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidProbability, "support probabilities do not sum to one");
  }
}

Vector population_beta_star(const DiscretePopulation& pop, const Vector& theta,
                            const ModelSpec& spec) {
  return population_moments(pop, theta, spec).beta_star;
}

PopulationMoments population_moments(const DiscretePopulation& pop, const Vector& theta,
                                     const ModelSpec& spec) {
  pop.validate();
  const auto law = score_law(pop, theta);
  const double center = spec.centered() ? law.mean : 0.0;
  const int p = spec.parameter_count();
  const auto q = theta.size();

  Matrix exx = Matrix::Zero(p, p);
  Vector exy = Vector::Zero(p);
  for_each_cell(pop, [&](const auto& atom, double a, double weight, double mean) {
    const Vector x = regressors(atom.w, a, theta, center, spec);
    exx += weight * x * x.transpose();
    exy += weight * mean * x;
  });

  PopulationMoments out;
  out.score_mean = law.mean;
  out.score_variance = law.variance;
  out.q0 = -exx;
  out.beta_star = exx.ldlt().solve(exy);
  // One refinement step keeps E[psi(beta*)] at rounding level.
  out.beta_star += exx.ldlt().solve(exy - exx * out.beta_star);

  const Vector& beta = out.beta_star;
  const bool interaction = spec.variant == ModelVariant::Anhecova;
  out.q1 = Matrix::Zero(p, q);
  out.omega = Matrix::Zero(p, p);
  const double half_var = pop.outcome_variance;
  for_each_cell(pop, [&](const auto& atom, double a, double weight, double mean) {
    const Vector x = regressors(atom.w, a, theta, center, spec);
    const double r = mean - beta.dot(x);  // E[Y - beta'X | cell]
    const Vector grad = spec.centered() ? Vector(atom.w - law.covariate_mean) : atom.w;
    const double slope = beta(2) + (interaction ? beta(3) * a : 0.0);
    Vector coef = -slope * x;
    coef(2) += r;
    if (interaction) coef(3) += r * a;
    out.q1 += weight * coef * grad.transpose();
    out.omega += weight * (r * r + half_var) * x * x.transpose();
  });
  return out;
}

Vector expected_estimating_function(const DiscretePopulation& pop, const Vector& beta,
                                    const Vector& theta, const ModelSpec& spec) {
  pop.validate();
  const auto law = score_law(pop, theta);
  const double center = spec.centered() ? law.mean : 0.0;
  Vector out = Vector::Zero(spec.parameter_count());
  for_each_cell(pop, [&](const auto& atom, double a, double weight, double mean) {
    const Vector x = regressors(atom.w, a, theta, center, spec);
    out += weight * (mean - beta.dot(x)) * x;
  });
  return out;
}

double orthogonality_check(const DiscretePopulation& pop, const Vector& theta,
                           const ModelSpec& spec, const Vector& e) {
  const auto m = population_moments(pop, theta, spec);
  if (e.size() != m.q0.rows()) throw Error(ErrorKind::DimensionMismatch, "contrast length");
  const Vector a = invert(m.q0).transpose() * e;  // (e' Q0^{-1})'
  return (m.q1.transpose() * a).cwiseAbs().maxCoeff();
}

Matrix beta_star_jacobian_fd(const DiscretePopulation& pop, const Vector& theta,
                             const ModelSpec& spec, double step) {
  Matrix jac(spec.parameter_count(), theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    Vector up = theta;
    Vector down = theta;
    up(j) += step;
    down(j) -= step;
    jac.col(j) = (population_beta_star(pop, up, spec) - population_beta_star(pop, down, spec)) /
                 (2.0 * step);
  }
  return jac;
}

double beta_star_derivative_check(const DiscretePopulation& pop, const Vector& theta,
                                  const ModelSpec& spec, double step) {
  const auto m = population_moments(pop, theta, spec);
  const Matrix analytic = -invert(m.q0) * m.q1;
  return (beta_star_jacobian_fd(pop, theta, spec, step) - analytic).cwiseAbs().maxCoeff();
}

DiscretePopulation random_population(std::uint64_t seed, int support_size, int dim) {
  if (support_size < 3 || dim < 2) {
    throw Error(ErrorKind::DimensionMismatch, "need at least 3 support points and one covariate");
  }
  Xoshiro256 rng(seed, 0x6F7261636C65ULL);
  std::uniform_real_distribution<double> cov(-2.0, 2.0);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  std::uniform_real_distribution<double> alloc(0.1, 0.9);

  Vector c1(dim), c2(dim), c3(dim);
  for (int j = 0; j < dim; ++j) {
    c1(j) = coef(rng);
    c2(j) = coef(rng);
    c3(j) = coef(rng);
  }
  const double effect = coef(rng);

  DiscretePopulation pop;
  pop.pi = alloc(rng);
  pop.outcome_variance = 0.25 + weight(rng);
  double total = 0.0;
  for (int k = 0; k < support_size; ++k) {
    DiscretePopulation::Atom atom;
    atom.w.resize(dim);
    atom.w(0) = 1.0;
    for (int j = 1; j < dim; ++j) atom.w(j) = cov(rng);
    atom.probability = weight(rng);
    total += atom.probability;
    const double base = std::sin(c1.dot(atom.w)) + 0.5 * std::pow(c2.dot(atom.w), 2);
    atom.mean_control = base;
    atom.mean_treated = base + effect + 0.7 * std::cos(c3.dot(atom.w));
    pop.support.push_back(std::move(atom));
  }
  for (auto& atom : pop.support) atom.probability /= total;
  return pop;
}

Matrix q1_finite_difference(const TrialDataset& trial, const Vector& beta, const Vector& theta,
                            const ModelSpec& spec) {
  Matrix fd(beta.size(), theta.size());
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta(j)));
    Vector up = theta;
    Vector down = theta;
    up(j) += h;
    down(j) -= h;
    fd.col(j) = (mean_estimating_function(trial, beta, up, spec) -
                 mean_estimating_function(trial, beta, down, spec)) /
                (2.0 * h);
  }
  return fd;
}

namespace {

struct PopulationCase {
  DiscretePopulation pop;
  Vector theta;
};

std::vector<PopulationCase> population_family(const CheckOptions& options) {
  std::vector<PopulationCase> cases;
  Xoshiro256 rng(options.seed, 0x66616D696C79ULL);
  std::uniform_int_distribution<int> size(3, 8);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> coef(-1.5, 1.5);
  for (int i = 0; i < options.populations; ++i) {
    const int q = dim(rng);
    PopulationCase c{random_population(rng(), size(rng), q), Vector(q)};
    for (int j = 0; j < q; ++j) c.theta(j) = coef(rng);
    c.theta(1) += c.theta(1) >= 0.0 ? 0.5 : -0.5;  // keep the score non-degenerate
    cases.push_back(std::move(c));
  }
  return cases;
}

Vector basis(std::initializer_list<double> v) {
  Vector e(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) e(i++) = x;
  return e;
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  const double scale = options.tolerance_scale;
  std::vector<CheckResult> results;
  const auto upper = [&](std::string name, double value, double tol) {
    results.push_back({std::move(name), value, tol * scale, false, value < tol * scale});
  };

  const auto family = population_family(options);
  const ModelSpec ancova{ModelVariant::Ancova};
  const ModelSpec centered{ModelVariant::AncovaCentered};
  const ModelSpec anhecova{ModelVariant::Anhecova};

  struct Orthogonality {
    const char* name;
    ModelSpec spec;
    Vector e;
  };
  const std::vector<Orthogonality> identities{
      {"orthogonality ancova e=(0,1,0)", ancova, basis({0, 1, 0})},
      {"orthogonality anhecova e=(0,1,0,0)", anhecova, basis({0, 1, 0, 0})},
      {"orthogonality anhecova e=(1,0,0,0)", anhecova, basis({1, 0, 0, 0})},
      {"orthogonality anhecova e=(1,1,0,0)", anhecova, basis({1, 1, 0, 0})},
      {"orthogonality ancova-centered e=(0,1,0)", centered, basis({0, 1, 0})},
      {"orthogonality ancova-centered e=(1,0,0)", centered, basis({1, 0, 0})},
      {"orthogonality ancova-centered e=(1,1,0)", centered, basis({1, 1, 0})},
  };
  for (const auto& id : identities) {
    double worst = 0.0;
    for (const auto& c : family) worst = std::max(worst, orthogonality_check(c.pop, c.theta, id.spec, id.e));
    upper(id.name, worst, 1e-10);
  }

  {
    // The score coefficient is not orthogonal in general.
    double weakest = std::numeric_limits<double>::infinity();
    for (const auto& c : family) {
      weakest = std::min(weakest, orthogonality_check(c.pop, c.theta, ancova, basis({0, 0, 1})));
    }
    const double tol = 1e-6 * scale;
    results.push_back({"non-orthogonality ancova e=(0,0,1)", weakest, tol, true, weakest > tol});
  }

  for (const auto& spec : {ancova, centered, anhecova}) {
    double derivative = 0.0;
    double treatment_slope = 0.0;
    double first_order = 0.0;
    for (const auto& c : family) {
      derivative = std::max(derivative, beta_star_derivative_check(c.pop, c.theta, spec));
      const Matrix jac = beta_star_jacobian_fd(c.pop, c.theta, spec);
      treatment_slope = std::max(treatment_slope, jac.row(1).cwiseAbs().maxCoeff());
      const auto m = population_moments(c.pop, c.theta, spec);
      first_order = std::max(first_order, expected_estimating_function(c.pop, m.beta_star, c.theta, spec)
                                              .cwiseAbs()
                                              .maxCoeff());
    }
    const std::string tag(to_string(spec.variant));
    upper("derivative identity " + tag, derivative, 1e-5);
    upper("treatment coefficient flat in theta " + tag, treatment_slope, 1e-8);
    upper("population first-order condition " + tag, first_order, 1e-12);
  }

  for (const auto& spec : {ancova, centered, anhecova}) {
    double worst = 0.0;
    for (int d = 0; d < options.datasets; ++d) {
      ScenarioConfig config;
      config.outcome_model = static_cast<OutcomeModel>(d % 4);
      config.shift_pattern = 1 + d % 9;
      config.n_trial = options.dataset_size;
      config.n_hist = options.dataset_size;
      config.replications = 1;
      config.seed = options.seed + 1;
      config.spec = spec;
      const auto [trial, historical] = generate_pair(config, static_cast<std::uint64_t>(d));
      const auto prog = fit_prognostic(historical);
      const auto fit = fit_procova(trial, prog, spec);
      Matrix analytic = fit.q1_hat;
      analytic(0, 0) += options.q1_perturbation;
      const Matrix fd = q1_finite_difference(trial, fit.beta_hat, fit.theta_hat, spec);
      worst = std::max(worst, (analytic - fd).cwiseAbs().maxCoeff());
    }
    upper("Q1 finite-difference gate " + std::string(to_string(spec.variant)), worst, 1e-4);
  }
  return results;
}

}  // namespace procova
