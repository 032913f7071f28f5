// Copyright 2026 The fockml Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fockml/variational.hpp"

#include <nlopt.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <type_traits>

#include "fockml/parallel.hpp"
#include "fockml/rng.hpp"

namespace fockml {

namespace {

void check_dataset(const DataMatrix& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0) throw ConfigError("cost: empty dataset");
  if (x.rows() != y.size()) {
    throw ConfigError("cost: " + std::to_string(x.rows()) + " inputs but " +
                      std::to_string(y.size()) + " targets");
  }
}

// Shared by cost() and the optimizer so a stored final cost is reproduced
// bit-for-bit from the stored parameters.
double cost_with(const QuantumModel& model, const CircuitSpec& spec,
                 const Observable& obs, const DataMatrix& x,
                 const Eigen::VectorXd& y, double alpha) {
  const std::vector<double> weights = obs.state_weights(model.basis());
  double squared = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double residual = y[i] - model.evaluate(spec, weights, row_of(x, i));
    squared += residual * residual;
  }
  double penalty = 0.0;
  for (double w : obs.weights) penalty += w * w;
  return squared / (2.0 * static_cast<double>(x.rows())) + alpha * penalty;
}

struct RestartResult {
  std::vector<double> best_params;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<HistoryPoint> history;
  int evaluations = 0;
  bool converged = false;
};

struct Objective {
  const QuantumModel* model;
  const DataMatrix* x;
  const Eigen::VectorXd* y;
  double alpha;
  CircuitSpec spec;
  Observable obs;
  RestartResult* result;
};

double objective_callback(unsigned n, const double* params, double* grad,
                          void* data) {
  (void)grad;  // BOBYQA is derivative-free
  auto& objective = *static_cast<Objective*>(data);
  const std::span<const double> view(params, n);
  unpack_parameters(view, objective.spec, objective.obs);
  const double value = cost_with(*objective.model, objective.spec, objective.obs,
                                 *objective.x, *objective.y, objective.alpha);
  RestartResult& result = *objective.result;
  ++result.evaluations;
  if (value < result.best_cost) {
    result.best_cost = value;
    result.best_params.assign(view.begin(), view.end());
    result.history.push_back({result.evaluations, value});
  }
  return value;
}

struct OptimizerDeleter {
  void operator()(nlopt_opt opt) const { nlopt_destroy(opt); }
};

RestartResult run_restart(const QuantumModel& model, const CircuitSpec& spec,
                          const Observable& obs, const DataMatrix& x,
                          const Eigen::VectorXd& y, const TrainConfig& config,
                          std::vector<double> start,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper) {
  RestartResult result;
  Objective objective{&model, &x, &y, config.alpha, spec, obs, &result};
  const auto dim = static_cast<unsigned>(start.size());
  std::unique_ptr<std::remove_pointer_t<nlopt_opt>, OptimizerDeleter> opt(
      nlopt_create(NLOPT_LN_BOBYQA, dim));
  if (!opt) throw NumericalError("train: could not create BOBYQA optimizer");
  nlopt_set_lower_bounds(opt.get(), lower.data());
  nlopt_set_upper_bounds(opt.get(), upper.data());
  nlopt_set_min_objective(opt.get(), objective_callback, &objective);
  nlopt_set_maxeval(opt.get(), config.max_evals);
  nlopt_set_ftol_rel(opt.get(), config.rel_tol);
  nlopt_set_xtol_rel(opt.get(), 1e-10);
  nlopt_set_stopval(opt.get(), 0.0);

  double final_value = 0.0;
  const nlopt_result status = nlopt_optimize(opt.get(), start.data(), &final_value);
  if (status < 0 && status != NLOPT_ROUNDOFF_LIMITED && result.evaluations == 0) {
    throw NumericalError("train: BOBYQA failed with status " +
                         std::to_string(static_cast<int>(status)));
  }
  result.converged = status == NLOPT_SUCCESS || status == NLOPT_STOPVAL_REACHED ||
                     status == NLOPT_FTOL_REACHED || status == NLOPT_XTOL_REACHED;
  return result;
}

std::vector<double> uniform_start(const std::vector<double>& lower,
                                  const std::vector<double>& upper,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> start(lower.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    start[i] = rng.uniform(lower[i], upper[i]);
  }
  return start;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(alpha >= 0.0)) throw ConfigError("train: alpha must be >= 0");
  if (max_evals < 1) throw ConfigError("train: max_evals must be >= 1");
  if (restarts < 1) throw ConfigError("train: restarts must be >= 1");
  if (!(mesh_bound > 0.0) || !std::isfinite(mesh_bound)) {
    throw ConfigError("train: mesh_bound must be finite and positive");
  }
  if (!(weight_bound > 0.0) || !std::isfinite(weight_bound)) {
    throw ConfigError("train: weight_bound must be finite and positive");
  }
}

double cost(const CircuitSpec& spec, const Observable& obs, const DataMatrix& x,
            const Eigen::VectorXd& y, double alpha) {
  check_dataset(x, y);
  const QuantumModel model(spec, obs);
  return cost_with(model, spec, obs, x, y, alpha);
}

std::vector<double> pack_parameters(const CircuitSpec& spec,
                                    const Observable& obs) {
  std::vector<double> params;
  for (const auto& mesh : spec.meshes) {
    params.insert(params.end(), mesh.angles().begin(), mesh.angles().end());
  }
  params.insert(params.end(), obs.weights.begin(), obs.weights.end());
  return params;
}

void unpack_parameters(std::span<const double> params, CircuitSpec& spec,
                       Observable& obs) {
  std::size_t expected = obs.weights.size();
  for (const auto& mesh : spec.meshes) expected += mesh.size();
  if (params.size() != expected) {
    throw ConfigError("unpack_parameters: expected " + std::to_string(expected) +
                      " values, got " + std::to_string(params.size()));
  }
  std::size_t pos = 0;
  for (auto& mesh : spec.meshes) {
    for (double& angle : mesh.mutable_angles()) angle = params[pos++];
  }
  for (double& w : obs.weights) w = params[pos++];
}

void randomize_parameters(CircuitSpec& spec, Observable& obs,
                          const TrainConfig& config, std::uint64_t stream) {
  config.validate();
  std::vector<double> lower, upper;
  for (const auto& mesh : spec.meshes) {
    lower.insert(lower.end(), mesh.size(), -config.mesh_bound);
    upper.insert(upper.end(), mesh.size(), config.mesh_bound);
  }
  lower.insert(lower.end(), obs.weights.size(), -config.weight_bound);
  upper.insert(upper.end(), obs.weights.size(), config.weight_bound);
  unpack_parameters(uniform_start(lower, upper, derive_seed(config.seed, stream)),
                    spec, obs);
}

TrainedModel train(const CircuitSpec& initial_spec, const Observable& initial_obs,
                   const DataMatrix& x, const Eigen::VectorXd& y,
                   const TrainConfig& config) {
  config.validate();
  check_dataset(x, y);
  const QuantumModel model(initial_spec, initial_obs);

  std::size_t mesh_params = 0;
  for (const auto& mesh : initial_spec.meshes) mesh_params += mesh.size();
  const std::size_t dim = mesh_params + initial_obs.weights.size();
  std::vector<double> lower(dim), upper(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double bound = i < mesh_params ? config.mesh_bound : config.weight_bound;
    lower[i] = -bound;
    upper[i] = bound;
  }

  std::vector<std::vector<double>> starts(static_cast<std::size_t>(config.restarts));
  starts[0] = pack_parameters(initial_spec, initial_obs);
  for (std::size_t i = 0; i < dim; ++i) {
    starts[0][i] = std::clamp(starts[0][i], lower[i], upper[i]);
  }
  for (std::size_t r = 1; r < starts.size(); ++r) {
    starts[r] = uniform_start(lower, upper, derive_seed(config.seed, r));
  }

  std::vector<RestartResult> results(starts.size());
  parallel_for(starts.size(), config.threads, [&](std::size_t r) {
    results[r] = run_restart(model, initial_spec, initial_obs, x, y, config,
                             starts[r], lower, upper);
  });

  std::size_t best = 0;
  int total_evals = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    total_evals += results[r].evaluations;
    if (results[r].best_cost < results[best].best_cost) best = r;
  }

  TrainedModel trained{initial_spec, initial_obs, config, {}, 0.0, false, 0, 0};
  unpack_parameters(results[best].best_params, trained.spec, trained.obs);
  trained.history = std::move(results[best].history);
  trained.final_cost = results[best].best_cost;
  trained.converged = results[best].converged;
  trained.evaluations = total_evals;
  trained.best_restart = static_cast<int>(best);
  return trained;
}

int classify_value(double f) { return f >= 0.0 ? 1 : -1; }

double predict(const TrainedModel& model, Features x) {
  return evaluate_model(model.spec, model.obs, x);
}

int classify(const TrainedModel& model, Features x) {
  return classify_value(predict(model, x));
}

double accuracy(const TrainedModel& model, const DataMatrix& x,
                const Eigen::VectorXd& labels) {
  if (x.rows() == 0) throw ConfigError("accuracy: empty dataset");
  if (x.rows() != labels.size()) {
    throw ConfigError("accuracy: input and label counts differ");
  }
  const QuantumModel qm(model.spec, model.obs);
  int correct = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int predicted = classify_value(qm.evaluate(model.spec, row_of(x, i)));
    if (predicted == (labels[i] >= 0.0 ? 1 : -1)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

}  // namespace fockml
