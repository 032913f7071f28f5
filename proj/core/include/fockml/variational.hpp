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

// Variational training of mesh angles and observable weights against the
// regularized squared loss
//   C = 1/(2N) sum_i (y_i - f(x_i))^2 + alpha * sum_j lambda_j^2.

#pragma once

#include <cstdint>
#include <vector>

#include "fockml/model.hpp"

namespace fockml {

struct TrainConfig {
  double alpha = 0.0;
  /// Objective evaluations per restart.
  int max_evals = 4000;
  std::uint64_t seed = 0;
  /// Restart 0 starts from the supplied parameters; restarts 1.. start from
  /// seeded uniform draws inside the bounds.
  int restarts = 1;
  double mesh_bound = kPi;     ///< mesh angles in [-mesh_bound, mesh_bound]
  double weight_bound = 5.0;   ///< observable weights in [-w, w]
  double rel_tol = 1e-12;      ///< relative cost change that counts as converged
  int threads = 1;             ///< restarts run concurrently

  void validate() const;
};

struct HistoryPoint {
  int evaluation = 0;  ///< 1-based objective call count
  double cost = 0.0;   ///< best cost seen so far
};

struct TrainedModel {
  CircuitSpec spec;
  Observable obs;
  TrainConfig config;
  /// Best-so-far trace of the winning restart; non-increasing in cost.
  std::vector<HistoryPoint> history;
  double final_cost = 0.0;
  bool converged = false;
  int evaluations = 0;    ///< total over all restarts
  int best_restart = 0;
};

/// Throws ConfigError for an empty dataset or mismatched sizes.
double cost(const CircuitSpec& spec, const Observable& obs, const DataMatrix& x,
            const Eigen::VectorXd& y, double alpha);

/// Derivative-free bound-constrained minimization (BOBYQA) over all mesh
/// angles and observable weights jointly. Running out of budget is not an
/// error: the best point found is returned with converged = false.
TrainedModel train(const CircuitSpec& initial_spec, const Observable& initial_obs,
                   const DataMatrix& x, const Eigen::VectorXd& y,
                   const TrainConfig& config);

/// Flattened parameter vector: every mesh angle in order, then the weights.
std::vector<double> pack_parameters(const CircuitSpec& spec, const Observable& obs);
void unpack_parameters(std::span<const double> params, CircuitSpec& spec,
                       Observable& obs);

/// Overwrites every mesh angle and weight with a uniform draw inside the
/// bounds of `config`. Stream r reproduces the start of restart r >= 1.
void randomize_parameters(CircuitSpec& spec, Observable& obs,
                          const TrainConfig& config, std::uint64_t stream);

/// Label from a model output: +1 for f >= 0, -1 otherwise.
int classify_value(double f);
int classify(const TrainedModel& model, Features x);
double predict(const TrainedModel& model, Features x);

/// Fraction of rows whose predicted sign equals the label.
double accuracy(const TrainedModel& model, const DataMatrix& x,
                const Eigen::VectorXd& labels);

}  // namespace fockml
