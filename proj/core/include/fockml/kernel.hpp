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

// Two-mode H S(phase) H circuit with input |n,0> used as a sampler of
// Gaussian kernels, and kernel ridge classification on top of it.
//
// Phase convention: the phase shifter receives the (optionally rescaled)
// Euclidean distance between two data points, and the observable is fitted
// to the 2pi-periodic Gaussian exp(-w^2 / (2 sigma^2)), where w in [0, pi]
// is the phase wrapped to its distance from 0 mod 2pi. The circuit response
// is an even, 2pi-periodic cosine polynomial, so this is the function it
// can actually represent; distances up to pi map to the Gaussian exactly.

#pragma once

#include <functional>
#include <vector>

#include "fockml/fock.hpp"
#include "fockml/types.hpp"

namespace fockml {

/// 50-50 beam splitter [[1, 1], [1, -1]] / sqrt(2).
Eigen::Matrix2cd beamsplitter_5050();

/// Outcome probabilities of H S(phase) H on |n,0>. Outcome j is the
/// two-mode state (n - j, j), matching FockBasis(2, n) order.
class HshCircuit {
 public:
  explicit HshCircuit(int photons);

  int photons() const { return photons_; }
  std::size_t outcomes() const { return static_cast<std::size_t>(photons_) + 1; }

  /// Mode unitary H S(phase) H.
  static ComplexMatrix mode_unitary(double phase);

  /// Full Fock-space simulation through permanents.
  Eigen::VectorXd simulate(double phase) const;

  /// Same probabilities from the per-outcome Fourier table that the
  /// constructor extracts from 2n+1 simulated phases; exact up to rounding
  /// because each probability is a trigonometric polynomial of degree n.
  Eigen::VectorXd probabilities(double phase) const;

  /// sum_j weights[j] p_j(phase).
  double response(double phase, std::span<const double> weights) const;

 private:
  int photons_;
  FockBasis basis_;
  /// coeffs_(j, w) = Fourier coefficient of p_j at frequency w >= 0.
  Eigen::MatrixXcd coeffs_;
};

/// Circuit output for weights lambda (one per outcome, n+1 of them).
double kernel_circuit_response(int photons, double phase,
                               std::span<const double> weights);

/// exp(-w^2 / (2 sigma^2)) with w the phase wrapped into [0, pi]. An
/// infinite sigma gives 1.
double periodic_gaussian(double phase, double sigma);

struct KernelObservable {
  int photons = 0;
  double sigma = 1.0;
  std::vector<double> weights;   ///< n+1 outcome weights
  int grid_points = 0;
  double max_abs_error = 0.0;    ///< over the fitting grid
  double rms_error = 0.0;
};

/// Least-squares fit of the outcome weights to periodic_gaussian(., sigma)
/// on `grid_points` phases spanning [0, 2pi] inclusive. The response is
/// linear in the weights, so the optimum is found by a direct solve; alpha
/// adds a ridge term alpha * |lambda|^2 to the mean squared loss.
KernelObservable fit_kernel_observable(int photons, double sigma,
                                       int grid_points = 200, double alpha = 0.0);

/// Re-fits from an existing probability table: one simulation serves every
/// sigma. table(g, j) = p_j(phase_g).
KernelObservable fit_kernel_observable(const Eigen::MatrixXd& table,
                                       std::span<const double> phases,
                                       double sigma, double alpha = 0.0);

/// Same loss minimized by derivative-free search (BOBYQA from lambda = 0,
/// weights bounded by |lambda_j| <= bound). Only useful as a cross-check of
/// the direct solve.
KernelObservable fit_kernel_observable_search(const Eigen::MatrixXd& table,
                                              std::span<const double> phases,
                                              double sigma, int max_evals = 20000,
                                              double bound = 100.0);

/// table(g, j) = p_j(phase_g) on the inclusive [0, 2pi] grid.
Eigen::MatrixXd kernel_probability_table(const HshCircuit& circuit,
                                         int grid_points);
std::vector<double> kernel_phase_grid(int grid_points);

/// Solves (K + alpha I) beta = y. K must be square and symmetric. Throws
/// NumericalError when the system is singular or the residual exceeds
/// 1e-8 |y|.
Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                            double alpha);

/// Kernel as a function of (scaled) Euclidean distance.
using DistanceKernel = std::function<double(double distance)>;

DistanceKernel gaussian_kernel(double sigma);
/// Evaluates the fitted circuit response at phase = distance.
DistanceKernel circuit_kernel(const KernelObservable& observable);

/// min(1, pi / largest pairwise distance): keeps training distances on the
/// monotone half-period of the circuit response.
double input_scale_for(const DataMatrix& x);

/// K(i, j) = kernel(scale * |a_i - b_j|).
Eigen::MatrixXd kernel_matrix(const DataMatrix& a, const DataMatrix& b,
                              double scale, const DistanceKernel& kernel,
                              int threads = 1);

struct KernelModel {
  Eigen::VectorXd beta;
  DataMatrix support;
  double sigma = 1.0;
  double alpha = 0.0;
  double input_scale = 1.0;
};

KernelModel fit_kernel_model(const DataMatrix& x, const Eigen::VectorXd& y,
                             const DistanceKernel& kernel, double sigma,
                             double alpha, int threads = 1);

/// sum_i beta_i k(scale * |x_i - x|).
double kernel_predict(const KernelModel& model, Features x,
                      const DistanceKernel& kernel);

}  // namespace fockml
