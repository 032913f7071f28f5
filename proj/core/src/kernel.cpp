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

#include "fockml/kernel.hpp"

#include <nlopt.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <type_traits>

#include "fockml/parallel.hpp"

namespace fockml {

Eigen::Matrix2cd beamsplitter_5050() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << r, r,
       r, -r;
  return h;
}

HshCircuit::HshCircuit(int photons)
    : photons_(photons), basis_(2, std::max(photons, 0)) {
  if (photons < 1) throw ConfigError("kernel circuit: photon count must be >= 1");
  const int points = 2 * photons + 1;
  std::vector<Eigen::VectorXd> samples(points);
  for (int k = 0; k < points; ++k) samples[k] = simulate(kTwoPi * k / points);
  const auto outcomes_n = static_cast<Eigen::Index>(outcomes());
  coeffs_ = Eigen::MatrixXcd::Zero(outcomes_n, photons + 1);
  for (int w = 0; w <= photons; ++w) {
    for (int k = 0; k < points; ++k) {
      const int r = (w * k) % points;
      const Complex twiddle = std::polar(1.0, -kTwoPi * r / points);
      coeffs_.col(w) += samples[k].cast<Complex>() * twiddle;
    }
  }
  coeffs_ /= static_cast<double>(points);
}

ComplexMatrix HshCircuit::mode_unitary(double phase) {
  const Eigen::Matrix2cd h = beamsplitter_5050();
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
  s(0, 0) = std::polar(1.0, phase);
  return h * s * h;
}

Eigen::VectorXd HshCircuit::simulate(double phase) const {
  std::vector<int> input{photons_, 0};
  return output_amplitudes(mode_unitary(phase), basis_, FockState(input))
      .cwiseAbs2();
}

Eigen::VectorXd HshCircuit::probabilities(double phase) const {
  Eigen::VectorXd p = coeffs_.col(0).real();
  for (int w = 1; w <= photons_; ++w) {
    const Complex e = std::polar(1.0, w * phase);
    // c_{-w} = conj(c_w) for real p, so the pair contributes 2 Re(c_w e^{iwx}).
    p += 2.0 * (coeffs_.col(w) * e).real();
  }
  return p;
}

double HshCircuit::response(double phase, std::span<const double> weights) const {
  if (weights.size() != outcomes()) {
    throw ConfigError("kernel circuit: expected " + std::to_string(outcomes()) +
                      " weights, got " + std::to_string(weights.size()));
  }
  const Eigen::VectorXd p = probabilities(phase);
  double value = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    value += weights[j] * p[static_cast<Eigen::Index>(j)];
  }
  return value;
}

double kernel_circuit_response(int photons, double phase,
                               std::span<const double> weights) {
  const HshCircuit circuit(photons);
  if (weights.size() != circuit.outcomes()) {
    throw ConfigError("kernel circuit: expected " +
                      std::to_string(circuit.outcomes()) + " weights");
  }
  const Eigen::VectorXd p = circuit.simulate(phase);
  double value = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    value += weights[j] * p[static_cast<Eigen::Index>(j)];
  }
  return value;
}

double periodic_gaussian(double phase, double sigma) {
  if (std::isinf(sigma)) return 1.0;
  double w = std::fmod(std::abs(phase), kTwoPi);
  w = std::min(w, kTwoPi - w);
  return std::exp(-w * w / (2.0 * sigma * sigma));
}

std::vector<double> kernel_phase_grid(int grid_points) {
  if (grid_points < 2) throw ConfigError("kernel fit: grid needs >= 2 points");
  std::vector<double> phases(grid_points);
  for (int g = 0; g < grid_points; ++g) {
    phases[g] = kTwoPi * g / (grid_points - 1);
  }
  return phases;
}

Eigen::MatrixXd kernel_probability_table(const HshCircuit& circuit,
                                         int grid_points) {
  const std::vector<double> phases = kernel_phase_grid(grid_points);
  Eigen::MatrixXd table(grid_points, static_cast<Eigen::Index>(circuit.outcomes()));
  for (int g = 0; g < grid_points; ++g) {
    table.row(g) = circuit.simulate(phases[g]).transpose();
  }
  return table;
}

namespace {

struct SearchProblem {
  const Eigen::MatrixXd* table;
  const Eigen::VectorXd* target;
};

double search_loss(unsigned n, const double* params, double* grad, void* data) {
  (void)grad;
  const auto& problem = *static_cast<const SearchProblem*>(data);
  const Eigen::Map<const Eigen::VectorXd> lambda(params, static_cast<Eigen::Index>(n));
  return (*problem.table * lambda - *problem.target).squaredNorm() /
         static_cast<double>(problem.table->rows());
}

KernelObservable summarize_fit(const Eigen::MatrixXd& table,
                               const Eigen::VectorXd& target,
                               const Eigen::VectorXd& lambda, double sigma) {
  const Eigen::VectorXd residual = table * lambda - target;
  KernelObservable out;
  out.photons = static_cast<int>(table.cols()) - 1;
  out.sigma = sigma;
  out.weights.assign(lambda.data(), lambda.data() + lambda.size());
  out.grid_points = static_cast<int>(table.rows());
  out.max_abs_error = residual.cwiseAbs().maxCoeff();
  out.rms_error =
      std::sqrt(residual.squaredNorm() / static_cast<double>(table.rows()));
  return out;
}

Eigen::VectorXd gaussian_targets(std::span<const double> phases, double sigma) {
  Eigen::VectorXd target(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t i = 0; i < phases.size(); ++i) {
    target[static_cast<Eigen::Index>(i)] = periodic_gaussian(phases[i], sigma);
  }
  return target;
}

}  // namespace

KernelObservable fit_kernel_observable(const Eigen::MatrixXd& table,
                                       std::span<const double> phases,
                                       double sigma, double alpha) {
  if (!(sigma > 0.0)) throw ConfigError("kernel fit: sigma must be > 0");
  if (!(alpha >= 0.0)) throw ConfigError("kernel fit: alpha must be >= 0");
  if (table.rows() != static_cast<Eigen::Index>(phases.size())) {
    throw ConfigError("kernel fit: table rows != phase count");
  }
  const Eigen::VectorXd target = gaussian_targets(phases, sigma);
  Eigen::VectorXd lambda;
  if (alpha == 0.0) {
    lambda = table.colPivHouseholderQr().solve(target);
  } else {
    const Eigen::Index d = table.cols();
    const Eigen::MatrixXd normal =
        table.transpose() * table +
        alpha * static_cast<double>(table.rows()) * Eigen::MatrixXd::Identity(d, d);
    lambda = normal.ldlt().solve(table.transpose() * target);
  }
  return summarize_fit(table, target, lambda, sigma);
}

KernelObservable fit_kernel_observable_search(const Eigen::MatrixXd& table,
                                              std::span<const double> phases,
                                              double sigma, int max_evals,
                                              double bound) {
  if (!(sigma > 0.0)) throw ConfigError("kernel fit: sigma must be > 0");
  if (table.rows() != static_cast<Eigen::Index>(phases.size())) {
    throw ConfigError("kernel fit: table rows != phase count");
  }
  if (max_evals < 1 || !(bound > 0.0)) {
    throw ConfigError("kernel fit: need max_evals >= 1 and bound > 0");
  }
  const Eigen::VectorXd target = gaussian_targets(phases, sigma);
  SearchProblem problem{&table, &target};
  const auto dim = static_cast<unsigned>(table.cols());
  std::unique_ptr<std::remove_pointer_t<nlopt_opt>, decltype(&nlopt_destroy)> opt(
      nlopt_create(NLOPT_LN_BOBYQA, dim), &nlopt_destroy);
  if (!opt) throw NumericalError("kernel fit: could not create BOBYQA optimizer");
  nlopt_set_lower_bounds1(opt.get(), -bound);
  nlopt_set_upper_bounds1(opt.get(), bound);
  nlopt_set_min_objective(opt.get(), search_loss, &problem);
  nlopt_set_maxeval(opt.get(), max_evals);
  nlopt_set_xtol_rel(opt.get(), 1e-14);
  nlopt_set_ftol_rel(opt.get(), 1e-15);
  nlopt_set_initial_step1(opt.get(), 0.5);
  std::vector<double> lambda(dim, 0.0);
  double value = 0.0;
  const nlopt_result status = nlopt_optimize(opt.get(), lambda.data(), &value);
  if (status < 0 && status != NLOPT_ROUNDOFF_LIMITED) {
    throw NumericalError("kernel fit: BOBYQA failed with status " +
                         std::to_string(static_cast<int>(status)));
  }
  return summarize_fit(table, target,
                       Eigen::Map<const Eigen::VectorXd>(lambda.data(), dim), sigma);
}

KernelObservable fit_kernel_observable(int photons, double sigma,
                                       int grid_points, double alpha) {
  const HshCircuit circuit(photons);
  const Eigen::MatrixXd table = kernel_probability_table(circuit, grid_points);
  const std::vector<double> phases = kernel_phase_grid(grid_points);
  return fit_kernel_observable(table, phases, sigma, alpha);
}

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                            double alpha) {
  if (k.rows() != k.cols()) throw ConfigError("ridge_solve: K must be square");
  if (k.rows() != y.size()) throw ConfigError("ridge_solve: |y| != rows of K");
  if (!(alpha >= 0.0)) throw ConfigError("ridge_solve: alpha must be >= 0");
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw ConfigError("ridge_solve: K is not symmetric");
  }
  Eigen::MatrixXd system = k;
  system.diagonal().array() += alpha;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > 1e-13)) {
    throw NumericalError("ridge_solve: K + alpha I is singular");
  }
  Eigen::VectorXd beta = ldlt.solve(y);
  const double residual = (system * beta - y).norm();
  if (!(residual <= 1e-8 * y.norm())) {
    throw NumericalError("ridge_solve: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return beta;
}

DistanceKernel gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian_kernel: sigma must be > 0");
  return [sigma](double distance) {
    return std::exp(-distance * distance / (2.0 * sigma * sigma));
  };
}

DistanceKernel circuit_kernel(const KernelObservable& observable) {
  auto circuit = std::make_shared<const HshCircuit>(observable.photons);
  if (observable.weights.size() != circuit->outcomes()) {
    throw ConfigError("circuit_kernel: weight count does not match photons");
  }
  return [circuit, weights = observable.weights](double distance) {
    return circuit->response(distance, weights);
  };
}

double input_scale_for(const DataMatrix& x) {
  double widest = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
      widest = std::max(widest, (x.row(i) - x.row(j)).norm());
    }
  }
  if (widest <= kPi) return 1.0;
  return kPi / widest;
}

Eigen::MatrixXd kernel_matrix(const DataMatrix& a, const DataMatrix& b,
                              double scale, const DistanceKernel& kernel,
                              int threads) {
  if (a.cols() != b.cols()) throw ConfigError("kernel_matrix: feature mismatch");
  Eigen::MatrixXd k(a.rows(), b.rows());
  parallel_for(static_cast<std::size_t>(a.rows()), threads, [&](std::size_t i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      k(r, j) = kernel(scale * (a.row(r) - b.row(j)).norm());
    }
  });
  return k;
}

KernelModel fit_kernel_model(const DataMatrix& x, const Eigen::VectorXd& y,
                             const DistanceKernel& kernel, double sigma,
                             double alpha, int threads) {
  if (x.rows() == 0) throw ConfigError("kernel model: empty training set");
  if (x.rows() != y.size()) throw ConfigError("kernel model: |X| != |y|");
  KernelModel model;
  model.support = x;
  model.sigma = sigma;
  model.alpha = alpha;
  model.input_scale = input_scale_for(x);
  Eigen::MatrixXd k = kernel_matrix(x, x, model.input_scale, kernel, threads);
  // Pairwise distances are symmetric; remove rounding asymmetry of the
  // kernel evaluation before the symmetric solve.
  k = 0.5 * (k + k.transpose());
  model.beta = ridge_solve(k, y, alpha);
  return model;
}

double kernel_predict(const KernelModel& model, Features x,
                      const DistanceKernel& kernel) {
  if (static_cast<Eigen::Index>(x.size()) != model.support.cols()) {
    throw ConfigError("kernel_predict: feature count mismatch");
  }
  const Eigen::Map<const Eigen::RowVectorXd> point(x.data(),
                                                   static_cast<Eigen::Index>(x.size()));
  double value = 0.0;
  for (Eigen::Index i = 0; i < model.support.rows(); ++i) {
    if (model.beta[i] == 0.0) continue;
    value += model.beta[i] *
             kernel(model.input_scale * (model.support.row(i) - point).norm());
  }
  return value;
}

}  // namespace fockml
