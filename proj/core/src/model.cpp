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

#include "fockml/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fockml/rng.hpp"

namespace fockml {

std::string_view to_string(Detector detector) {
  return detector == Detector::PNR ? "pnr" : "threshold";
}

Detector parse_detector(std::string_view name) {
  if (name == "pnr" || name == "PNR") return Detector::PNR;
  if (name == "threshold" || name == "THR") return Detector::Threshold;
  throw ConfigError("unknown detector: " + std::string(name));
}

ClickPartition group_by_clicks(const FockBasis& basis) {
  if (basis.modes() > 64) throw ConfigError("group_by_clicks: more than 64 modes");
  ClickPartition partition;
  std::map<std::uint64_t, std::size_t> seen;
  partition.pattern_of_state.reserve(basis.size());
  for (const FockState& state : basis) {
    std::uint64_t mask = 0;
    for (int i = 0; i < state.modes(); ++i) {
      if (state[i] > 0) mask |= std::uint64_t{1} << i;
    }
    auto [it, inserted] = seen.emplace(mask, partition.patterns.size());
    if (inserted) partition.patterns.push_back(mask);
    partition.pattern_of_state.push_back(it->second);
  }
  return partition;
}

std::size_t Observable::weight_count(Detector detector, int modes, int photons) {
  if (detector == Detector::PNR) return binomial(photons + modes - 1, photons);
  return group_by_clicks(FockBasis(modes, photons)).size();
}

Observable Observable::constant(Detector detector, int modes, int photons,
                                double value) {
  return {detector, modes, photons,
          std::vector<double>(weight_count(detector, modes, photons), value)};
}

void Observable::validate() const {
  const std::size_t expected = weight_count(detector, modes, photons);
  if (weights.size() != expected) {
    throw ConfigError("observable: " + std::string(to_string(detector)) +
                      " detector over " + std::to_string(modes) + " modes and " +
                      std::to_string(photons) + " photons needs " +
                      std::to_string(expected) + " weights, got " +
                      std::to_string(weights.size()));
  }
}

std::vector<double> Observable::state_weights(const FockBasis& basis) const {
  if (basis.modes() != modes || basis.photons() != photons) {
    throw ConfigError("observable: basis does not match (modes, photons)");
  }
  validate();
  if (detector == Detector::PNR) return weights;
  const ClickPartition partition = group_by_clicks(basis);
  std::vector<double> expanded(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    expanded[a] = weights[partition.pattern_of_state[a]];
  }
  return expanded;
}

QuantumModel::QuantumModel(const CircuitSpec& spec, const Observable& obs)
    : basis_(spec.modes, spec.photons()) {
  spec.validate();
  if (obs.modes != spec.modes || obs.photons != spec.photons()) {
    throw ConfigError("model: observable defined for " +
                      std::to_string(obs.modes) + " modes / " +
                      std::to_string(obs.photons) + " photons, circuit has " +
                      std::to_string(spec.modes) + " / " +
                      std::to_string(spec.photons()));
  }
  state_weights_ = obs.state_weights(basis_);
}

Eigen::VectorXd QuantumModel::probabilities(const CircuitSpec& spec,
                                            Features x) const {
  if (spec.modes != basis_.modes() || spec.photons() != basis_.photons()) {
    throw ConfigError("model: circuit does not match the model basis");
  }
  const ComplexVector amplitudes =
      output_amplitudes(mode_unitary(spec, x), basis_, spec.input);
  return amplitudes.cwiseAbs2();
}

double QuantumModel::evaluate(const CircuitSpec& spec, Features x) const {
  return evaluate(spec, state_weights_, x);
}

double QuantumModel::evaluate(const CircuitSpec& spec,
                              std::span<const double> state_weights,
                              Features x) const {
  if (state_weights.size() != basis_.size()) {
    throw ConfigError("model: weight count does not match basis size");
  }
  const Eigen::VectorXd p = probabilities(spec, x);
  double value = 0.0;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    value += state_weights[static_cast<std::size_t>(a)] * p[a];
  }
  return value;
}

double evaluate_model(const CircuitSpec& spec, const Observable& obs,
                      Features x) {
  return QuantumModel(spec, obs).evaluate(spec, x);
}

Complex FourierCoefficients::at(int omega) const {
  if (omega < -degree || omega > degree) return {0.0, 0.0};
  return coeffs[static_cast<std::size_t>(omega + degree)];
}

double FourierCoefficients::evaluate(double x) const {
  Complex sum{0.0, 0.0};
  for (int w = -degree; w <= degree; ++w) sum += at(w) * std::polar(1.0, w * x);
  return sum.real();
}

namespace {

CircuitSpec unscaled(const CircuitSpec& spec) {
  CircuitSpec copy = spec;
  copy.feature_scale.clear();
  copy.feature_offset.clear();
  return copy;
}

}  // namespace

FourierCoefficients extract_fourier_coefficients(const CircuitSpec& spec,
                                                 const Observable& obs,
                                                 int degree) {
  if (degree < 0) throw ConfigError("fourier: degree must be >= 0");
  if (spec.layout.features != 1) {
    throw ConfigError("fourier: single-feature layout required; use "
                      "extract_fourier_tensor");
  }
  const CircuitSpec raw = unscaled(spec);
  const QuantumModel model(raw, obs);
  const int points = 2 * degree + 1;
  std::vector<double> samples(points);
  for (int k = 0; k < points; ++k) {
    const double x = kTwoPi * k / points;
    samples[k] = model.evaluate(raw, std::span<const double>(&x, 1));
  }
  FourierCoefficients out{degree, std::vector<Complex>(points)};
  for (int w = -degree; w <= degree; ++w) {
    Complex sum{0.0, 0.0};
    for (int k = 0; k < points; ++k) {
      // Reduce w*k mod points so the twiddle angle stays in [0, 2pi).
      const int r = ((w * k) % points + points) % points;
      sum += samples[k] * std::polar(1.0, -kTwoPi * r / points);
    }
    out.coeffs[w + degree] = sum / static_cast<double>(points);
  }
  return out;
}

Complex FourierTensor::at(std::span<const int> omega) const {
  if (static_cast<int>(omega.size()) != dims) {
    throw ConfigError("fourier tensor: wrong index rank");
  }
  const int width = 2 * degree + 1;
  std::size_t flat = 0;
  for (int w : omega) {
    if (w < -degree || w > degree) return {0.0, 0.0};
    flat = flat * width + static_cast<std::size_t>(w + degree);
  }
  return coeffs[flat];
}

FourierTensor extract_fourier_tensor(const CircuitSpec& spec,
                                     const Observable& obs, int degree) {
  if (degree < 0) throw ConfigError("fourier: degree must be >= 0");
  const int dims = spec.layout.features;
  const CircuitSpec raw = unscaled(spec);
  const QuantumModel model(raw, obs);
  const int width = 2 * degree + 1;
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= width;

  // Samples on the tensor grid, then a separable inverse DFT per axis.
  std::vector<Complex> grid(total);
  std::vector<double> x(dims);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int d = dims - 1; d >= 0; --d) {
      x[d] = kTwoPi * static_cast<double>(rest % width) / width;
      rest /= width;
    }
    grid[flat] = model.evaluate(raw, x);
  }
  std::size_t stride = 1;
  for (int d = dims - 1; d >= 0; --d) {
    std::vector<Complex> next(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::size_t pos = (flat / stride) % width;
      const std::size_t base = flat - pos * stride;
      const int w = static_cast<int>(pos) - degree;
      Complex sum{0.0, 0.0};
      for (int k = 0; k < width; ++k) {
        const int r = ((w * k) % width + width) % width;
        sum += grid[base + k * stride] * std::polar(1.0, -kTwoPi * r / width);
      }
      next[flat] = sum / static_cast<double>(width);
    }
    grid = std::move(next);
    stride *= width;
  }
  return {degree, dims, std::move(grid)};
}

int band_limit(const CircuitSpec& spec) {
  return static_cast<int>(
      std::ceil(spec.photons() * spec.layout.frequency_multiplier(0) - 1e-12));
}

std::uint64_t dof_pnr(int modes, int photons) {
  if (modes < 1 || photons < 0) throw ConfigError("dof_pnr: need m >= 1, n >= 0");
  const auto m = static_cast<std::uint64_t>(modes);
  return 2 * m * (m - 1) + binomial(photons + modes - 1, photons);
}

std::uint64_t dof_threshold(int modes, int photons) {
  if (modes < 1 || photons < 0) {
    throw ConfigError("dof_threshold: need m >= 1, n >= 0");
  }
  const auto m = static_cast<std::uint64_t>(modes);
  std::uint64_t patterns = 0;
  for (int k = 1; k <= std::min(photons, modes); ++k) {
    patterns += binomial(modes, k);
  }
  return 2 * m * (m - 1) + patterns;
}

std::uint64_t m_min(int photons) {
  if (photons < 0) throw ConfigError("m_min: photon count must be >= 0");
  return 2 * static_cast<std::uint64_t>(photons) + 1;
}

std::vector<std::uint64_t> sample_counts(const CircuitSpec& spec, Features x,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw ConfigError("sample_counts: shots must be >= 1");
  spec.validate();
  const FockBasis basis(spec.modes, spec.photons());
  const Eigen::VectorXd p =
      output_amplitudes(mode_unitary(spec, x), basis, spec.input).cwiseAbs2();

  std::vector<double> cumulative(basis.size());
  double running = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    running += p[static_cast<Eigen::Index>(a)];
    cumulative[a] = running;
  }
  // Renormalize so rounding in the probabilities cannot leave a gap at 1.
  for (double& c : cumulative) c /= running;
  cumulative.back() = 1.0;

  std::vector<std::uint64_t> counts(basis.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    ++counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return counts;
}

}  // namespace fockml
