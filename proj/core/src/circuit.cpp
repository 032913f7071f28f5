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

#include "fockml/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace fockml {

std::vector<MeshBlock> reck_block_order(int modes) {
  std::vector<MeshBlock> blocks;
  std::size_t k = 0;
  for (int sweep = 0; sweep + 1 < modes; ++sweep) {
    for (int top = 0; top + 1 < modes - sweep; ++top) {
      blocks.push_back({top, 2 * k, 2 * k + 1});
      ++k;
    }
  }
  return blocks;
}

Eigen::Matrix2cd two_mode_block(double theta, double phi) {
  const Complex phase = std::polar(1.0, phi);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2cd t;
  t << phase * c, -s,
       phase * s, c;
  return t;
}

ComplexMatrix reck_unitary(const MeshParams& params, int modes) {
  if (modes < 1) throw ConfigError("reck_unitary: mode count must be >= 1");
  if (params.size() != MeshParams::count_for(modes)) {
    throw ConfigError("reck_unitary: expected " +
                      std::to_string(MeshParams::count_for(modes)) +
                      " angles for " + std::to_string(modes) + " modes, got " +
                      std::to_string(params.size()));
  }
  ComplexMatrix u = ComplexMatrix::Identity(modes, modes);
  const auto angles = params.angles();
  for (const MeshBlock& block : reck_block_order(modes)) {
    const Eigen::Matrix2cd t =
        two_mode_block(angles[block.theta_index], angles[block.phi_index]);
    // Left-multiply: only rows top and top+1 change.
    const Eigen::Index r = block.top_mode;
    const Eigen::RowVectorXcd upper = u.row(r);
    const Eigen::RowVectorXcd lower = u.row(r + 1);
    u.row(r) = t(0, 0) * upper + t(0, 1) * lower;
    u.row(r + 1) = t(1, 0) * upper + t(1, 1) * lower;
  }
  return u;
}

std::string_view to_string(EncodingVariant variant) {
  switch (variant) {
    case EncodingVariant::Single: return "single";
    case EncodingVariant::Series1D: return "series_1d";
    case EncodingVariant::Parallel1D: return "parallel_1d";
    case EncodingVariant::SeriesMultiD: return "series_multi_d";
    case EncodingVariant::ParallelMultiD: return "parallel_multi_d";
    case EncodingVariant::PerFeature: return "per_feature";
  }
  return "unknown";
}

EncodingVariant parse_encoding_variant(std::string_view name) {
  for (auto v : {EncodingVariant::Single, EncodingVariant::Series1D,
                 EncodingVariant::Parallel1D, EncodingVariant::SeriesMultiD,
                 EncodingVariant::ParallelMultiD, EncodingVariant::PerFeature}) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError("unknown encoding layout: " + std::string(name));
}

EncodingLayout EncodingLayout::single() {
  return {EncodingVariant::Single, 1, {{PhaseTerm{0, {1.0}}}}};
}

EncodingLayout EncodingLayout::series_1d(int modes) {
  if (modes < 2) throw ConfigError("series_1d layout needs m >= 2");
  EncodingLayer layer;
  for (int i = 0; i + 1 < modes; ++i) {
    layer.push_back(PhaseTerm{i, {static_cast<double>(i + 1)}});
  }
  return {EncodingVariant::Series1D, 1, {layer}};
}

EncodingLayout EncodingLayout::parallel_1d(int modes) {
  if (modes < 2) throw ConfigError("parallel_1d layout needs m >= 2");
  EncodingLayout layout{EncodingVariant::Parallel1D, 1, {}};
  for (int i = 0; i + 1 < modes; ++i) layout.layers.push_back({PhaseTerm{0, {1.0}}});
  return layout;
}

EncodingLayout EncodingLayout::series_multi_d(int features) {
  if (features < 1 || features > 16) {
    throw ConfigError("series_multi_d layout needs 1 <= d <= 16");
  }
  EncodingLayer layer;
  const unsigned subsets = 1u << features;
  for (unsigned mask = 1; mask < subsets; ++mask) {
    std::vector<double> weights(features, 0.0);
    for (int f = 0; f < features; ++f) {
      if (mask & (1u << f)) weights[f] = 1.0;
    }
    layer.push_back(PhaseTerm{static_cast<int>(mask - 1), std::move(weights)});
  }
  return {EncodingVariant::SeriesMultiD, features, {layer}};
}

EncodingLayout EncodingLayout::parallel_multi_d(int features) {
  if (features < 1) throw ConfigError("parallel_multi_d layout needs d >= 1");
  EncodingLayout layout{EncodingVariant::ParallelMultiD, features, {}};
  for (int f = 0; f < features; ++f) {
    std::vector<double> weights(features, 0.0);
    weights[f] = 1.0;
    layout.layers.push_back({PhaseTerm{0, std::move(weights)}});
  }
  return layout;
}

EncodingLayout EncodingLayout::per_feature(int features) {
  if (features < 1) throw ConfigError("per_feature layout needs d >= 1");
  EncodingLayer layer;
  for (int f = 0; f < features; ++f) {
    std::vector<double> weights(features, 0.0);
    weights[f] = 1.0;
    layer.push_back(PhaseTerm{f, std::move(weights)});
  }
  return {EncodingVariant::PerFeature, features, {layer}};
}

EncodingLayout EncodingLayout::make(EncodingVariant variant, int modes,
                                    int features) {
  switch (variant) {
    case EncodingVariant::Single: return single();
    case EncodingVariant::Series1D: return series_1d(modes);
    case EncodingVariant::Parallel1D: return parallel_1d(modes);
    case EncodingVariant::SeriesMultiD: return series_multi_d(features);
    case EncodingVariant::ParallelMultiD: return parallel_multi_d(features);
    case EncodingVariant::PerFeature: return per_feature(features);
  }
  throw ConfigError("unknown encoding layout");
}

int EncodingLayout::min_modes() const {
  int highest = 0;
  for (const auto& layer : layers) {
    for (const auto& term : layer) highest = std::max(highest, term.mode);
  }
  return highest + 1;
}

double EncodingLayout::frequency_multiplier(int feature) const {
  double total = 0.0;
  for (const auto& layer : layers) {
    double widest = 0.0;
    for (const auto& term : layer) {
      widest = std::max(widest, std::abs(term.weights[feature]));
    }
    total += widest;
  }
  return total;
}

ComplexVector encoding_phases(Features x, const EncodingLayout& layout,
                              std::size_t layer, int modes) {
  if (static_cast<int>(x.size()) != layout.features) {
    throw ConfigError("encoding: data has " + std::to_string(x.size()) +
                      " features, layout expects " +
                      std::to_string(layout.features));
  }
  if (layer >= layout.layers.size()) {
    throw ConfigError("encoding: layer index out of range");
  }
  ComplexVector diag = ComplexVector::Ones(modes);
  for (const PhaseTerm& term : layout.layers[layer]) {
    if (term.mode < 0 || term.mode >= modes) {
      throw ConfigError("encoding: phase on mode " + std::to_string(term.mode) +
                        " outside a " + std::to_string(modes) + "-mode circuit");
    }
    double phase = 0.0;
    for (std::size_t f = 0; f < x.size(); ++f) phase += term.weights[f] * x[f];
    diag[term.mode] *= std::polar(1.0, phase);
  }
  return diag;
}

ComplexMatrix encoding_unitary(Features x, const EncodingLayout& layout,
                               std::size_t layer, int modes) {
  return encoding_phases(x, layout, layer, modes).asDiagonal();
}

void CircuitSpec::validate() const {
  if (modes < 1) throw ConfigError("circuit: mode count must be >= 1");
  if (input.modes() != modes) {
    throw ConfigError("circuit: input state " + input.to_string() + " has " +
                      std::to_string(input.modes()) + " modes, expected " +
                      std::to_string(modes));
  }
  if (input.photons() > kMaxPhotons) {
    throw ConfigError("circuit: more than " + std::to_string(kMaxPhotons) +
                      " photons");
  }
  if (layout.layers.empty()) throw ConfigError("circuit: layout has no layers");
  if (layout.min_modes() > modes) {
    throw ConfigError("circuit: layout needs at least " +
                      std::to_string(layout.min_modes()) + " modes");
  }
  for (const auto& layer : layout.layers) {
    for (const auto& term : layer) {
      if (static_cast<int>(term.weights.size()) != layout.features) {
        throw ConfigError("circuit: phase term weight count != feature count");
      }
    }
  }
  if (meshes.size() != mesh_count()) {
    throw ConfigError("circuit: expected " + std::to_string(mesh_count()) +
                      " meshes for " + std::to_string(layout.layer_count()) +
                      " encoding layers, got " + std::to_string(meshes.size()));
  }
  for (const auto& mesh : meshes) {
    if (mesh.size() != MeshParams::count_for(modes)) {
      throw ConfigError("circuit: mesh has " + std::to_string(mesh.size()) +
                        " angles, expected " +
                        std::to_string(MeshParams::count_for(modes)));
    }
  }
  const auto f = static_cast<std::size_t>(layout.features);
  if (!feature_scale.empty() && feature_scale.size() != f) {
    throw ConfigError("circuit: feature_scale size != feature count");
  }
  if (!feature_offset.empty() && feature_offset.size() != f) {
    throw ConfigError("circuit: feature_offset size != feature count");
  }
}

CircuitSpec CircuitSpec::with_zero_meshes(int modes, FockState input,
                                          EncodingLayout layout) {
  CircuitSpec spec;
  spec.modes = modes;
  spec.input = std::move(input);
  spec.layout = std::move(layout);
  spec.meshes.assign(spec.mesh_count(), MeshParams::zeros(modes));
  spec.validate();
  return spec;
}

std::vector<double> scale_features(const CircuitSpec& spec, Features x) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t f = 0; f < out.size(); ++f) {
    if (!spec.feature_scale.empty()) out[f] *= spec.feature_scale[f];
    if (!spec.feature_offset.empty()) out[f] += spec.feature_offset[f];
  }
  return out;
}

ComplexMatrix mode_unitary(const CircuitSpec& spec, Features x) {
  if (static_cast<int>(x.size()) != spec.layout.features) {
    throw ConfigError("mode_unitary: data has " + std::to_string(x.size()) +
                      " features, layout expects " +
                      std::to_string(spec.layout.features));
  }
  if (spec.meshes.size() != spec.mesh_count()) {
    throw ConfigError("mode_unitary: mesh count does not match layout");
  }
  const std::vector<double> scaled = scale_features(spec, x);
  ComplexMatrix u = reck_unitary(spec.meshes[0], spec.modes);
  for (std::size_t layer = 0; layer < spec.layout.layer_count(); ++layer) {
    u = encoding_phases(scaled, spec.layout, layer, spec.modes).asDiagonal() * u;
    u = reck_unitary(spec.meshes[layer + 1], spec.modes) * u;
  }
  return u;
}

}  // namespace fockml
