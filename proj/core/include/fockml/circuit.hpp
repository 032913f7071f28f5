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

// Trainable beam-splitter meshes, data-encoding phase layouts, and their
// composition into the m-mode transfer matrix
//   U(x) = W_{L+1} S_L(x) ... W_2 S_1(x) W_1.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fockml/fock.hpp"
#include "fockml/types.hpp"

namespace fockml {

/// Angles of one Reck mesh: m(m-1)/2 blocks, each contributing (theta, phi).
class MeshParams {
 public:
  MeshParams() = default;
  explicit MeshParams(std::vector<double> angles) : angles_(std::move(angles)) {}

  static std::size_t count_for(int modes) {
    return static_cast<std::size_t>(modes) * static_cast<std::size_t>(modes - 1);
  }
  static MeshParams zeros(int modes) {
    return MeshParams(std::vector<double>(count_for(modes), 0.0));
  }

  std::size_t size() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }
  std::vector<double>& mutable_angles() { return angles_; }

 private:
  std::vector<double> angles_;
};

/// Where the angles of one two-mode block live in a flat MeshParams.
struct MeshBlock {
  int top_mode;               ///< block acts on (top_mode, top_mode + 1)
  std::size_t theta_index;
  std::size_t phi_index;
};

/// Block order of the triangular mesh. Block k uses angles (2k, 2k+1) and is
/// applied k-th, so U = T_{K-1} ... T_1 T_0. Sweep s = 0..m-2 runs over
/// pairs (0,1), (1,2), ..., (m-2-s, m-1-s); for m = 3 the pairs are
/// (0,1), (1,2), (0,1).
std::vector<MeshBlock> reck_block_order(int modes);

/// T(theta, phi) = [[e^{i phi} cos theta, -sin theta],
///                  [e^{i phi} sin theta,  cos theta]].
/// All-zero angles give the identity.
Eigen::Matrix2cd two_mode_block(double theta, double phi);

/// Throws ConfigError unless params.size() == m(m-1).
ComplexMatrix reck_unitary(const MeshParams& params, int modes);

enum class EncodingVariant {
  Single,          ///< phase x on mode 0, one layer
  Series1D,        ///< phase (i+1) x on modes i = 0..m-2, one layer
  Parallel1D,      ///< m-1 layers, each with phase x on mode 0
  SeriesMultiD,    ///< one layer, 2^d - 1 phases: every nonempty subset sum
  ParallelMultiD,  ///< d layers, layer i encodes x_i on mode 0
  PerFeature,      ///< one layer, x_i on mode i (one phase shifter per feature)
};

std::string_view to_string(EncodingVariant variant);
EncodingVariant parse_encoding_variant(std::string_view name);

/// One phase shifter: phase = weights . x applied to `mode`.
struct PhaseTerm {
  int mode = 0;
  std::vector<double> weights;
};

using EncodingLayer = std::vector<PhaseTerm>;

struct EncodingLayout {
  EncodingVariant variant = EncodingVariant::Single;
  int features = 1;
  std::vector<EncodingLayer> layers;

  static EncodingLayout single();
  static EncodingLayout series_1d(int modes);
  static EncodingLayout parallel_1d(int modes);
  static EncodingLayout series_multi_d(int features);
  static EncodingLayout parallel_multi_d(int features);
  static EncodingLayout per_feature(int features);
  /// Builds the canonical layout of `variant` for the given size.
  static EncodingLayout make(EncodingVariant variant, int modes, int features);

  std::size_t layer_count() const { return layers.size(); }
  /// Smallest mode count that can host every phase term.
  int min_modes() const;
  /// Largest |sum of weights| over the terms acting on feature f in one
  /// layer, summed over layers. n times this bounds the frequencies in f.
  double frequency_multiplier(int feature) const;
};

/// Diagonal of S_layer(x): e^{i phase} on encoded modes, 1 elsewhere.
ComplexVector encoding_phases(Features x, const EncodingLayout& layout,
                              std::size_t layer, int modes);

ComplexMatrix encoding_unitary(Features x, const EncodingLayout& layout,
                               std::size_t layer, int modes);

struct CircuitSpec {
  int modes = 0;
  FockState input;
  EncodingLayout layout;
  /// One mesh per trainable block: layout.layer_count() + 1 of them.
  std::vector<MeshParams> meshes;
  /// Optional per-feature affine map x -> scale * x + offset applied before
  /// encoding. Empty means unscaled.
  std::vector<double> feature_scale;
  std::vector<double> feature_offset;

  int photons() const { return input.photons(); }
  std::size_t mesh_count() const { return layout.layer_count() + 1; }

  /// Throws ConfigError on any inconsistency.
  void validate() const;

  /// Spec with all-zero meshes.
  static CircuitSpec with_zero_meshes(int modes, FockState input,
                                      EncodingLayout layout);
};

/// Applies the optional affine feature map.
std::vector<double> scale_features(const CircuitSpec& spec, Features x);

/// W_{L+1} S_L(x) ... S_1(x) W_1.
ComplexMatrix mode_unitary(const CircuitSpec& spec, Features x);

}  // namespace fockml
