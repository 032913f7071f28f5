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

// Fock-space primitives: occupation-number states, the ordered n-photon
// basis, matrix permanents, and the lift of an m-mode unitary to the
// n-photon space.

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockml/types.hpp"

namespace fockml {

/// Photons per mode. Mode indices are zero-based.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);
  FockState(std::initializer_list<int> occupations)
      : FockState(std::vector<int>(occupations)) {}

  int modes() const { return static_cast<int>(occupations_.size()); }
  int photons() const { return photons_; }
  int operator[](int mode) const { return occupations_[mode]; }
  std::span<const int> occupations() const { return occupations_; }

  /// "|1,1,0>"
  std::string to_string() const;

  bool operator==(const FockState& other) const {
    return occupations_ == other.occupations_;
  }
  std::strong_ordering operator<=>(const FockState& other) const {
    return occupations_ <=> other.occupations_;
  }

 private:
  std::vector<int> occupations_;
  int photons_ = 0;
};

/// Accepts "111", "1,1,1", "|1,1,1>" or "|111>". Digits without separators
/// are read one mode per character.
FockState parse_fock_state(std::string_view text);

/// All n-photon states over m modes in reverse-lexicographic order:
/// (n,0,...,0) first and (0,...,0,n) last. Observable weights index into
/// this order, so it is part of the file formats and must not change.
class FockBasis {
 public:
  FockBasis(int modes, int photons);

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const FockState& operator[](std::size_t i) const { return states_[i]; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

  std::optional<std::size_t> find(const FockState& state) const;
  /// Throws ConfigError when the state is not in the basis.
  std::size_t index_of(const FockState& state) const;

 private:
  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::map<FockState, std::size_t> index_;
};

/// Throws ConfigError for m = 0 or n < 0.
FockBasis enumerate_fock_basis(int modes, int photons);

std::uint64_t binomial(int n, int k);

/// Largest photon number accepted by the factorial normalization.
inline constexpr int kMaxPhotons = 20;

/// n! from a precomputed table; throws ConfigError for n > kMaxPhotons.
double factorial(int n);

/// perm(A) by Ryser's formula with Gray-code subset order, O(2^k k).
/// The empty matrix has permanent 1.
Complex permanent(const ComplexMatrix& a);

/// <output| U |input>: permanent of the submatrix with row i repeated
/// output_i times and column j repeated input_j times, divided by
/// sqrt(prod output_i! prod input_j!).
Complex transition_amplitude(const ComplexMatrix& u, const FockState& input,
                             const FockState& output);

/// One column of the lifted unitary: amplitudes of every basis state.
ComplexVector output_amplitudes(const ComplexMatrix& u, const FockBasis& basis,
                                const FockState& input);

/// Frobenius norm of U^dagger U - I.
double unitarity_deviation(const ComplexMatrix& u);

inline constexpr double kUnitarityTolerance = 1e-10;

/// d x d matrix with entry [a, b] = <basis[a]| U |basis[b]>.
/// Throws NumericalError if U deviates from unitarity by more than
/// kUnitarityTolerance.
ComplexMatrix lift_unitary(const ComplexMatrix& u, const FockBasis& basis);

}  // namespace fockml
