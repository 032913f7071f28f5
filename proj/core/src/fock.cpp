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

#include "fockml/fock.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

namespace fockml {

namespace {

constexpr std::array<double, kMaxPhotons + 1> kFactorials = [] {
  std::array<double, kMaxPhotons + 1> table{};
  table[0] = 1.0;
  for (int i = 1; i <= kMaxPhotons; ++i) table[i] = table[i - 1] * i;
  return table;
}();

void append_states(int mode, int remaining, std::vector<int>& current,
                   std::vector<FockState>& out) {
  const int m = static_cast<int>(current.size());
  if (mode == m - 1) {
    current[mode] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[mode] = k;
    append_states(mode + 1, remaining - k, current, out);
  }
}

// Mode index of every photon, e.g. (2,0,1) -> [0,0,2].
std::vector<int> photon_modes(const FockState& state) {
  std::vector<int> modes;
  modes.reserve(state.photons());
  for (int j = 0; j < state.modes(); ++j) {
    for (int c = 0; c < state[j]; ++c) modes.push_back(j);
  }
  return modes;
}

double occupation_factorials(const FockState& state) {
  double product = 1.0;
  for (int occupation : state.occupations()) product *= factorial(occupation);
  return product;
}

}  // namespace

FockState::FockState(std::vector<int> occupations)
    : occupations_(std::move(occupations)) {
  for (int occupation : occupations_) {
    if (occupation < 0) {
      throw ConfigError("FockState: negative occupation number");
    }
    photons_ += occupation;
  }
}

std::string FockState::to_string() const {
  std::ostringstream out;
  out << '|';
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (i) out << ',';
    out << occupations_[i];
  }
  out << '>';
  return out.str();
}

FockState parse_fock_state(std::string_view text) {
  std::string body;
  for (char c : text) {
    if (c == '|' || c == '>' || c == '(' || c == ')' || c == '[' || c == ']' ||
        std::isspace(static_cast<unsigned char>(c))) {
      continue;
    }
    body.push_back(c);
  }
  if (body.empty()) throw ConfigError("empty Fock state");
  std::vector<int> occupations;
  if (body.find(',') == std::string::npos) {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ConfigError("invalid Fock state: " + std::string(text));
      }
      occupations.push_back(c - '0');
    }
  } else {
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() ||
          item.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("invalid Fock state: " + std::string(text));
      }
      occupations.push_back(std::stoi(item));
    }
  }
  return FockState(std::move(occupations));
}

FockBasis::FockBasis(int modes, int photons)
    : modes_(modes), photons_(photons) {
  if (modes < 1) throw ConfigError("FockBasis: mode count must be >= 1");
  if (photons < 0) throw ConfigError("FockBasis: photon count must be >= 0");
  std::vector<int> current(modes, 0);
  states_.reserve(binomial(photons + modes - 1, photons));
  append_states(0, photons, current, states_);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::optional<std::size_t> FockBasis::find(const FockState& state) const {
  const auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index_of(const FockState& state) const {
  if (auto i = find(state)) return *i;
  throw ConfigError("state " + state.to_string() + " is not in the " +
                    std::to_string(photons_) + "-photon " +
                    std::to_string(modes_) + "-mode basis");
}

FockBasis enumerate_fock_basis(int modes, int photons) {
  return FockBasis(modes, photons);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / i;
  }
  return result;
}

double factorial(int n) {
  if (n < 0 || n > kMaxPhotons) {
    throw ConfigError("factorial: argument " + std::to_string(n) +
                      " outside [0, " + std::to_string(kMaxPhotons) + "]");
  }
  return kFactorials[n];
}

Complex permanent(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ConfigError("permanent: matrix must be square");
  }
  const int k = static_cast<int>(a.rows());
  if (k == 0) return {1.0, 0.0};
  if (k == 1) return a(0, 0);
  if (k > 62) throw ConfigError("permanent: matrix too large");

  // perm(A) = (-1)^k sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} a_ij,
  // visiting subsets in Gray-code order so each step adds or removes one
  // column from the running row sums.
  ComplexVector row_sums = ComplexVector::Zero(k);
  Complex total{0.0, 0.0};
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << k;
  for (std::uint64_t g = 1; g < subsets; ++g) {
    const int column = std::countr_zero(g);
    const std::uint64_t bit = std::uint64_t{1} << column;
    gray ^= bit;
    if (gray & bit) {
      row_sums += a.col(column);
    } else {
      row_sums -= a.col(column);
    }
    Complex product = row_sums[0];
    for (int i = 1; i < k; ++i) product *= row_sums[i];
    if (std::popcount(gray) % 2 == 0) {
      total += product;
    } else {
      total -= product;
    }
  }
  return (k % 2 == 0) ? total : -total;
}

Complex transition_amplitude(const ComplexMatrix& u, const FockState& input,
                             const FockState& output) {
  const int m = input.modes();
  if (u.rows() != m || u.cols() != m) {
    throw ConfigError("transition_amplitude: U must be " + std::to_string(m) +
                      "x" + std::to_string(m));
  }
  if (output.modes() != m) {
    throw ConfigError("transition_amplitude: mode count mismatch");
  }
  if (input.photons() != output.photons()) {
    throw ConfigError("transition_amplitude: photon totals differ");
  }
  const std::vector<int> rows = photon_modes(output);
  const std::vector<int> cols = photon_modes(input);
  const int n = input.photons();
  ComplexMatrix sub(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) sub(i, j) = u(rows[i], cols[j]);
  }
  return permanent(sub) /
         std::sqrt(occupation_factorials(output) * occupation_factorials(input));
}

ComplexVector output_amplitudes(const ComplexMatrix& u, const FockBasis& basis,
                                const FockState& input) {
  if (input.modes() != basis.modes() || input.photons() != basis.photons()) {
    throw ConfigError("output_amplitudes: input state does not match basis");
  }
  const int m = basis.modes();
  if (u.rows() != m || u.cols() != m) {
    throw ConfigError("output_amplitudes: U must be " + std::to_string(m) +
                      "x" + std::to_string(m));
  }
  const int n = basis.photons();
  const std::vector<int> cols = photon_modes(input);
  const double input_norm = occupation_factorials(input);

  // Columns are fixed by the input; gather them once.
  ComplexMatrix gathered(m, n);
  for (int j = 0; j < n; ++j) gathered.col(j) = u.col(cols[j]);

  ComplexVector amplitudes(static_cast<Eigen::Index>(basis.size()));
  ComplexMatrix sub(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const FockState& output = basis[a];
    int row = 0;
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c < output[i]; ++c) sub.row(row++) = gathered.row(i);
    }
    amplitudes[static_cast<Eigen::Index>(a)] =
        permanent(sub) / std::sqrt(occupation_factorials(output) * input_norm);
  }
  return amplitudes;
}

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw ConfigError("unitarity_deviation: matrix must be square");
  }
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

ComplexMatrix lift_unitary(const ComplexMatrix& u, const FockBasis& basis) {
  const int m = basis.modes();
  if (u.rows() != m || u.cols() != m) {
    throw ConfigError("lift_unitary: U must be " + std::to_string(m) + "x" +
                      std::to_string(m));
  }
  const double deviation = unitarity_deviation(u);
  if (!(deviation <= kUnitarityTolerance)) {
    std::ostringstream msg;
    msg << "lift_unitary: U is not unitary (|U^dag U - I|_F = " << deviation
        << ")";
    throw NumericalError(msg.str());
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix lifted(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    lifted.col(b) = output_amplitudes(u, basis, basis[static_cast<std::size_t>(b)]);
  }
  return lifted;
}

}  // namespace fockml
