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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fockml/circuit.hpp"
#include "fockml/fock.hpp"
#include "fockml/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace fockml {
namespace {

TEST(FockState, RejectsNegativeOccupation) {
  EXPECT_THROW(FockState({1, -1}), ConfigError);
}

TEST(FockState, PrintsAndParses) {
  const FockState s{2, 2, 1};
  EXPECT_EQ(s.to_string(), "|2,2,1>");
  EXPECT_EQ(s.photons(), 5);
  EXPECT_EQ(parse_fock_state("221"), s);
  EXPECT_EQ(parse_fock_state("2,2,1"), s);
  EXPECT_EQ(parse_fock_state("|221>"), s);
  EXPECT_EQ(parse_fock_state("|2,2,1>"), s);
  EXPECT_THROW(parse_fock_state(""), ConfigError);
  EXPECT_THROW(parse_fock_state("1a1"), ConfigError);
}

TEST(FockBasis, TwoModesOnePhoton) {
  const FockBasis basis(2, 1);
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0], FockState({1, 0}));
  EXPECT_EQ(basis[1], FockState({0, 1}));
}

TEST(FockBasis, VacuumOnly) {
  const FockBasis basis(3, 0);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], FockState({0, 0, 0}));
}

TEST(FockBasis, ReverseLexicographicOrder) {
  const FockBasis basis(3, 3);
  ASSERT_EQ(basis.size(), 10u);
  EXPECT_EQ(basis[0], FockState({3, 0, 0}));
  EXPECT_EQ(basis[1], FockState({2, 1, 0}));
  EXPECT_EQ(basis[2], FockState({2, 0, 1}));
  EXPECT_EQ(basis[9], FockState({0, 0, 3}));
  for (std::size_t i = 1; i < basis.size(); ++i) EXPECT_GT(basis[i - 1], basis[i]);
}

TEST(FockBasis, SizeMatchesBinomialAndOracle) {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      const FockBasis basis(m, n);
      EXPECT_EQ(basis.size(), binomial(n + m - 1, n));
      auto expected = oracle::compositions(m, n);
      EXPECT_EQ(basis.size(), expected.size());
      for (const auto& occ : expected) {
        EXPECT_TRUE(basis.find(FockState(occ)).has_value());
      }
    }
  }
}

TEST(FockBasis, IndexRoundTrip) {
  const FockBasis basis(4, 3);
  for (std::size_t i = 0; i < basis.size(); ++i) EXPECT_EQ(basis.index_of(basis[i]), i);
  EXPECT_THROW(basis.index_of(FockState({1, 1, 0, 0})), ConfigError);
}

TEST(FockBasis, RejectsZeroModes) {
  EXPECT_THROW(enumerate_fock_basis(0, 1), ConfigError);
  EXPECT_THROW(enumerate_fock_basis(2, -1), ConfigError);
}

TEST(Factorial, TableAndLimit) {
  EXPECT_EQ(factorial(0), 1.0);
  EXPECT_EQ(factorial(5), 120.0);
  EXPECT_EQ(factorial(20), 2432902008176640000.0);
  EXPECT_THROW(factorial(21), ConfigError);
}

TEST(Permanent, Identity) {
  EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Identity(3, 3)) - 1.0), 0.0, 1e-15);
}

TEST(Permanent, TwoByTwo) {
  ComplexMatrix a(2, 2);
  a << Complex(1, 2), Complex(3, -1), Complex(0.5, 0), Complex(-2, 1);
  const Complex expected = a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
  EXPECT_LT(std::abs(permanent(a) - expected), 1e-14);
}

TEST(Permanent, AllOnes) {
  EXPECT_NEAR(permanent(ComplexMatrix::Ones(4, 4)).real(), 24.0, 1e-12);
}

TEST(Permanent, EmptyIsOne) {
  EXPECT_EQ(permanent(ComplexMatrix(0, 0)), Complex(1.0, 0.0));
}

TEST(Permanent, RejectsNonSquare) {
  EXPECT_THROW(permanent(ComplexMatrix::Ones(2, 3)), ConfigError);
}

TEST(Permanent, MatchesNaiveOracle) {
  Rng rng(7);
  for (int k = 1; k <= 7; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      const ComplexMatrix a = testing_util::random_complex(rng, k, k);
      const Complex fast = permanent(a);
      const Complex slow = oracle::naive_permanent(a);
      EXPECT_LE(std::abs(fast - slow), 1e-10 * std::max(1.0, std::abs(slow)))
          << "k=" << k;
    }
  }
}

TEST(Permanent, InvariantUnderRowAndColumnPermutations) {
  Rng rng(11);
  const ComplexMatrix a = testing_util::random_complex(rng, 5, 5);
  const Complex base = permanent(a);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> rows(5), cols(5);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    rng.shuffle(rows);
    rng.shuffle(cols);
    ComplexMatrix b(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) b(i, j) = a(rows[i], cols[j]);
    }
    EXPECT_LE(std::abs(permanent(b) - base), 1e-10 * std::abs(base));
  }
}

TEST(TransitionAmplitude, SinglePhotonIsMatrixEntry) {
  Rng rng(3);
  const ComplexMatrix u = testing_util::random_unitary(rng, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::vector<int> in(3, 0), out(3, 0);
      in[j] = 1;
      out[i] = 1;
      EXPECT_LT(std::abs(transition_amplitude(u, FockState(in), FockState(out)) - u(i, j)),
                1e-14);
    }
  }
}

TEST(TransitionAmplitude, HongOuMandel) {
  ComplexMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  EXPECT_LT(std::abs(transition_amplitude(h, {1, 1}, {1, 1})), 1e-15);
  const Complex bunched = transition_amplitude(h, {1, 1}, {2, 0});
  EXPECT_NEAR(bunched.real(), r, 1e-15);
  EXPECT_NEAR(bunched.imag(), 0.0, 1e-15);
  EXPECT_LT(std::abs(oracle::mode_operator_amplitude(h, {1, 1}, {2, 0}) - bunched), 1e-15);
}

TEST(TransitionAmplitude, RejectsMismatch) {
  const ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(transition_amplitude(u, {1, 0}, {1, 1}), ConfigError);
  EXPECT_THROW(transition_amplitude(u, {1, 0, 0}, {0, 1, 0}), ConfigError);
}

TEST(TransitionAmplitude, MatchesModeOperatorOracle) {
  Rng rng(5);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      const ComplexMatrix u = testing_util::random_unitary(rng, m);
      const FockBasis basis(m, n);
      for (const auto& in : basis) {
        for (const auto& out : basis) {
          const std::vector<int> vin(in.occupations().begin(), in.occupations().end());
          const std::vector<int> vout(out.occupations().begin(), out.occupations().end());
          EXPECT_LT(std::abs(transition_amplitude(u, in, out) -
                             oracle::mode_operator_amplitude(u, vin, vout)),
                    1e-12);
        }
      }
    }
  }
}

TEST(LiftUnitary, SinglePhotonEqualsU) {
  Rng rng(9);
  const ComplexMatrix u = testing_util::random_unitary(rng, 4);
  const ComplexMatrix lifted = lift_unitary(u, FockBasis(4, 1));
  EXPECT_LT((lifted - u).norm(), 1e-14);
}

TEST(LiftUnitary, IdentityLiftsToIdentity) {
  const FockBasis basis(3, 3);
  const ComplexMatrix lifted = lift_unitary(ComplexMatrix::Identity(3, 3), basis);
  EXPECT_LT((lifted - ComplexMatrix::Identity(10, 10)).norm(), 1e-15);
}

TEST(LiftUnitary, PreservesUnitarity) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.index(4));
    const int n = static_cast<int>(rng.index(5));
    const ComplexMatrix lifted =
        lift_unitary(testing_util::random_unitary(rng, m), FockBasis(m, n));
    EXPECT_LT(unitarity_deviation(lifted), 1e-10) << "m=" << m << " n=" << n;
  }
}

TEST(LiftUnitary, Homomorphism) {
  Rng rng(17);
  for (int n = 0; n <= 3; ++n) {
    const FockBasis basis(3, n);
    const ComplexMatrix u = testing_util::random_unitary(rng, 3);
    const ComplexMatrix v = testing_util::random_unitary(rng, 3);
    const ComplexMatrix lhs = lift_unitary(u * v, basis);
    const ComplexMatrix rhs = lift_unitary(u, basis) * lift_unitary(v, basis);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(LiftUnitary, RejectsNonUnitary) {
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  u(0, 0) = 1.1;
  try {
    lift_unitary(u, FockBasis(2, 1));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("not unitary"), std::string::npos);
  }
}

TEST(OutputAmplitudes, MatchesLiftColumn) {
  Rng rng(19);
  const ComplexMatrix u = testing_util::random_unitary(rng, 3);
  const FockBasis basis(3, 2);
  const ComplexMatrix lifted = lift_unitary(u, basis);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const ComplexVector column = output_amplitudes(u, basis, basis[b]);
    EXPECT_LT((column - lifted.col(static_cast<Eigen::Index>(b))).norm(), 1e-14);
  }
}

}  // namespace
}  // namespace fockml
