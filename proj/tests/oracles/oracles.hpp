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

// Reference implementations used only by the tests. Each one follows the
// textbook definition directly and shares no algorithmic code with the
// library, so agreement between the two is evidence for both.

#pragma once

#include <map>
#include <vector>

#include "fockml/types.hpp"

namespace fockml::oracle {

using Occupation = std::vector<int>;

/// Sum over all k! permutations.
Complex naive_permanent(const ComplexMatrix& a);

/// Every composition of n into m parts, in no particular order.
std::vector<Occupation> compositions(int modes, int photons);

/// <out| U |in> by expanding prod_j (sum_i U_ij a_i^dag)^{in_j} into
/// creation-operator monomials and reading off the coefficient of `out`.
Complex mode_operator_amplitude(const ComplexMatrix& u, const Occupation& in,
                                const Occupation& out);

/// Fourier coefficients c_w, w = -n..n, of the single-phase model
/// sum_b lambda_b |<b| W2 S(x) W1 |in>|^2 with S(x) = diag(e^{ix}, 1, ...),
/// from the double sum over intermediate states s, s':
///   c_w = sum_{s_0 - s'_0 = w} sum_b lambda_b a_b(s) conj(a_b(s')),
///   a_b(s) = <b|W2|s> <s|W1|in>.
std::vector<Complex> matrix_element_coefficients(
    const ComplexMatrix& w1, const ComplexMatrix& w2, const Occupation& in,
    const std::map<Occupation, double>& weights);

/// Dense Gaussian elimination with partial pivoting.
Eigen::VectorXd solve_dense(Eigen::MatrixXd a, Eigen::VectorXd b);

/// Mean squared residual of the best least-squares trigonometric
/// polynomial of the given degree through (xs, ys).
double trig_fit_mse(const std::vector<double>& xs, const std::vector<double>& ys,
                    int degree);

/// sqrt(2) cos(k gamma (w_r . x_i + b_r)) / sqrt(R).
Eigen::MatrixXd classical_rff(const DataMatrix& x, const DataMatrix& w,
                              const std::vector<double>& b, double gamma, int k);

/// (Z^T Z + alpha I)^{-1} Z^T y.
Eigen::VectorXd ridge_weights(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                              double alpha);

/// Gaussian kernel ridge regression on scaled Euclidean distances;
/// returns the predictions on `test`.
Eigen::VectorXd gaussian_kernel_ridge(const DataMatrix& train,
                                      const Eigen::VectorXd& y,
                                      const DataMatrix& test, double sigma,
                                      double alpha, double scale);

/// Fraction of predictions whose sign (0 counts as +) matches the label.
double sign_accuracy(const Eigen::VectorXd& predictions, const Eigen::VectorXd& labels);

}  // namespace fockml::oracle
