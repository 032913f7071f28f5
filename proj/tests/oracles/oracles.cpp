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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fockml::oracle {

Complex naive_permanent(const ComplexMatrix& a) {
  const auto k = static_cast<int>(a.rows());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < k; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Occupation> compositions(int modes, int photons) {
  std::vector<Occupation> out;
  Occupation current(modes, 0);
  auto fill = [&](auto& self, int mode, int left) -> void {
    if (mode == modes - 1) {
      current[mode] = left;
      out.push_back(current);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      current[mode] = c;
      self(self, mode + 1, left - c);
    }
  };
  fill(fill, 0, photons);
  return out;
}

namespace {

double fact(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Complex mode_operator_amplitude(const ComplexMatrix& u, const Occupation& in,
                                const Occupation& out) {
  const auto m = static_cast<int>(u.rows());
  std::map<Occupation, Complex> poly{{Occupation(m, 0), 1.0}};
  for (int j = 0; j < m; ++j) {
    for (int copy = 0; copy < in[j]; ++copy) {
      std::map<Occupation, Complex> next;
      for (const auto& [monomial, coeff] : poly) {
        for (int i = 0; i < m; ++i) {
          Occupation grown = monomial;
          ++grown[i];
          next[grown] += coeff * u(i, j);
        }
      }
      poly = std::move(next);
    }
  }
  double in_norm = 1.0, out_norm = 1.0;
  for (int v : in) in_norm *= fact(v);
  for (int v : out) out_norm *= fact(v);
  const auto it = poly.find(out);
  if (it == poly.end()) return 0.0;
  return it->second * std::sqrt(out_norm) / std::sqrt(in_norm);
}

std::vector<Complex> matrix_element_coefficients(
    const ComplexMatrix& w1, const ComplexMatrix& w2, const Occupation& in,
    const std::map<Occupation, double>& weights) {
  const auto m = static_cast<int>(w1.rows());
  const int n = std::accumulate(in.begin(), in.end(), 0);
  const std::vector<Occupation> states = compositions(m, n);
  std::vector<Complex> c(2 * n + 1, 0.0);
  for (const Occupation& b : states) {
    const double lambda = weights.at(b);
    std::vector<Complex> a(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
      a[s] = mode_operator_amplitude(w2, states[s], b) *
             mode_operator_amplitude(w1, in, states[s]);
    }
    for (std::size_t s = 0; s < states.size(); ++s) {
      for (std::size_t t = 0; t < states.size(); ++t) {
        const int omega = states[s][0] - states[t][0];
        c[omega + n] += lambda * a[s] * std::conj(a[t]);
      }
    }
  }
  return c;
}

Eigen::VectorXd solve_dense(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    a.row(col).swap(a.row(pivot));
    std::swap(b[col], b[pivot]);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return x;
}

double trig_fit_mse(const std::vector<double>& xs, const std::vector<double>& ys,
                    int degree) {
  const auto rows = static_cast<Eigen::Index>(xs.size());
  const Eigen::Index cols = 2 * degree + 1;
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    for (int k = 1; k <= degree; ++k) {
      design(i, 2 * k - 1) = std::cos(k * x);
      design(i, 2 * k) = std::sin(k * x);
    }
    target[i] = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coeffs =
      solve_dense(design.transpose() * design, design.transpose() * target);
  return (design * coeffs - target).squaredNorm() / static_cast<double>(rows);
}

Eigen::MatrixXd classical_rff(const DataMatrix& x, const DataMatrix& w,
                              const std::vector<double>& b, double gamma, int k) {
  const Eigen::Index r_count = w.rows();
  Eigen::MatrixXd z(x.rows(), r_count);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index r = 0; r < r_count; ++r) {
      double dot = 0.0;
      for (Eigen::Index d = 0; d < x.cols(); ++d) dot += w(r, d) * x(i, d);
      z(i, r) = std::sqrt(2.0) *
                std::cos(k * gamma * (dot + b[static_cast<std::size_t>(r)])) /
                std::sqrt(static_cast<double>(r_count));
    }
  }
  return z;
}

Eigen::VectorXd ridge_weights(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                              double alpha) {
  Eigen::MatrixXd system = z.transpose() * z;
  for (Eigen::Index i = 0; i < system.rows(); ++i) system(i, i) += alpha;
  return solve_dense(system, z.transpose() * y);
}

Eigen::VectorXd gaussian_kernel_ridge(const DataMatrix& train,
                                      const Eigen::VectorXd& y,
                                      const DataMatrix& test, double sigma,
                                      double alpha, double scale) {
  auto k = [&](const DataMatrix& a, Eigen::Index i, const DataMatrix& b,
               Eigen::Index j) {
    double d2 = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double diff = scale * (a(i, c) - b(j, c));
      d2 += diff * diff;
    }
    return std::exp(-d2 / (2.0 * sigma * sigma));
  };
  const Eigen::Index n = train.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = k(train, i, train, j);
    gram(i, i) += alpha;
  }
  const Eigen::VectorXd beta = solve_dense(gram, y);
  Eigen::VectorXd out(test.rows());
  for (Eigen::Index t = 0; t < test.rows(); ++t) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += beta[i] * k(train, i, test, t);
    out[t] = s;
  }
  return out;
}

double sign_accuracy(const Eigen::VectorXd& predictions,
                     const Eigen::VectorXd& labels) {
  int correct = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const double predicted = predictions[i] >= 0.0 ? 1.0 : -1.0;
    correct += predicted == labels[i];
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace fockml::oracle
