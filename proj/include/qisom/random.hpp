// Copyright 2026 The qisom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded generators for words, expressions and unitaries used by the
// property checks.

#ifndef QISOM_RANDOM_HPP
#define QISOM_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qisom/qmatrix.hpp"
#include "qisom/words.hpp"

namespace qisom {

using Rng = std::mt19937_64;

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, phase(rng));
}

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline Word random_word(std::size_t n, int max_len, Rng& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
  std::bernoulli_distribution star(0.5);
  Word w(static_cast<std::size_t>(len(rng)));
  for (auto& l : w) l = {gen(rng), star(rng)};
  return w;
}

inline MultiIndex random_multi_index(std::size_t n, int len, Rng& rng) {
  std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
  MultiIndex mu(static_cast<std::size_t>(len));
  for (auto& g : mu) g = gen(rng);
  return mu;
}

/// A random occ-balanced monomial: sigma is a random permutation of mu.
inline NormalMonomial random_balanced_monomial(std::size_t n, int max_len, Rng& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  NormalMonomial m;
  m.mu = random_multi_index(n, len(rng), rng);
  m.sigma = m.mu;
  std::shuffle(m.sigma.begin(), m.sigma.end(), rng);
  return m;
}

/// Random combination of `terms` monomials with |mu|, |sigma| <= max_len.
inline Expression random_expression(std::size_t n, int max_len, int terms, Rng& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  Expression x;
  for (int t = 0; t < terms; ++t)
    x.add(random_multi_index(n, len(rng), rng), random_multi_index(n, len(rng), rng), random_complex(rng));
  return x;
}

inline Expression random_balanced_expression(std::size_t n, int max_len, int terms, Rng& rng) {
  Expression x;
  for (int t = 0; t < terms; ++t) {
    const auto m = random_balanced_monomial(n, max_len, rng);
    x.add(m.mu, m.sigma, random_complex(rng));
  }
  return x;
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// phases of R's diagonal divided out.
inline Eigen::MatrixXcd random_unitary(std::size_t n, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd z(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = random_complex(rng) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

inline Eigen::MatrixXcd random_diagonal_unitary(std::size_t n, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) u(i, i) = random_phase(rng);
  return u;
}

}  // namespace qisom

#endif  // QISOM_RANDOM_HPP
