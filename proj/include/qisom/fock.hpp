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

// Deformed Fock inner product and the Gram blocks of H_v.
//
// fock_inner(mu, sigma) = <xi_mu, xi_sigma>, linear in the first argument,
// evaluated by peeling sigma's first index:
//   <xi_mu, xi_sigma> = sum_{t : mu_t = sigma_1} q_{sigma_1 mu_1} ... q_{sigma_1 mu_{t-1}}
//                       <xi_{mu without t}, xi_{sigma_2 ... sigma_m}>.
// With gram[a][b] = <xi_a, xi_b>, the coordinate form of the inner product is
// <x, y> = y^H conj(gram) x, so orthonormal coordinates come from a factor of
// conj(gram).

#ifndef QISOM_FOCK_HPP
#define QISOM_FOCK_HPP

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qisom/qmatrix.hpp"
#include "qisom/rewrite.hpp"
#include "qisom/words.hpp"

namespace qisom {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Memoized evaluator of the Fock recursion for a fixed QMatrix. Not safe for
/// concurrent use; create one per task.
class FockInnerProduct {
 public:
  explicit FockInnerProduct(const QMatrix& q) : q_(q) {}

  Complex operator()(const MultiIndex& mu, const MultiIndex& sigma) const {
    if (mu.size() != sigma.size()) return {};
    if (mu.empty()) return {1.0, 0.0};
    auto key = std::make_pair(mu, sigma);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int j1 = sigma.front();
    const MultiIndex sigma_tail(sigma.begin() + 1, sigma.end());
    Complex sum{};
    Complex prefix{1.0, 0.0};
    MultiIndex reduced;
    reduced.reserve(mu.size() - 1);
    for (std::size_t t = 0; t < mu.size(); ++t) {
      if (prefix == Complex{}) break;
      if (mu[t] == j1) {
        reduced.assign(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(t));
        reduced.insert(reduced.end(), mu.begin() + static_cast<std::ptrdiff_t>(t) + 1, mu.end());
        sum += prefix * (*this)(reduced, sigma_tail);
      }
      prefix *= q_(j1, mu[t]);
    }
    memo_.emplace(std::move(key), sum);
    return sum;
  }

  const QMatrix& q() const { return q_; }
  std::size_t cache_size() const { return memo_.size(); }

 private:
  QMatrix q_;
  mutable std::map<std::pair<MultiIndex, MultiIndex>, Complex> memo_;
};

inline Complex fock_inner(const MultiIndex& mu, const MultiIndex& sigma, const QMatrix& q) {
  return FockInnerProduct(q)(mu, sigma);
}

/// Gram matrix of <.,.>_v on H_v with its triangular factor when certified.
struct GramBlock {
  OccVector v;
  std::vector<MultiIndex> basis;  // lexicographic
  CMatrix gram;
  std::optional<CMatrix> chol;  // lower triangular, chol * chol^H = gram
  double min_pivot = 0.0;

  bool positive() const { return chol.has_value(); }
  Eigen::Index dim() const { return gram.rows(); }

  /// Product of the pivots, i.e. det(gram).
  double determinant() const {
    if (!chol) return gram.determinant().real();
    double d = 1.0;
    for (Eigen::Index i = 0; i < chol->rows(); ++i) d *= std::norm((*chol)(i, i));
    return d;
  }
};

namespace detail {

/// Cholesky with explicit pivot tracking. Returns nullopt when some pivot is
/// <= pivot_tol; min_pivot receives the smallest pivot seen.
inline std::optional<CMatrix> cholesky(const CMatrix& g, double pivot_tol, double& min_pivot) {
  const Eigen::Index d = g.rows();
  CMatrix l = CMatrix::Zero(d, d);
  min_pivot = d == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < d; ++j) {
    double pivot = g(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    min_pivot = std::min(min_pivot, pivot);
    if (!(pivot > pivot_tol)) return std::nullopt;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (Eigen::Index i = j + 1; i < d; ++i) {
      Complex s = g(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / root;
    }
  }
  return l;
}

}  // namespace detail

/// Builds the block for v without throwing; chol is empty when not certified.
inline GramBlock assemble_gram_block(const OccVector& v, const FockInnerProduct& inner, double pivot_tol = 1e-12) {
  GramBlock g;
  g.v = v;
  g.basis = words_with_occ(v);
  const auto d = static_cast<Eigen::Index>(g.basis.size());
  g.gram.resize(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      g.gram(a, b) = inner(g.basis[static_cast<std::size_t>(a)], g.basis[static_cast<std::size_t>(b)]);
  g.chol = detail::cholesky(g.gram, pivot_tol, g.min_pivot);
  return g;
}

/// Gram block of H_v, certified positive-definite or NotPositive.
inline GramBlock gram_block(const OccVector& v, const FockInnerProduct& inner, double pivot_tol = 1e-12) {
  GramBlock g = assemble_gram_block(v, inner, pivot_tol);
  if (!g.positive()) throw NotPositive(v.to_string(), g.min_pivot);
  return g;
}

inline GramBlock gram_block(const OccVector& v, const QMatrix& q, double pivot_tol = 1e-12) {
  return gram_block(v, FockInnerProduct(q), pivot_tol);
}

/// The two independent evaluations of lambda_{mu,sigma}: the scalar part of
/// normal_form(a_sigma* a_mu), and the Fock recursion.
inline std::pair<Complex, Complex> pairing_check(const MultiIndex& mu, const MultiIndex& sigma, const QMatrix& q) {
  Word w;
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) w.push_back({*it, true});
  for (int g : mu) w.push_back({g, false});
  const NormalMonomial nf = normal_form(w, q);
  const Complex rewritten = (nf.mu.empty() && nf.sigma.empty()) ? nf.coefficient : Complex{};
  return {rewritten, fock_inner(mu, sigma, q)};
}

/// Change-of-basis C with columns the orthonormalized vectors:
/// a^_alpha = sum_beta C(beta, alpha) a_beta and <a^_alpha, a^_beta> = delta.
/// C is upper triangular, so a^_alpha only involves lexicographically earlier
/// basis words. Computed as (chol^T)^{-1}, the inverse conjugate transpose of
/// the factor of conj(gram).
inline CMatrix orthonormalize(const GramBlock& g) {
  if (!g.chol) throw NotPositive(g.v.to_string(), g.min_pivot);
  const CMatrix lt = g.chol->transpose();
  return lt.triangularView<Eigen::Upper>().solve(CMatrix::Identity(g.dim(), g.dim()));
}

/// Metric of the Fock inner product in raw word coordinates: <x, y> = y^H M x.
inline CMatrix coordinate_metric(const GramBlock& g) { return g.gram.conjugate(); }

}  // namespace qisom

#endif  // QISOM_FOCK_HPP
