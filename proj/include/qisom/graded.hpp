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

// Operators on a direct sum of blocks indexed by occupation vectors, stored as
// a sparse family of dense matrices keyed by (source block, target block).

#ifndef QISOM_GRADED_HPP
#define QISOM_GRADED_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qisom/words.hpp"

namespace qisom {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Block dimensions of the underlying graded space.
using BlockDims = std::map<OccVector, Eigen::Index>;

/// A vector in the graded space; missing blocks are zero.
using GradedVector = std::map<OccVector, CVector>;

class GradedOperator {
 public:
  using Key = std::pair<OccVector, OccVector>;  // (source, target)
  using Blocks = std::map<Key, CMatrix>;

  GradedOperator() = default;

  static GradedOperator identity(const BlockDims& dims) {
    GradedOperator id;
    for (const auto& [v, d] : dims) id.blocks_.emplace(Key{v, v}, CMatrix::Identity(d, d));
    return id;
  }

  /// Adds m (rows = target dim, cols = source dim) into the (source, target) block.
  void add_block(const OccVector& source, const OccVector& target, const CMatrix& m) {
    auto [it, inserted] = blocks_.try_emplace(Key{source, target}, m);
    if (!inserted) it->second += m;
  }

  const Blocks& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  /// Block for (source -> target), or nullptr when structurally zero.
  const CMatrix* block(const OccVector& source, const OccVector& target) const {
    auto it = blocks_.find(Key{source, target});
    return it == blocks_.end() ? nullptr : &it->second;
  }

  bool block_diagonal() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.first.first == kv.first.second; });
  }

  GradedOperator adjoint() const {
    GradedOperator out;
    for (const auto& [k, m] : blocks_) out.blocks_.emplace(Key{k.second, k.first}, m.adjoint());
    return out;
  }

  GradedOperator& operator+=(const GradedOperator& o) {
    for (const auto& [k, m] : o.blocks_) add_block(k.first, k.second, m);
    return *this;
  }
  GradedOperator& operator-=(const GradedOperator& o) {
    for (const auto& [k, m] : o.blocks_) add_block(k.first, k.second, -m);
    return *this;
  }
  GradedOperator& operator*=(Complex s) {
    for (auto& [k, m] : blocks_) m *= s;
    return *this;
  }
  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  friend GradedOperator operator*(Complex s, GradedOperator a) { return a *= s; }

  /// Composition a * b (b applied first).
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    std::map<OccVector, std::vector<const Blocks::value_type*>> a_by_source;
    for (const auto& kv : a.blocks_) a_by_source[kv.first.first].push_back(&kv);
    GradedOperator out;
    for (const auto& [kb, mb] : b.blocks_) {
      auto it = a_by_source.find(kb.second);
      if (it == a_by_source.end()) continue;
      for (const auto* ka : it->second) out.add_block(kb.first, ka->first.second, ka->second * mb);
    }
    return out;
  }

  /// Keeps only blocks whose source satisfies pred.
  GradedOperator restrict_source(const std::function<bool(const OccVector&)>& pred) const {
    GradedOperator out;
    for (const auto& [k, m] : blocks_)
      if (pred(k.first)) out.blocks_.emplace(k, m);
    return out;
  }

  /// Keeps only blocks whose source and target both satisfy pred.
  GradedOperator compress(const std::function<bool(const OccVector&)>& pred) const {
    GradedOperator out;
    for (const auto& [k, m] : blocks_)
      if (pred(k.first) && pred(k.second)) out.blocks_.emplace(k, m);
    return out;
  }

  GradedVector apply(const GradedVector& x) const {
    GradedVector y;
    for (const auto& [k, m] : blocks_) {
      auto it = x.find(k.first);
      if (it == x.end()) continue;
      auto [yt, inserted] = y.try_emplace(k.second, m * it->second);
      if (!inserted) yt->second += m * it->second;
    }
    return y;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& [k, m] : blocks_) s += m.squaredNorm();
    return std::sqrt(s);
  }

  double max_abs_entry() const {
    double s = 0.0;
    for (const auto& [k, m] : blocks_)
      if (m.size() > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
    return s;
  }

  /// Largest singular value by power iteration on X^H X, stopping when the
  /// relative change of the estimate drops below tol.
  double operator_norm(double tol = 1e-12, int max_iter = 2000) const {
    if (blocks_.empty()) return 0.0;
    if (frobenius_norm() == 0.0) return 0.0;
    GradedVector x;
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> gauss;
    for (const auto& [k, m] : blocks_) {
      if (x.count(k.first)) continue;
      CVector v(m.cols());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
      x.emplace(k.first, v);
    }
    const GradedOperator adj = adjoint();
    normalize(x);
    double estimate = 0.0;
    for (int it = 0; it < max_iter; ++it) {
      GradedVector z = adj.apply(apply(x));
      const double lambda = norm(z);
      if (lambda == 0.0) return 0.0;
      for (auto& [v, vec] : z) vec /= lambda;
      x = std::move(z);
      const double next = std::sqrt(lambda);
      if (std::abs(next - estimate) <= tol * next) return next;
      estimate = next;
    }
    return estimate;
  }

  /// Concatenation of the listed blocks (column-major each), zero-filled for
  /// structurally absent blocks. Shapes come from dims.
  CVector flatten(const std::vector<Key>& keys, const BlockDims& dims) const {
    Eigen::Index total = 0;
    for (const auto& k : keys) total += dims.at(k.first) * dims.at(k.second);
    CVector out = CVector::Zero(total);
    Eigen::Index off = 0;
    for (const auto& k : keys) {
      const Eigen::Index sz = dims.at(k.first) * dims.at(k.second);
      if (const CMatrix* m = block(k.first, k.second))
        out.segment(off, sz) = Eigen::Map<const CVector>(m->data(), sz);
      off += sz;
    }
    return out;
  }

  /// Dense matrix on the direct sum of all blocks in dims, in map order.
  CMatrix to_dense(const BlockDims& dims) const {
    std::map<OccVector, Eigen::Index> offset;
    Eigen::Index total = 0;
    for (const auto& [v, d] : dims) {
      offset.emplace(v, total);
      total += d;
    }
    CMatrix out = CMatrix::Zero(total, total);
    for (const auto& [k, m] : blocks_) out.block(offset.at(k.second), offset.at(k.first), m.rows(), m.cols()) += m;
    return out;
  }

  static double norm(const GradedVector& x) {
    double s = 0.0;
    for (const auto& [v, vec] : x) s += vec.squaredNorm();
    return std::sqrt(s);
  }

 private:
  static void normalize(GradedVector& x) {
    const double n = norm(x);
    if (n > 0.0)
      for (auto& [v, vec] : x) vec /= n;
  }

  Blocks blocks_;
};

/// Diagonal (source == target) keys for each listed block, in order.
inline std::vector<GradedOperator::Key> diagonal_keys(const std::vector<OccVector>& blocks) {
  std::vector<GradedOperator::Key> keys;
  keys.reserve(blocks.size());
  for (const auto& v : blocks) keys.emplace_back(v, v);
  return keys;
}

/// Numerical rank: singular values above rel_tol * largest singular value.
/// Jacobi rather than BDCSVD: Eigen 3.4 BDCSVD misreports some unit singular
/// values of projections as tiny.
inline Eigen::Index numeric_rank(const CMatrix& m, double rel_tol = 1e-7) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace qisom

#endif  // QISOM_GRADED_HPP
