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

// Truncated Fock representation: the blocks H_v with |v| <= L, each in its
// orthonormalized basis, and the matrices of the generators between them.
// Creation out of the top level is truncated to zero.

#ifndef QISOM_REP_HPP
#define QISOM_REP_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qisom/fock.hpp"
#include "qisom/graded.hpp"

namespace qisom {

struct FockBlock {
  GramBlock gram;
  CMatrix to_raw;        // C: orthonormal coordinates -> raw word coordinates
  CMatrix from_raw;      // C^{-1}
  std::map<MultiIndex, Eigen::Index> index;  // basis word -> raw column
};

class TruncatedFock {
 public:
  /// Blocks with |v| <= L. When box is given, only blocks v <= box are built;
  /// creation into a missing block is truncated like creation past level L.
  TruncatedFock(QMatrix q, int L, std::optional<OccVector> box = std::nullopt)
      : q_(std::move(q)), L_(L), box_(std::move(box)) {
    if (L_ < 0) throw Error("truncation level must be non-negative");
    if (box_ && box_->size() != q_.n()) throw Error("box length differs from generator count");
    FockInnerProduct inner(q_);
    for (const auto& v : occ_up_to_total(q_.n(), L_)) {
      if (box_ && !componentwise_le(v, *box_)) continue;
      FockBlock b;
      b.gram = gram_block(v, inner);
      b.to_raw = orthonormalize(b.gram);
      b.from_raw = b.gram.chol->transpose();
      for (std::size_t i = 0; i < b.gram.basis.size(); ++i) b.index.emplace(b.gram.basis[i], static_cast<Eigen::Index>(i));
      dims_.emplace(v, static_cast<Eigen::Index>(b.gram.basis.size()));
      blocks_.emplace(v, std::move(b));
    }
    build_generators();
  }

  const QMatrix& q() const { return q_; }
  std::size_t n() const { return q_.n(); }
  int L() const { return L_; }
  const std::optional<OccVector>& box() const { return box_; }
  const std::map<OccVector, FockBlock>& blocks() const { return blocks_; }
  const BlockDims& dims() const { return dims_; }
  bool has_block(const OccVector& v) const { return blocks_.count(v) > 0; }
  const FockBlock& block(const OccVector& v) const {
    auto it = blocks_.find(v);
    if (it == blocks_.end()) throw Error("no block " + v.to_string() + " in truncated Fock space");
    return it->second;
  }

  Eigen::Index total_dim() const {
    Eigen::Index d = 0;
    for (const auto& [v, dim] : dims_) d += dim;
    return d;
  }

  std::vector<OccVector> block_list() const {
    std::vector<OccVector> out;
    for (const auto& [v, b] : blocks_) out.push_back(v);
    return out;
  }

  /// Block (v -> v + delta_i) of the creation operator A_i, or nullptr if truncated.
  const CMatrix* creation_block(int i, const OccVector& v) const { return creation_[i - 1].block(v, v + unit(i)); }

  const GradedOperator& creation(int i) const { return creation_.at(static_cast<std::size_t>(i - 1)); }
  const GradedOperator& annihilation(int i) const { return annihilation_.at(static_cast<std::size_t>(i - 1)); }

  /// Orthonormal coordinates of the raw vector a_alpha Omega.
  CVector raw_vector(const MultiIndex& alpha) const {
    const auto& b = block(occ(alpha, n()));
    CVector e = CVector::Zero(b.gram.dim());
    e(b.index.at(alpha)) = 1.0;
    return b.from_raw * e;
  }

  OccVector unit(int i) const {
    std::vector<int> e(n(), 0);
    e[static_cast<std::size_t>(i - 1)] = 1;
    return OccVector(std::move(e));
  }

 private:
  void build_generators() {
    creation_.assign(n(), GradedOperator{});
    for (int i = 1; i <= static_cast<int>(n()); ++i) {
      for (const auto& [v, src] : blocks_) {
        const OccVector w = v + unit(i);
        auto tgt = blocks_.find(w);
        if (tgt == blocks_.end() || w.total() > L_) continue;
        // Raw action a_i a_alpha = a_{(i, alpha)}.
        CMatrix raw = CMatrix::Zero(tgt->second.gram.dim(), src.gram.dim());
        for (std::size_t c = 0; c < src.gram.basis.size(); ++c) {
          MultiIndex word{i};
          word.insert(word.end(), src.gram.basis[c].begin(), src.gram.basis[c].end());
          raw(tgt->second.index.at(word), static_cast<Eigen::Index>(c)) = 1.0;
        }
        creation_[static_cast<std::size_t>(i - 1)].add_block(v, w, tgt->second.from_raw * raw * src.to_raw);
      }
    }
    annihilation_.clear();
    for (const auto& c : creation_) annihilation_.push_back(c.adjoint());
  }

  QMatrix q_;
  int L_;
  std::optional<OccVector> box_;
  std::map<OccVector, FockBlock> blocks_;
  BlockDims dims_;
  std::vector<GradedOperator> creation_;
  std::vector<GradedOperator> annihilation_;
};

inline const GradedOperator& creation(int i, const TruncatedFock& t) {
  if (i < 1 || static_cast<std::size_t>(i) > t.n()) throw Error("generator index outside 1..n");
  return t.creation(i);
}

inline const GradedOperator& annihilation(int i, const TruncatedFock& t) {
  if (i < 1 || static_cast<std::size_t>(i) > t.n()) throw Error("generator index outside 1..n");
  return t.annihilation(i);
}

/// Matrix of a normal monomial c * a_mu a_sigma* on every block of t. The
/// factors act right to left: a_{sigma_1}* first, a_{mu_1} last.
inline GradedOperator act_on_monomial(const MultiIndex& mu, const MultiIndex& sigma, Complex c, const TruncatedFock& t) {
  GradedOperator out;
  for (const auto& [w, b] : t.blocks()) {
    OccVector cur = w;
    CMatrix m = c * CMatrix::Identity(b.gram.dim(), b.gram.dim());
    bool alive = true;
    for (int g : sigma) {
      const OccVector down = [&]() -> OccVector {
        std::vector<int> e = cur.entries();
        if (--e[static_cast<std::size_t>(g - 1)] < 0) return OccVector{};
        return OccVector(std::move(e));
      }();
      if (down.size() == 0) {
        alive = false;
        break;
      }
      const CMatrix* cb = t.creation_block(g, down);
      if (!cb) {
        alive = false;
        break;
      }
      m = cb->adjoint() * m;
      cur = down;
    }
    if (!alive) continue;
    for (auto it = mu.rbegin(); it != mu.rend(); ++it) {
      const CMatrix* cb = t.creation_block(*it, cur);
      if (!cb) {
        alive = false;
        break;
      }
      m = (*cb) * m;
      cur = cur + t.unit(*it);
    }
    if (alive) out.add_block(w, cur, m);
  }
  return out;
}

inline GradedOperator act_on_expression(const Expression& x, const TruncatedFock& t) {
  GradedOperator out;
  for (const auto& [k, c] : x.terms()) out += act_on_monomial(k.first, k.second, c, t);
  return out;
}

struct RelationResidual {
  int i = 0;
  int j = 0;
  double norm = 0.0;
};

struct RelationReport {
  int L = 0;
  int checked_up_to_level = 0;  // source levels <= L - 1
  std::vector<RelationResidual> twisted;    // A_i^H A_j - q_ij A_j A_i^H, i != j
  std::vector<RelationResidual> isometry;   // A_i^H A_i - I
  double worst = 0.0;
  double top_level_isometry_defect = 0.0;  // ||A_i^H A_i - I|| on level L (truncation artifact)
  std::string note;
};

/// Residuals of the defining relations on source levels <= L-1; level L is
/// excluded since creation out of it is truncated. Throws RelationViolated
/// when a residual exceeds tol.
inline RelationReport verify_relations(const TruncatedFock& t, double tol = 1e-9, bool throw_on_violation = true) {
  if (!t.q().isom_mode()) throw InvalidQMatrix(QMatrix::kZeroDiagonal, "relation check requires isometric mode");
  RelationReport r;
  r.L = t.L();
  r.checked_up_to_level = t.L() - 1;
  const auto safe = [&](const OccVector& v) { return v.total() <= t.L() - 1; };
  const auto id = GradedOperator::identity(t.dims());
  const int n = static_cast<int>(t.n());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      GradedOperator res;
      if (i == j) {
        res = t.annihilation(i) * t.creation(i) - id;
      } else {
        res = t.annihilation(i) * t.creation(j) - t.q()(i, j) * (t.creation(j) * t.annihilation(i));
      }
      const double nrm = res.restrict_source(safe).operator_norm();
      (i == j ? r.isometry : r.twisted).push_back({i, j, nrm});
      r.worst = std::max(r.worst, nrm);
      if (i == j) {
        const double top = res.restrict_source([&](const OccVector& v) { return v.total() == t.L(); }).operator_norm();
        r.top_level_isometry_defect = std::max(r.top_level_isometry_defect, top);
      }
      if (throw_on_violation && nrm > tol) throw RelationViolated(i, j, nrm);
    }
  }
  r.note = "source level " + std::to_string(t.L()) + " excluded: creation out of the top level is truncated";
  return r;
}

}  // namespace qisom

#endif  // QISOM_REP_HPP
