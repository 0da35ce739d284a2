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

// The fixed-point filtration W_1 ⊆ W_2 ⊆ ... of the gauge action.
//
// W_k is spanned by balanced monomials a_mu a_sigma* with max_i occ_i(mu) <= k
// and acts block-diagonally on the direct sum of H_w, w <= (k,...,k). The
// prefix projections P_v^u, the assembled images of p_v^u, and the
// inclusion-exclusion units 1_v^k all live in that block representation.

#ifndef QISOM_GICAR_HPP
#define QISOM_GICAR_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qisom/rep.hpp"
#include "qisom/rewrite.hpp"

namespace qisom {

/// Monomial basis of W_k.
struct GicarSpan {
  int k = 0;
  std::size_t n = 0;
  std::vector<std::pair<MultiIndex, MultiIndex>> basis;

  OccVector bound() const { return OccVector::constant(n, k); }

  /// Sum over v <= k^n of multinomial(v)^2.
  std::uint64_t expected_dimension() const {
    std::uint64_t s = 0;
    for (const auto& v : occ_box(bound())) s += multinomial(v) * multinomial(v);
    return s;
  }

  /// Basis monomials with occ(mu) = occ(sigma) = v.
  std::vector<std::pair<MultiIndex, MultiIndex>> block_basis(const OccVector& v) const {
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    const auto words = words_with_occ(v);
    for (const auto& mu : words)
      for (const auto& sigma : words) out.emplace_back(mu, sigma);
    return out;
  }
};

inline GicarSpan gicar_span(std::size_t n, int k) {
  if (k < 0) throw Error("filtration level must be non-negative");
  GicarSpan s{k, n, {}};
  for (const auto& v : occ_box(s.bound())) {
    auto b = s.block_basis(v);
    s.basis.insert(s.basis.end(), b.begin(), b.end());
  }
  return s;
}

/// True iff every monomial of x lies in W_k.
inline bool in_filtration(const Expression& x, std::size_t n, int k) {
  for (const auto& [key, c] : x.terms()) {
    if (!occ_balanced(key.first, key.second)) return false;
    if (!componentwise_le(occ(key.first, n), OccVector::constant(n, k))) return false;
  }
  return true;
}

namespace detail {

inline void require_blocks(const TruncatedFock& t, const OccVector& bound) {
  for (const auto& w : occ_box(bound))
    if (!t.has_block(w))
      throw Error("truncated Fock space lacks block " + w.to_string() + " needed up to " + bound.to_string());
}

inline OccVector prefix_occ(const MultiIndex& mu, int len, std::size_t n) {
  return occ(MultiIndex(mu.begin(), mu.begin() + len), n);
}

}  // namespace detail

/// Orthogonal projection inside H_u onto span{a_mu : occ(mu_1..mu_|v|) = v}.
inline GradedOperator subspace_projection(const OccVector& v, const OccVector& u, const TruncatedFock& t) {
  if (!componentwise_le(v, u)) throw BadOrder("subspace projection needs v <= u, got v = " + v.to_string() + ", u = " + u.to_string());
  const FockBlock& b = t.block(u);
  std::vector<Eigen::Index> cols;
  for (std::size_t i = 0; i < b.gram.basis.size(); ++i)
    if (detail::prefix_occ(b.gram.basis[i], v.total(), t.n()) == v) cols.push_back(static_cast<Eigen::Index>(i));
  const Eigen::Index d = b.gram.dim();
  CMatrix span(d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) span.col(static_cast<Eigen::Index>(c)) = b.from_raw.col(cols[c]);
  CMatrix proj = CMatrix::Zero(d, d);
  if (!cols.empty()) {
    Eigen::HouseholderQR<CMatrix> qr(span);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(d, static_cast<Eigen::Index>(cols.size()));
    proj = q * q.adjoint();
  }
  GradedOperator out;
  out.add_block(u, u, proj);
  return out;
}

/// Image of p_v^u on the blocks w <= family: P_v^w where u <= w, zero elsewhere.
/// family defaults to k^n.
inline GradedOperator pvu_extension(const OccVector& v, const OccVector& u, int k, const TruncatedFock& t,
                                    std::optional<OccVector> family = std::nullopt) {
  const OccVector top = OccVector::constant(t.n(), k);
  if (!componentwise_le(v, u) || !componentwise_le(u, top))
    throw BadOrder("p_v^u needs v <= u <= k^n, got v = " + v.to_string() + ", u = " + u.to_string() + ", k = " + std::to_string(k));
  const OccVector fam = family.value_or(top);
  detail::require_blocks(t, fam);
  GradedOperator out;
  for (const auto& w : occ_box(fam))
    if (componentwise_le(u, w)) out += subspace_projection(v, w, t);
  return out;
}

/// sum over S with v + delta_S <= k^n of (-1)^|S| p_v^{v + delta_S}, on blocks <= family.
inline GradedOperator unit_operator(const OccVector& v, int k, const TruncatedFock& t,
                                    std::optional<OccVector> family = std::nullopt) {
  const std::size_t n = t.n();
  const OccVector top = OccVector::constant(n, k);
  if (!componentwise_le(v, top)) throw BadOrder("1_v^k needs v <= k^n, got v = " + v.to_string());
  GradedOperator out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const OccVector s = delta_mask(mask, n);
    const OccVector u = v + s;
    if (!componentwise_le(u, top)) continue;
    const double sign = (s.total() % 2 == 0) ? 1.0 : -1.0;
    out += Complex(sign) * pvu_extension(v, u, k, t, family);
  }
  return out;
}

/// The represented W_k: images of the monomial basis on blocks w <= k^n and a
/// factorization for solving preimages.
class GicarModel {
 public:
  GicarModel(TruncatedFock t, int k) : t_(std::move(t)), span_(gicar_span(t_.n(), k)) {
    detail::require_blocks(t_, span_.bound());
    blocks_ = occ_box(span_.bound());
    keys_ = diagonal_keys(blocks_);
    const auto inside = [&](const OccVector& w) { return componentwise_le(w, span_.bound()); };
    images_.reserve(span_.basis.size());
    for (const auto& [mu, sigma] : span_.basis) images_.push_back(act_on_monomial(mu, sigma, 1.0, t_).compress(inside));
    Eigen::Index rows = 0;
    for (const auto& w : blocks_) rows += t_.dims().at(w) * t_.dims().at(w);
    flat_.resize(rows, static_cast<Eigen::Index>(images_.size()));
    for (std::size_t j = 0; j < images_.size(); ++j) flat_.col(static_cast<Eigen::Index>(j)) = images_[j].flatten(keys_, t_.dims());
    solver_.compute(flat_);
  }

  const TruncatedFock& fock() const { return t_; }
  const GicarSpan& span() const { return span_; }
  int k() const { return span_.k; }
  const std::vector<OccVector>& blocks() const { return blocks_; }
  const std::vector<GradedOperator>& images() const { return images_; }
  const CMatrix& flattened() const { return flat_; }

  Eigen::Index represented_rank(double rel_tol = 1e-7) const { return numeric_rank(flat_, rel_tol); }

  GradedOperator restrict(const GradedOperator& op) const {
    return op.compress([&](const OccVector& w) { return componentwise_le(w, span_.bound()); });
  }

  /// The element of W_k acting as op on the blocks w <= k^n; residual receives
  /// the Frobenius misfit of the least-squares solve.
  Expression preimage(const GradedOperator& op, double& residual, double prune = 1e-12) const {
    const CVector target = restrict(op).flatten(keys_, t_.dims());
    const CVector c = solver_.solve(target);
    residual = (flat_ * c - target).norm();
    Expression x;
    for (std::size_t j = 0; j < span_.basis.size(); ++j) {
      const Complex cj = c(static_cast<Eigen::Index>(j));
      if (std::abs(cj) > prune) x.add(span_.basis[j].first, span_.basis[j].second, cj);
    }
    return x;
  }

 private:
  TruncatedFock t_;
  GicarSpan span_;
  std::vector<OccVector> blocks_;
  std::vector<GradedOperator::Key> keys_;
  std::vector<GradedOperator> images_;
  CMatrix flat_;
  Eigen::ColPivHouseholderQR<CMatrix> solver_;
};

struct BlockUnit {
  OccVector v;
  int k = 0;
  GradedOperator op;
  Expression expression;      // preimage in W_k under the block representation
  double preimage_residual = 0.0;
};

inline BlockUnit block_unit(const OccVector& v, const GicarModel& model) {
  BlockUnit u;
  u.v = v;
  u.k = model.k();
  u.op = unit_operator(v, model.k(), model.fock());
  u.expression = model.preimage(u.op, u.preimage_residual);
  return u;
}

inline BlockUnit block_unit(const OccVector& v, int k, const TruncatedFock& t) { return block_unit(v, GicarModel(t, k)); }

struct BlockDecomposition {
  OccVector v;
  std::uint64_t dim = 0;            // matrix size multinomial(v)
  Eigen::Index algebra_dim = 0;     // rank of V_v^k = W_v * 1_v^k
  Eigen::Index unit_rank = 0;
  std::map<std::string, double> residuals;
  std::map<std::string, bool> checks;
};

struct DecompositionReport {
  int k = 0;
  std::size_t n = 0;
  std::vector<BlockDecomposition> blocks;
  std::uint64_t total_dim = 0;      // sum of dim^2
  Eigen::Index represented_rank = 0;
  std::map<std::string, double> residuals;
  std::map<std::string, bool> checks;

  bool passed() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    for (const auto& b : blocks)
      for (const auto& [name, ok] : b.checks)
        if (!ok) return false;
    return true;
  }

  std::string first_failure() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return name;
    for (const auto& b : blocks)
      for (const auto& [name, ok] : b.checks)
        if (!ok) return name + " at v = " + b.v.to_string();
    return {};
  }
};

struct Tolerances {
  double equality = 1e-9;   // constructed operators
  double derived = 1e-8;    // one extra multiplication (commutators, centrality)
  double rank = 1e-7;       // relative singular value threshold
};

namespace detail {

inline CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

}  // namespace detail

/// Verifies W_k ≅ ⊕_{v <= k^n} M_{multinomial(v)} through the block units.
/// Throws DecompositionFailure naming the first violated check when
/// throw_on_failure is set.
inline DecompositionReport decompose(const GicarModel& model, const Tolerances& tol = {}, bool throw_on_failure = true) {
  const TruncatedFock& t = model.fock();
  DecompositionReport rep;
  rep.k = model.k();
  rep.n = t.n();
  rep.total_dim = model.span().expected_dimension();
  rep.represented_rank = model.represented_rank(tol.rank);
  rep.checks["represented_dimension"] =
      static_cast<std::uint64_t>(rep.represented_rank) == rep.total_dim && model.span().basis.size() == rep.total_dim;

  std::vector<BlockUnit> units;
  for (const auto& v : model.blocks()) units.push_back(block_unit(v, model));

  GradedOperator sum;
  double worst_orth = 0.0;
  for (std::size_t a = 0; a < units.size(); ++a) {
    sum += units[a].op;
    for (std::size_t b = 0; b < units.size(); ++b)
      if (a != b) worst_orth = std::max(worst_orth, (units[a].op * units[b].op).operator_norm());
  }
  const double sum_res = (model.restrict(sum) - model.restrict(GradedOperator::identity(t.dims()))).operator_norm();
  rep.residuals["units_orthogonal"] = worst_orth;
  rep.residuals["units_sum_identity"] = sum_res;
  rep.checks["units_orthogonal"] = worst_orth <= tol.equality;
  rep.checks["units_sum_identity"] = sum_res <= tol.equality;

  for (const auto& unit : units) {
    const OccVector& v = unit.v;
    BlockDecomposition bd;
    bd.v = v;
    bd.dim = multinomial(v);
    const auto d = static_cast<Eigen::Index>(bd.dim);
    const GradedOperator& u = unit.op;

    const double sa = (u - u.adjoint()).operator_norm();
    const double idem = (u * u - u).operator_norm();
    bd.residuals["unit_self_adjoint"] = sa;
    bd.residuals["unit_idempotent"] = idem;
    bd.checks["unit_self_adjoint"] = sa <= tol.equality;
    bd.checks["unit_idempotent"] = idem <= tol.equality;

    // Identity on H_v, zero on every other block w <= k^n.
    double own = 0.0, elsewhere = 0.0;
    for (const auto& w : model.blocks()) {
      const CMatrix* m = u.block(w, w);
      const Eigen::Index dw = t.dims().at(w);
      const CMatrix expected = w == v ? CMatrix(CMatrix::Identity(dw, dw)) : CMatrix(CMatrix::Zero(dw, dw));
      const double err = m ? (*m - expected).norm() : expected.norm();
      (w == v ? own : elsewhere) = std::max(w == v ? own : elsewhere, err);
    }
    bd.unit_rank = u.block(v, v) ? numeric_rank(*u.block(v, v), tol.rank) : 0;
    bd.residuals["unit_identity_on_own_block"] = own;
    bd.residuals["unit_zero_elsewhere"] = elsewhere;
    bd.checks["unit_identity_on_own_block"] = own <= tol.equality;
    bd.checks["unit_zero_elsewhere"] = elsewhere <= tol.equality;
    bd.checks["unit_rank"] = bd.unit_rank == d;

    double central = 0.0;
    for (const auto& img : model.images()) central = std::max(central, (u * img - img * u).operator_norm());
    bd.residuals["central"] = central;
    bd.checks["central"] = central <= tol.derived;

    bd.residuals["unit_preimage"] = unit.preimage_residual;
    bd.checks["unit_preimage"] = unit.preimage_residual <= tol.derived && in_filtration(unit.expression, t.n(), model.k());

    // V_v^k = {pi(x) 1_v^k : x in W_v}: supported on H_v, of dimension d^2,
    // closed under products and adjoints.
    std::vector<CMatrix> elems;
    double leak = 0.0;
    for (const auto& [mu, sigma] : model.span().block_basis(v)) {
      const GradedOperator e = model.restrict(act_on_monomial(mu, sigma, 1.0, t)) * u;
      for (const auto& [key, m] : e.blocks())
        if (!(key.first == v && key.second == v)) leak = std::max(leak, m.norm());
      const CMatrix* m = e.block(v, v);
      elems.push_back(m ? *m : CMatrix(CMatrix::Zero(d, d)));
    }
    CMatrix flat(d * d, static_cast<Eigen::Index>(elems.size()));
    for (std::size_t j = 0; j < elems.size(); ++j) flat.col(static_cast<Eigen::Index>(j)) = detail::vec(elems[j]);
    bd.algebra_dim = numeric_rank(flat, tol.rank);
    bd.residuals["support_leak"] = leak;
    bd.checks["supported_on_own_block"] = leak <= tol.equality;
    bd.checks["dimension"] = bd.algebra_dim == d * d;

    Eigen::HouseholderQR<CMatrix> qr(flat);
    const Eigen::Index r = std::min<Eigen::Index>(bd.algebra_dim, flat.rows());
    const CMatrix basis = qr.householderQ() * CMatrix::Identity(flat.rows(), r);
    const auto outside = [&](const CMatrix& m) {
      const CVector x = detail::vec(m);
      return (x - basis * (basis.adjoint() * x)).norm() / std::max(1.0, x.norm());
    };
    double prod = 0.0, adj = 0.0;
    for (const auto& a : elems) {
      adj = std::max(adj, outside(a.adjoint()));
      for (const auto& b : elems) prod = std::max(prod, outside(a * b));
    }
    bd.residuals["closed_product"] = prod;
    bd.residuals["closed_adjoint"] = adj;
    bd.checks["closed_product"] = prod <= tol.derived;
    bd.checks["closed_adjoint"] = adj <= tol.derived;

    rep.blocks.push_back(std::move(bd));
  }

  if (throw_on_failure && !rep.passed()) throw DecompositionFailure("decomposition check failed: " + rep.first_failure());
  return rep;
}

inline DecompositionReport decompose(int k, const TruncatedFock& t, const Tolerances& tol = {}, bool throw_on_failure = true) {
  return decompose(GicarModel(t, k), tol, throw_on_failure);
}

/// Fock space with the default truncation L = n*k + 1 serving level k.
inline TruncatedFock fock_for_level(const QMatrix& q, int k) {
  return TruncatedFock(q, static_cast<int>(q.n()) * k + 1, OccVector::constant(q.n(), k));
}

}  // namespace qisom

#endif  // QISOM_GICAR_HPP
