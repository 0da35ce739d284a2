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

// The projection p = 1 - 1_B, with 1_B the unit of the C*-subalgebra
// generated by the a_i a_i*, and the matrix units e_ab = a^_a p a^_b*.

#ifndef QISOM_IDEAL_HPP
#define QISOM_IDEAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qisom/rep.hpp"

namespace qisom {

struct SupportProjection {
  GradedOperator one_b;
  GradedOperator p;
  Eigen::Index rank_one_b = 0;
  Eigen::Index rank_p = 0;
  double spectral_gap = 0.0;     // smallest eigenvalue kept in the support
  double largest_dropped = 0.0;  // largest eigenvalue treated as zero
};

/// 1_B as the support projection of sum_i A_i A_i^H, computed blockwise.
/// Throws SpectralGapTooSmall when an eigenvalue falls within a factor
/// `margin` of the threshold on either side.
inline SupportProjection unit_of_B(const TruncatedFock& t, double threshold = 1e-8, double margin = 100.0) {
  if (!t.q().isom_mode()) throw InvalidQMatrix(QMatrix::kZeroDiagonal, "unit of B requires isometric mode");
  if (t.L() < 2) throw Error("unit of B needs truncation level L >= 2");
  GradedOperator s;
  for (int i = 1; i <= static_cast<int>(t.n()); ++i) s += t.creation(i) * t.annihilation(i);
  SupportProjection out;
  out.spectral_gap = std::numeric_limits<double>::infinity();
  for (const auto& [v, d] : t.dims()) {
    const CMatrix* m = s.block(v, v);
    const CMatrix block = m ? *m : CMatrix(CMatrix::Zero(d, d));
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(block);
    const auto& ev = eig.eigenvalues();
    CMatrix proj = CMatrix::Zero(d, d);
    Eigen::Index kept = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double lambda = ev(j);
      if (lambda > threshold / margin && lambda < threshold * margin)
        throw SpectralGapTooSmall("eigenvalue " + std::to_string(lambda) + " of sum A_i A_i^H on block " + v.to_string() +
                                  " lies too close to the support threshold");
      if (lambda > threshold) {
        proj += eig.eigenvectors().col(j) * eig.eigenvectors().col(j).adjoint();
        out.spectral_gap = std::min(out.spectral_gap, lambda);
        ++kept;
      } else {
        out.largest_dropped = std::max(out.largest_dropped, std::abs(lambda));
      }
    }
    out.rank_one_b += kept;
    out.rank_p += d - kept;
    out.one_b.add_block(v, v, proj);
    out.p.add_block(v, v, CMatrix::Identity(d, d) - proj);
  }
  return out;
}

/// Creation word A_{g_1} ... A_{g_m}.
inline GradedOperator creation_word(const MultiIndex& gamma, const TruncatedFock& t) {
  GradedOperator out = GradedOperator::identity(t.dims());
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) out = t.creation(*it) * out;
  return out;
}

/// Orthonormalized creation word a^_alpha = sum_gamma C(gamma, alpha) A_gamma
/// over the basis of H_occ(alpha).
inline GradedOperator orthonormal_creation(const MultiIndex& alpha, const TruncatedFock& t) {
  if (static_cast<int>(alpha.size()) > t.L())
    throw TruncationOverflow("word " + to_string(alpha) + " is longer than truncation level " + std::to_string(t.L()));
  const FockBlock& b = t.block(occ(alpha, t.n()));
  const Eigen::Index a = b.index.at(alpha);
  GradedOperator out;
  for (std::size_t g = 0; g < b.gram.basis.size(); ++g) {
    const Complex c = b.to_raw(static_cast<Eigen::Index>(g), a);
    if (c != Complex{}) out += c * creation_word(b.gram.basis[g], t);
  }
  return out;
}

/// e_{alpha beta} = a^_alpha p a^_beta^H.
inline GradedOperator matrix_unit(const MultiIndex& alpha, const MultiIndex& beta, const TruncatedFock& t, const GradedOperator& p) {
  return orthonormal_creation(alpha, t) * p * orthonormal_creation(beta, t).adjoint();
}

inline GradedOperator matrix_unit(const MultiIndex& alpha, const MultiIndex& beta, const TruncatedFock& t) {
  return matrix_unit(alpha, beta, t, unit_of_B(t).p);
}

struct IdealReport {
  int L = 0;
  int max_len = 0;
  Eigen::Index dim = 0;
  Eigen::Index rank_p = 0;
  double spectral_gap = 0.0;
  double p_projection = 0.0;        // max(|p^2 - p|, |p - p^H|)
  double p_kills_creation = 0.0;    // max_i |p A_i| on levels <= L-1
  double annihilation_kills_p = 0.0; // max_i |A_i^H p|
  double one_b_plus_p = 0.0;        // |1_B + p - I|
  std::size_t words = 0;
  std::size_t units = 0;
  double product = 0.0;             // max |e_ab e_sm - delta_bs e_am|
  double adjoint = 0.0;             // max |e_ab^H - e_ba|
  double diagonal_projection = 0.0; // max |e_aa^2 - e_aa|
  int rank_one_failures = 0;
  double orthogonality_same_occ = 0.0;  // max |p a^_b^H a^_a p - delta p|, occ(a) = occ(b)
  double orthogonality_diff_occ = 0.0;  // max |p a^_b^H a^_a p|, occ(a) != occ(b)
  Eigen::Index span_rank = 0;

  bool nontrivial() const { return rank_p > 0 && rank_p < dim; }
  bool independent() const { return static_cast<std::size_t>(span_rank) == units; }

  bool passed(double tol_eq = 1e-9, double tol_derived = 1e-8) const {
    return nontrivial() && p_projection <= tol_eq && p_kills_creation <= tol_eq && annihilation_kills_p <= tol_eq &&
           one_b_plus_p <= tol_eq && product <= tol_derived && adjoint <= tol_eq && diagonal_projection <= tol_derived &&
           rank_one_failures == 0 && orthogonality_same_occ <= tol_derived && orthogonality_diff_occ <= tol_derived &&
           independent();
  }
};

/// Checks the projection and the matrix units over all words of length
/// <= max_len. Requires max_len <= L - 1.
inline IdealReport verify_ideal(const TruncatedFock& t, int max_len) {
  if (max_len < 0 || max_len > t.L() - 1)
    throw TruncationOverflow("max_len must lie in 0..L-1 = " + std::to_string(t.L() - 1));
  const SupportProjection sp = unit_of_B(t);
  const BlockDims& dims = t.dims();
  IdealReport r;
  r.L = t.L();
  r.max_len = max_len;
  r.dim = t.total_dim();
  r.rank_p = sp.rank_p;
  r.spectral_gap = sp.spectral_gap;

  const CMatrix p = sp.p.to_dense(dims);
  r.p_projection = std::max(GradedOperator(sp.p * sp.p - sp.p).operator_norm(), (sp.p - sp.p.adjoint()).operator_norm());
  r.one_b_plus_p = (sp.one_b + sp.p - GradedOperator::identity(dims)).operator_norm();
  const auto safe = [&](const OccVector& v) { return v.total() <= t.L() - 1; };
  for (int i = 1; i <= static_cast<int>(t.n()); ++i) {
    r.p_kills_creation = std::max(r.p_kills_creation, (sp.p * t.creation(i)).restrict_source(safe).operator_norm());
    r.annihilation_kills_p = std::max(r.annihilation_kills_p, (t.annihilation(i) * sp.p).operator_norm());
  }

  std::vector<MultiIndex> words;
  for (int m = 0; m <= max_len; ++m)
    for (const auto& w : all_words_of_length(t.n(), m)) words.push_back(w);
  r.words = words.size();

  std::vector<CMatrix> hat;  // dense a^_alpha
  for (const auto& w : words) hat.push_back(orthonormal_creation(w, t).to_dense(dims));
  const std::size_t nw = words.size();

  for (std::size_t a = 0; a < nw; ++a)
    for (std::size_t b = 0; b < nw; ++b) {
      const CMatrix g = p * hat[b].adjoint() * hat[a] * p;
      if (occ(words[a], t.n()) == occ(words[b], t.n()))
        r.orthogonality_same_occ = std::max(r.orthogonality_same_occ, (g - (a == b ? p : CMatrix(CMatrix::Zero(r.dim, r.dim)))).norm());
      else
        r.orthogonality_diff_occ = std::max(r.orthogonality_diff_occ, g.norm());
    }

  std::vector<CMatrix> e(nw * nw);
  const auto at = [&](std::size_t a, std::size_t b) -> CMatrix& { return e[a * nw + b]; };
  for (std::size_t a = 0; a < nw; ++a)
    for (std::size_t b = 0; b < nw; ++b) at(a, b) = hat[a] * p * hat[b].adjoint();
  r.units = e.size();

  for (std::size_t a = 0; a < nw; ++a)
    for (std::size_t b = 0; b < nw; ++b) {
      r.adjoint = std::max(r.adjoint, (at(a, b).adjoint() - at(b, a)).norm());
      for (std::size_t s = 0; s < nw; ++s)
        for (std::size_t m = 0; m < nw; ++m) {
          const CMatrix prod = at(a, b) * at(s, m);
          const double res = b == s ? (prod - at(a, m)).norm() : prod.norm();
          r.product = std::max(r.product, res);
        }
    }
  for (std::size_t a = 0; a < nw; ++a) {
    const CMatrix& ea = at(a, a);
    r.diagonal_projection = std::max(r.diagonal_projection, (ea * ea - ea).norm());
    if (numeric_rank(ea) != 1) ++r.rank_one_failures;
  }

  CMatrix flat(r.dim * r.dim, static_cast<Eigen::Index>(e.size()));
  for (std::size_t j = 0; j < e.size(); ++j) flat.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const CVector>(e[j].data(), e[j].size());
  r.span_rank = numeric_rank(flat);
  return r;
}

}  // namespace qisom

#endif  // QISOM_IDEAL_HPP
