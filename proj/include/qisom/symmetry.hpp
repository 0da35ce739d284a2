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

// Linear symmetries a_i -> sum_j a_j u_ji that preserve the relations, the
// gauge action of the n-torus, and the averaging map onto its fixed points.

#ifndef QISOM_SYMMETRY_HPP
#define QISOM_SYMMETRY_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qisom/random.hpp"
#include "qisom/rep.hpp"

namespace qisom {

class UnitaryCandidate {
 public:
  explicit UnitaryCandidate(CMatrix u, double tol = 1e-9) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() == 0) throw Error("unitary must be a non-empty square matrix");
    const double err = (u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols())).norm();
    if (err > tol) throw Error("matrix is not unitary: |u^H u - I| = " + std::to_string(err));
  }

  const CMatrix& matrix() const { return u_; }
  std::size_t n() const { return static_cast<std::size_t>(u_.rows()); }
  /// Entry u_ij, 1-based.
  Complex operator()(int i, int j) const { return u_(i - 1, j - 1); }

  UnitaryCandidate inverse() const { return UnitaryCandidate(u_.adjoint()); }
  friend UnitaryCandidate operator*(const UnitaryCandidate& a, const UnitaryCandidate& b) {
    return UnitaryCandidate(a.u_ * b.u_);
  }

 private:
  CMatrix u_;
};

class TorusElement {
 public:
  explicit TorusElement(std::vector<Complex> w, double tol = 1e-12) : w_(std::move(w)) {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (std::abs(std::abs(w_[i]) - 1.0) > tol) throw Error("torus entry " + std::to_string(i + 1) + " is off the unit circle");
  }

  static TorusElement identity(std::size_t n) { return TorusElement(std::vector<Complex>(n, 1.0)); }

  std::size_t n() const { return w_.size(); }
  Complex operator()(int i) const { return w_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<Complex>& entries() const { return w_; }

  /// prod_i w_i^{v_i}.
  Complex character(const OccVector& v) const {
    Complex c = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (int e = 0; e < v[i]; ++e) c *= w_[i];
    return c;
  }

  UnitaryCandidate as_unitary() const {
    CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(n()), static_cast<Eigen::Index>(n()));
    for (std::size_t i = 0; i < n(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = w_[i];
    return UnitaryCandidate(d);
  }

 private:
  std::vector<Complex> w_;
};

inline TorusElement random_torus(std::size_t n, Rng& rng) {
  std::vector<Complex> w(n);
  for (auto& x : w) x = random_phase(rng);
  return TorusElement(std::move(w));
}

struct MembershipResult {
  bool passed = true;
  std::optional<std::array<int, 4>> witness;  // (i, j, k, l)
  double worst = 0.0;
};

/// u preserves the relations iff conj(u_ki) u_lj (q_kl - q_ij) = 0 for all
/// i, j, k, l. The first failing quadruple is returned as witness.
inline MembershipResult membership_test(const UnitaryCandidate& u, const QMatrix& q, double tol = 1e-10) {
  if (u.n() != q.n()) throw Error("unitary and q matrix differ in size");
  const int n = static_cast<int>(q.n());
  MembershipResult r;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const double m = std::abs(std::conj(u(k, i)) * u(l, j) * (q(k, l) - q(i, j)));
          r.worst = std::max(r.worst, m);
          if (m >= tol && r.passed) {
            r.passed = false;
            r.witness = std::array<int, 4>{i, j, k, l};
          }
        }
  return r;
}

/// Unitary rotating coordinates (a, b) by angle theta, identity elsewhere.
inline UnitaryCandidate plane_rotation(std::size_t n, int a, int b, double theta) {
  CMatrix r = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  r(a - 1, a - 1) = std::cos(theta);
  r(b - 1, b - 1) = std::cos(theta);
  r(a - 1, b - 1) = -std::sin(theta);
  r(b - 1, a - 1) = std::sin(theta);
  return UnitaryCandidate(r);
}

struct GroupAxiomReport {
  int trials = 0;
  int passing = 0;            // sampled elements satisfying the membership test
  int closure_checked = 0;
  int closure_failures = 0;   // products of passing pairs that fail
  int inverse_failures = 0;   // adjoints of passing elements that fail
  bool distinct_diagonal = false;
  int nondiagonal_checked = 0;
  int nondiagonal_passed = 0; // must stay 0 when distinct_diagonal

  bool ok() const {
    return closure_failures == 0 && inverse_failures == 0 && (!distinct_diagonal || nondiagonal_passed == 0);
  }
};

namespace detail {

inline bool distinct_diagonal(const QMatrix& q) {
  for (int i = 1; i <= static_cast<int>(q.n()); ++i)
    for (int j = i + 1; j <= static_cast<int>(q.n()); ++j)
      if (std::abs(q(i, i) - q(j, j)) < 1e-12) return false;
  return true;
}

inline bool is_diagonal(const CMatrix& u, double tol = 1e-12) {
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      if (i != j && std::abs(u(i, j)) > tol) return false;
  return true;
}

}  // namespace detail

/// Samples diagonal unitaries (always members), Haar unitaries and coordinate
/// permutations; checks inverses and products of the members found. With
/// pairwise-distinct q_ii every sampled non-diagonal unitary must fail.
inline GroupAxiomReport group_axiom_sample(const QMatrix& q, int trials, Rng& rng) {
  if (trials < 1) throw Error("trials must be at least 1");
  const std::size_t n = q.n();
  GroupAxiomReport rep;
  rep.trials = trials;
  rep.distinct_diagonal = detail::distinct_diagonal(q);
  std::vector<UnitaryCandidate> members;
  const auto consider = [&](const UnitaryCandidate& u) {
    const bool pass = membership_test(u, q).passed;
    if (!detail::is_diagonal(u.matrix())) {
      ++rep.nondiagonal_checked;
      if (pass) ++rep.nondiagonal_passed;
    }
    if (!pass) return;
    ++rep.passing;
    if (!membership_test(u.inverse(), q).passed) ++rep.inverse_failures;
    members.push_back(u);
  };
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  for (int t = 0; t < trials; ++t) {
    consider(random_torus(n, rng).as_unitary());
    consider(UnitaryCandidate(random_unitary(n, rng)));
    std::shuffle(perm.begin(), perm.end(), rng);
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) p(perm[i], static_cast<Eigen::Index>(i)) = random_phase(rng);
    consider(UnitaryCandidate(p));
  }
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (int t = 0; t < trials && !members.empty(); ++t) {
    const auto& a = members[pick(rng)];
    const auto& b = members[pick(rng)];
    ++rep.closure_checked;
    if (!membership_test(a * b, q).passed) ++rep.closure_failures;
  }
  return rep;
}

/// Psi_w: a_mu a_sigma* -> prod w^{occ(mu)} conj(w)^{occ(sigma)} a_mu a_sigma*.
inline Expression torus_act(const TorusElement& w, const Expression& x) {
  Expression out;
  for (const auto& [key, c] : x.terms())
    out.add(key.first, key.second, c * w.character(occ(key.first, w.n())) * std::conj(w.character(occ(key.second, w.n()))));
  return out;
}

/// Torus average: keeps the occ-balanced monomials, drops the rest.
inline Expression conditional_expectation(const Expression& x) {
  Expression out;
  for (const auto& [key, c] : x.terms())
    if (occ_balanced(key.first, key.second)) out.add(key.first, key.second, c);
  return out;
}

/// Diagonal unitary multiplying block v by prod w_i^{v_i}.
inline GradedOperator torus_unitary(const TorusElement& w, const BlockDims& dims) {
  GradedOperator d;
  for (const auto& [v, dim] : dims) d.add_block(v, v, w.character(v) * CMatrix::Identity(dim, dim));
  return d;
}

/// Generators A_i' = sum_j u_ji A_j.
inline std::vector<GradedOperator> transformed_generators(const UnitaryCandidate& u, const TruncatedFock& t) {
  std::vector<GradedOperator> out;
  for (int i = 1; i <= static_cast<int>(t.n()); ++i) {
    GradedOperator a;
    for (int j = 1; j <= static_cast<int>(t.n()); ++j) a += u(j, i) * t.creation(j);
    out.push_back(std::move(a));
  }
  return out;
}

/// Worst relation residual of the transformed generators on levels <= L-1.
inline double transformed_relation_residual(const UnitaryCandidate& u, const TruncatedFock& t) {
  if (!t.q().isom_mode()) throw InvalidQMatrix(QMatrix::kZeroDiagonal, "relation check requires isometric mode");
  const auto a = transformed_generators(u, t);
  const auto id = GradedOperator::identity(t.dims());
  const auto safe = [&](const OccVector& v) { return v.total() <= t.L() - 1; };
  double worst = 0.0;
  const int n = static_cast<int>(t.n());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const auto& ai = a[static_cast<std::size_t>(i - 1)];
      const auto& aj = a[static_cast<std::size_t>(j - 1)];
      const GradedOperator res = i == j ? ai.adjoint() * ai - id : ai.adjoint() * aj - t.q()(i, j) * (aj * ai.adjoint());
      worst = std::max(worst, res.restrict_source(safe).operator_norm());
    }
  return worst;
}

}  // namespace qisom

#endif  // QISOM_SYMMETRY_HPP
