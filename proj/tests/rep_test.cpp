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

#include "qisom/rep.hpp"

#include <gtest/gtest.h>

#include "qisom/random.hpp"
#include "qisom/rewrite.hpp"

namespace qisom {
namespace {

QMatrix sample_q2() { return QMatrix(2, {0.0, Complex(0.3, 0.4), Complex(0.3, -0.4), 0.0}); }

GradedVector vacuum(std::size_t n) { return {{OccVector(n), CVector::Ones(1)}}; }

/// A_{mu_1} ... A_{mu_m} Omega in orthonormal coordinates.
GradedVector create_word(const MultiIndex& mu, const TruncatedFock& t) {
  GradedVector x = vacuum(t.n());
  for (auto it = mu.rbegin(); it != mu.rend(); ++it) x = t.creation(*it).apply(x);
  return x;
}

CVector only_block(const GradedVector& x, const OccVector& v) {
  EXPECT_EQ(x.size(), 1u);
  return x.at(v);
}

TEST(TruncatedFockTest, Dimensions) {
  const TruncatedFock t(sample_q2(), 3);
  EXPECT_EQ(t.total_dim(), 1 + 2 + 4 + 8);
  EXPECT_EQ(t.blocks().size(), 10u);
  Rng rng(1);
  const TruncatedFock t3(random_qmatrix(3, 0.5, rng), 2);
  EXPECT_EQ(t3.total_dim(), 1 + 3 + 9);
}

TEST(Creation, OnVacuum) {
  const TruncatedFock t(sample_q2(), 3);
  const auto x = create_word({1}, t);
  const CVector c = only_block(x, OccVector{1, 0});
  EXPECT_NEAR(c.norm(), 1.0, 1e-15);
  EXPECT_LE((c - t.raw_vector({1})).norm(), 1e-15);
}

TEST(Creation, UndeformedShift) {
  const TruncatedFock t(QMatrix::zero(2), 3);
  for (int i = 1; i <= 2; ++i)
    for (const auto& [k, m] : t.creation(i).blocks())
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        EXPECT_EQ((m.col(c).array() == Complex(1.0)).count(), 1);
        EXPECT_EQ((m.col(c).array() == Complex(0.0)).count(), m.rows() - 1);
      }
}

TEST(Creation, InnerProductMatchesRecursion) {
  const auto q = sample_q2();
  const TruncatedFock t(q, 3);
  const CVector x12 = only_block(create_word({1, 2}, t), OccVector{1, 1});
  const CVector x21 = only_block(create_word({2, 1}, t), OccVector{1, 1});
  // <x, y> = y^H x in orthonormal coordinates.
  const Complex ip = x21.dot(x12);
  EXPECT_LE(std::abs(ip - q(2, 1)), 1e-14);
  EXPECT_LE(std::abs(ip - std::conj(fock_inner({2, 1}, {1, 2}, q))), 1e-14);
  EXPECT_LE(std::abs(ip - fock_inner({1, 2}, {2, 1}, q)), 1e-14);
}

TEST(Creation, RawVectorsReproduceGram) {
  Rng rng(31);
  const QMatrix q = random_qmatrix(3, 0.9, rng);
  const TruncatedFock t(q, 3);
  for (const auto& [v, b] : t.blocks())
    for (const auto& alpha : b.gram.basis)
      for (const auto& beta : b.gram.basis) {
        const CVector xa = only_block(create_word(alpha, t), v);
        const CVector xb = only_block(create_word(beta, t), v);
        EXPECT_LE(std::abs(xb.dot(xa) - fock_inner(alpha, beta, q)), 1e-12);
        EXPECT_LE((xa - t.raw_vector(alpha)).norm(), 1e-12);
      }
}

TEST(Annihilation, KillsVacuum) {
  const TruncatedFock t(sample_q2(), 3);
  for (int i = 1; i <= 2; ++i) EXPECT_EQ(GradedOperator::norm(t.annihilation(i).apply(vacuum(2))), 0.0);
}

TEST(Annihilation, UndeformedRemovesFirstLetter) {
  const TruncatedFock t(QMatrix::zero(2), 3);
  const auto y = t.annihilation(1).apply(create_word({1, 2}, t));
  EXPECT_LE((only_block(y, OccVector{0, 1}) - t.raw_vector({2})).norm(), 1e-15);
}

TEST(Annihilation, TwistedMatchesRewriting) {
  const auto q = sample_q2();
  const TruncatedFock t(q, 3);
  const auto y = t.annihilation(1).apply(create_word({2, 1}, t));
  const auto nf = normal_form(parse_word("a1* a2 a1", 2), q);
  ASSERT_EQ(nf.mu, (MultiIndex{2}));
  EXPECT_LE((only_block(y, OccVector{0, 1}) - nf.coefficient * t.raw_vector({2})).norm(), 1e-14);
  EXPECT_LE(std::abs(nf.coefficient - q(1, 2)), 0.0);
}

TEST(VerifyRelations, UndeformedExact) {
  const TruncatedFock t(QMatrix::zero(2), 3);
  const auto r = verify_relations(t);
  EXPECT_LT(r.worst, 1e-12);
  EXPECT_EQ(r.checked_up_to_level, 2);
  EXPECT_FALSE(r.note.empty());
}

TEST(VerifyRelations, RandomDeformation) {
  Rng rng(32);
  for (std::size_t n = 2; n <= 3; ++n) {
    const TruncatedFock t(random_qmatrix(n, 0.9, rng), 4);
    const auto r = verify_relations(t);
    EXPECT_LT(r.worst, 1e-9);
    EXPECT_EQ(r.twisted.size(), n * (n - 1));
    EXPECT_EQ(r.isometry.size(), n);
  }
}

TEST(VerifyRelations, TopLevelIsTruncated) {
  const TruncatedFock t(sample_q2(), 3);
  const auto r = verify_relations(t);
  EXPECT_NEAR(r.top_level_isometry_defect, 1.0, 1e-9);
}

TEST(VerifyRelations, RejectsGeneralMode) {
  const TruncatedFock t(QMatrix(2, {0.1, 0.0, 0.0, 0.2}, QMatrix::Mode::General), 2);
  EXPECT_THROW(verify_relations(t), InvalidQMatrix);
}

TEST(ActOnExpression, Examples) {
  const auto q = sample_q2();
  const TruncatedFock t(q, 3);
  const auto id = act_on_expression(Expression::unit(), t);
  EXPECT_LE((id - GradedOperator::identity(t.dims())).frobenius_norm(), 0.0);

  const auto p = act_on_expression(Expression::monomial({1}, {1}), t);
  ASSERT_NE(p.block(OccVector{1, 0}, OccVector{1, 0}), nullptr);
  EXPECT_LE(std::abs((*p.block(OccVector{1, 0}, OccVector{1, 0}))(0, 0) - 1.0), 1e-14);
  EXPECT_TRUE(p.block_diagonal());

  const auto s = act_on_expression(Expression::monomial({1}, {2}), t);
  const CMatrix* b = s.block(OccVector{0, 1}, OccVector{1, 0});
  ASSERT_NE(b, nullptr);
  EXPECT_LE(std::abs((*b)(0, 0) - 1.0), 1e-14);
  EXPECT_FALSE(s.block_diagonal());
}

TEST(ActOnExpression, AdjointConsistency) {
  Rng rng(33);
  const QMatrix q = random_qmatrix(2, 0.9, rng);
  const TruncatedFock t(q, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_expression(2, 3, 3, rng);
    const auto lhs = act_on_expression(star(x), t);
    const auto rhs = act_on_expression(x, t).adjoint();
    EXPECT_LE((lhs - rhs).operator_norm(), 1e-9);
  }
}

TEST(ActOnExpression, HomomorphismOnSafeDomain) {
  Rng rng(34);
  const QMatrix q = random_qmatrix(3, 0.9, rng);
  const int L = 4;
  const TruncatedFock t(q, L);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_expression(3, 2, 2, rng);
    const auto y = random_expression(3, 2, 2, rng);
    // Intermediate levels stay <= L when the source level is <= L - 4.
    const auto safe = [&](const OccVector& v) { return v.total() <= L - 4; };
    const auto lhs = act_on_expression(multiply(x, y, q), t).restrict_source(safe);
    const auto rhs = (act_on_expression(x, t) * act_on_expression(y, t)).restrict_source(safe);
    EXPECT_LE((lhs - rhs).operator_norm(), 1e-9);
  }
}

TEST(ActOnExpression, BalancedIsBlockDiagonalAndHomomorphic) {
  Rng rng(35);
  const QMatrix q = random_qmatrix(2, 0.9, rng);
  const TruncatedFock t(q, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_balanced_expression(2, 2, 3, rng);
    const auto y = random_balanced_expression(2, 2, 3, rng);
    const auto ax = act_on_expression(x, t);
    EXPECT_TRUE(ax.block_diagonal());
    const auto lhs = act_on_expression(multiply(x, y, q), t);
    const auto rhs = ax * act_on_expression(y, t);
    EXPECT_LE((lhs - rhs).operator_norm(), 1e-9);
  }
}

TEST(OperatorNorm, MatchesSvd) {
  Rng rng(36);
  const TruncatedFock t(random_qmatrix(2, 0.9, rng), 3);
  const auto op = t.creation(1) + Complex(0.5, 0.2) * t.annihilation(2) * t.creation(1);
  double best = 0.0;
  // Dense assembly over all blocks for the reference value.
  std::map<OccVector, Eigen::Index> offset;
  Eigen::Index total = 0;
  for (const auto& [v, d] : t.dims()) {
    offset[v] = total;
    total += d;
  }
  CMatrix dense = CMatrix::Zero(total, total);
  for (const auto& [k, m] : op.blocks()) dense.block(offset[k.second], offset[k.first], m.rows(), m.cols()) += m;
  best = Eigen::JacobiSVD<CMatrix>(dense).singularValues()(0);
  EXPECT_NEAR(op.operator_norm(), best, 1e-9);
}

}  // namespace
}  // namespace qisom
