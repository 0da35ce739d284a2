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

#include "qisom/ideal.hpp"

#include <gtest/gtest.h>

#include "qisom/random.hpp"

namespace qisom {
namespace {

GradedVector vacuum(std::size_t n) { return {{OccVector(n), CVector::Ones(1)}}; }

double dist(const GradedOperator& a, const GradedOperator& b) { return (a - b).max_abs_entry(); }

TEST(UnitOfB, UndeformedIsComplementOfVacuum) {
  const TruncatedFock t(QMatrix::zero(2), 3);
  const auto sp = unit_of_B(t);
  EXPECT_EQ(sp.rank_p, 1);
  EXPECT_EQ(sp.rank_one_b, t.total_dim() - 1);
  GradedOperator expected = GradedOperator::identity(t.dims());
  expected.add_block(OccVector{0, 0}, OccVector{0, 0}, -CMatrix::Identity(1, 1));
  EXPECT_LE(dist(sp.one_b, expected), 1e-14);
  EXPECT_NEAR(sp.spectral_gap, 1.0, 1e-12);
}

TEST(UnitOfB, RandomQHasCorankOne) {
  Rng rng(41);
  for (int draw = 0; draw < 5; ++draw) {
    const TruncatedFock t(random_qmatrix(2, 0.9, rng), 3);
    const auto sp = unit_of_B(t);
    EXPECT_EQ(sp.rank_one_b, t.total_dim() - 1);
    EXPECT_EQ(sp.rank_p, 1);
    EXPECT_GT(sp.spectral_gap, 1e-3);
    EXPECT_LE(sp.largest_dropped, 1e-12);
    for (int i = 1; i <= 2; ++i) {
      const auto pa = (sp.p * t.creation(i)).restrict_source([&](const OccVector& v) { return v.total() <= t.L() - 1; });
      EXPECT_LE(pa.operator_norm(), 1e-9);
    }
  }
}

TEST(UnitOfB, Preconditions) {
  Rng rng(42);
  EXPECT_THROW(unit_of_B(TruncatedFock(random_general_qmatrix(2, 0.5, rng), 3)), InvalidQMatrix);
  EXPECT_THROW(unit_of_B(TruncatedFock(QMatrix::zero(2), 1)), Error);
}

TEST(OrthonormalCreation, MapsVacuumToBasisVector) {
  Rng rng(43);
  const TruncatedFock t(random_qmatrix(3, 0.8, rng), 3);
  for (const auto& v : occ_up_to_total(3, 3)) {
    const auto& b = t.block(v);
    for (std::size_t a = 0; a < b.gram.basis.size(); ++a) {
      const auto img = orthonormal_creation(b.gram.basis[a], t).apply(vacuum(3));
      CVector expected = CVector::Zero(b.gram.dim());
      expected(static_cast<Eigen::Index>(a)) = 1.0;
      // Also the explicit raw combination sum_gamma C(gamma, a) xi_gamma.
      CVector raw = CVector::Zero(b.gram.dim());
      for (std::size_t g = 0; g < b.gram.basis.size(); ++g) raw += b.to_raw(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(a)) * t.raw_vector(b.gram.basis[g]);
      ASSERT_EQ(img.count(v), 1u);
      EXPECT_LE((img.at(v) - expected).norm(), 1e-12);
      EXPECT_LE((raw - expected).norm(), 1e-12);
    }
  }
}

TEST(MatrixUnit, Examples) {
  Rng rng(44);
  const TruncatedFock t(random_qmatrix(2, 0.8, rng), 4);
  const auto p = unit_of_B(t).p;
  EXPECT_LE(dist(matrix_unit({}, {}, t, p), p), 1e-14);

  const MultiIndex a{1, 2}, b{2};
  const auto eab = matrix_unit(a, b, t, p);
  const auto eba = matrix_unit(b, a, t, p);
  const auto eaa = matrix_unit(a, a, t, p);
  EXPECT_LE(dist(eab * eba, eaa), 1e-9);
  EXPECT_LE(dist(eaa * eaa, eaa), 1e-9);
  EXPECT_LE(dist(eaa.adjoint(), eaa), 1e-9);
  EXPECT_EQ(numeric_rank(eaa.to_dense(t.dims())), 1);
  // beta != sigma, including occ(beta) = occ(sigma).
  EXPECT_LE((matrix_unit(a, {1, 2}, t, p) * matrix_unit({2, 1}, b, t, p)).max_abs_entry(), 1e-9);
  EXPECT_LE((eab * matrix_unit({1}, b, t, p)).max_abs_entry(), 1e-9);
  EXPECT_THROW(matrix_unit({1, 1, 1, 1, 1}, {}, t, p), TruncationOverflow);
}

TEST(VerifyIdeal, UndeformedIsExact) {
  const auto r = verify_ideal(TruncatedFock(QMatrix::zero(2), 3), 2);
  EXPECT_EQ(r.words, 7u);
  EXPECT_EQ(r.units, 49u);
  EXPECT_EQ(r.rank_p, 1);
  EXPECT_LT(r.product, 1e-12);
  EXPECT_LT(r.adjoint, 1e-12);
  EXPECT_LT(r.orthogonality_same_occ, 1e-12);
  EXPECT_LT(r.orthogonality_diff_occ, 1e-12);
  EXPECT_LT(r.p_kills_creation, 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyIdeal, RandomQ) {
  Rng rng(45);
  for (int draw = 0; draw < 3; ++draw) {
    const auto r = verify_ideal(TruncatedFock(random_qmatrix(2, 0.9, rng), 4), 2);
    EXPECT_TRUE(r.nontrivial());
    EXPECT_TRUE(r.independent());
    EXPECT_EQ(r.rank_one_failures, 0);
    EXPECT_LT(r.product, 1e-8);
    EXPECT_LT(r.adjoint, 1e-9);
    EXPECT_LT(r.p_kills_creation, 1e-9);
    EXPECT_LT(r.annihilation_kills_p, 1e-9);
    EXPECT_TRUE(r.passed());
  }
  const auto r3 = verify_ideal(TruncatedFock(random_qmatrix(3, 0.9, rng), 3), 2);
  EXPECT_EQ(r3.units, 13u * 13u);
  EXPECT_TRUE(r3.passed());
}

TEST(VerifyIdeal, RejectsLongWords) {
  EXPECT_THROW(verify_ideal(TruncatedFock(QMatrix::zero(2), 3), 3), TruncationOverflow);
}

}  // namespace
}  // namespace qisom
