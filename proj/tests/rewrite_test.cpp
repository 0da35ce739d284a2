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

#include "qisom/rewrite.hpp"

#include <gtest/gtest.h>

#include "qisom/random.hpp"

namespace qisom {
namespace {

QMatrix sample_q2() { return QMatrix(2, {0.0, Complex(0.3, 0.4), Complex(0.3, -0.4), 0.0}); }

TEST(QMatrixTest, ValidatesInvariants) {
  EXPECT_NO_THROW(sample_q2());
  try {
    QMatrix(2, {0.0, Complex(0.3, 0.4), Complex(0.3, 0.4), 0.0});
    FAIL();
  } catch (const InvalidQMatrix& e) {
    EXPECT_EQ(e.invariant(), QMatrix::kHermitian);
    EXPECT_NE(std::string(e.what()).find("q_ji = conj(q_ij)"), std::string::npos);
  }
  try {
    QMatrix(2, {0.0, 1.0, 1.0, 0.0});
    FAIL();
  } catch (const InvalidQMatrix& e) {
    EXPECT_EQ(e.invariant(), QMatrix::kModulus);
  }
  try {
    QMatrix(2, {0.2, 0.0, 0.0, 0.0});
    FAIL();
  } catch (const InvalidQMatrix& e) {
    EXPECT_EQ(e.invariant(), QMatrix::kZeroDiagonal);
  }
  EXPECT_NO_THROW(QMatrix(2, {0.2, 0.0, 0.0, -0.3}, QMatrix::Mode::General));
  EXPECT_THROW(QMatrix(2, {Complex(0.2, 0.1), 0.0, 0.0, 0.0}, QMatrix::Mode::General), InvalidQMatrix);
  EXPECT_THROW(QMatrix(2, {0.0, 0.0, 0.0}), InvalidQMatrix);
}

TEST(QMatrixTest, RandomPresetIsAdmissible) {
  Rng rng(7);
  for (std::size_t n = 1; n <= 4; ++n) {
    const QMatrix q = random_qmatrix(n, 0.8, rng);
    EXPECT_TRUE(q.isom_mode());
    if (n > 1) {
      EXPECT_NEAR(q.max_modulus(), 0.8, 1e-15);
    }
  }
}

TEST(RewriteStep, IsometryRelation) {
  const auto q = sample_q2();
  const auto r = rewrite_step(parse_word("a1* a1", 2), 0, q);
  EXPECT_EQ(r.scalar, Complex(1.0));
  EXPECT_TRUE(r.word.empty());
}

TEST(RewriteStep, TwistedCommutation) {
  const auto q = sample_q2();
  const auto r = rewrite_step(parse_word("a1* a2", 2), 0, q);
  EXPECT_EQ(r.scalar, q(1, 2));
  EXPECT_EQ(r.word, parse_word("a2 a1*", 2));

  const auto r2 = rewrite_step(parse_word("a2 a1* a2", 2), 1, q);
  EXPECT_EQ(r2.scalar, q(1, 2));
  EXPECT_EQ(r2.word, parse_word("a2 a2 a1*", 2));
}

TEST(RewriteStep, RejectsNonRedex) {
  const auto q = sample_q2();
  EXPECT_THROW(rewrite_step(parse_word("a1 a1*", 2), 0, q), NotARedex);
  EXPECT_THROW(rewrite_step(parse_word("a1* a2*", 2), 0, q), NotARedex);
  EXPECT_THROW(rewrite_step(parse_word("a1*", 2), 0, q), NotARedex);
  EXPECT_THROW(rewrite_step(parse_word("a1* a2", 2), 1, q), NotARedex);
}

TEST(RewriteStep, RequiresIsometricMode) {
  const QMatrix general(2, {0.1, 0.0, 0.0, 0.2}, QMatrix::Mode::General);
  EXPECT_THROW(rewrite_step(parse_word("a1* a1", 2), 0, general), InvalidQMatrix);
  EXPECT_THROW(normal_form(parse_word("a1* a1", 2), general), InvalidQMatrix);
}

TEST(NormalForm, Examples) {
  const auto q = sample_q2();
  auto m = normal_form(parse_word("a1* a1", 2), q);
  EXPECT_EQ(m.coefficient, Complex(1.0));
  EXPECT_TRUE(m.mu.empty() && m.sigma.empty());

  m = normal_form(parse_word("a1* a2 a1", 2), q);
  EXPECT_EQ(m.coefficient, q(1, 2));
  EXPECT_EQ(m.mu, (MultiIndex{2}));
  EXPECT_TRUE(m.sigma.empty());

  const auto p = multiply(NormalMonomial{1.0, {2}, {1}}, NormalMonomial{1.0, {1}, {2}}, q);
  EXPECT_EQ(p.coefficient, Complex(1.0));
  EXPECT_EQ(p.mu, (MultiIndex{2}));
  EXPECT_EQ(p.sigma, (MultiIndex{2}));
}

TEST(NormalForm, SigmaReadsStarredLettersInReverse) {
  const auto q = sample_q2();
  // a1 a2* a1* = a1 (a1 a2)* so sigma = (1, 2).
  const auto m = normal_form(parse_word("a1 a2* a1*", 2), q);
  EXPECT_EQ(m.mu, (MultiIndex{1}));
  EXPECT_EQ(m.sigma, (MultiIndex{1, 2}));
}

TEST(NormalForm, ConfluenceLeftmostVersusRightmost) {
  Rng rng(11);
  for (int draw = 0; draw < 5; ++draw) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const QMatrix q = random_qmatrix(n, 0.9, rng);
      for (int trial = 0; trial < 100; ++trial) {
        const Word w = random_word(n, 8, rng);
        const auto left = reduce(w, q, Strategy::Leftmost);
        const auto right = reduce(w, q, Strategy::Rightmost);
        ASSERT_EQ(left.monomial.mu, right.monomial.mu) << to_string(w);
        ASSERT_EQ(left.monomial.sigma, right.monomial.sigma) << to_string(w);
        ASSERT_LE(std::abs(left.monomial.coefficient - right.monomial.coefficient), 1e-12) << to_string(w);
        ASSERT_EQ(left.steps, right.steps);
      }
    }
  }
}

TEST(NormalForm, TerminationAndCoefficientBounds) {
  Rng rng(12);
  const QMatrix q = random_qmatrix(3, 0.9, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word w = random_word(3, 10, rng);
    const auto r = reduce(w, q);
    const std::size_t len = w.size();
    EXPECT_LE(r.steps, len * len + len);
    EXPECT_LE(std::abs(r.monomial.coefficient), std::pow(q.max_modulus(), static_cast<double>(r.swaps)) + 1e-15);
    EXPECT_LE(std::abs(r.monomial.coefficient), 1.0);
    EXPECT_EQ(r.monomial.mu.size() + r.monomial.sigma.size() + 2 * (r.steps - r.swaps), len);
  }
}

TEST(NormalForm, UndeformedCoefficientVanishes) {
  // With q = 0, a1* a2 = 0: the coefficient is zero, not a spurious monomial.
  const auto m = normal_form(parse_word("a1* a2", 2), QMatrix::zero(2));
  EXPECT_EQ(m.coefficient, Complex(0.0));
}

TEST(Multiply, Examples) {
  const auto q = sample_q2();
  const Expression x = Expression::monomial({1}, {2}, {0.5, -1.0}) + Expression::monomial({2, 1}, {}, 2.0);
  EXPECT_TRUE(multiply(Expression::unit(), x, q).approx_equal(x));
  EXPECT_TRUE(multiply(x, Expression::unit(), q).approx_equal(x));

  const auto p = Expression::monomial({1}, {1});
  EXPECT_TRUE(multiply(p, p, q).approx_equal(p));

  EXPECT_TRUE(multiply(Expression::monomial({1}, {2}), Expression::monomial({2}, {1}), q).approx_equal(p));
}

TEST(Multiply, MaxLengthLaw) {
  Rng rng(13);
  for (int draw = 0; draw < 5; ++draw) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const QMatrix q = random_qmatrix(n, 0.9, rng);
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_balanced_monomial(n, 4, rng);
        const auto y = random_balanced_monomial(n, 4, rng);
        const auto p = multiply(x, y, q);
        EXPECT_TRUE(occ_balanced(p));
        EXPECT_EQ(occ(p.mu, n), max(occ(x.mu, n), occ(y.mu, n)));
        EXPECT_NE(p.coefficient, Complex(0.0));
      }
    }
  }
}

TEST(Multiply, Associative) {
  Rng rng(14);
  const QMatrix q = random_qmatrix(3, 0.9, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_expression(3, 2, 2, rng);
    const auto y = random_expression(3, 2, 2, rng);
    const auto z = random_expression(3, 2, 2, rng);
    EXPECT_TRUE(multiply(multiply(x, y, q), z, q).approx_equal(multiply(x, multiply(y, z, q), q), 1e-9));
  }
}

TEST(Star, Examples) {
  EXPECT_TRUE(star(Expression::monomial({1}, {2})).approx_equal(Expression::monomial({2}, {1})));
  EXPECT_TRUE(star(Expression::unit({1.0, 2.0})).approx_equal(Expression::unit({1.0, -2.0})));
}

TEST(Star, InvolutiveAndAntiMultiplicative) {
  Rng rng(15);
  for (int draw = 0; draw < 5; ++draw) {
    const QMatrix q = random_qmatrix(3, 0.9, rng);
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_expression(3, 3, 3, rng);
      const auto y = random_expression(3, 3, 3, rng);
      EXPECT_TRUE(star(star(x)).approx_equal(x, 0.0));
      EXPECT_TRUE(star(multiply(x, y, q)).approx_equal(multiply(star(y), star(x), q), 1e-9));
    }
  }
}

}  // namespace
}  // namespace qisom
