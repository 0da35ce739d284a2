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

// The ten end-to-end acceptance criteria. Each runs at fixed tolerances under
// a wall-clock limit and reports what it checked; a criterion passes only if
// every check holds and it finishes inside its limit.

#ifndef QISOM_ACCEPTANCE_HPP
#define QISOM_ACCEPTANCE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qisom/bratteli.hpp"
#include "qisom/fock.hpp"
#include "qisom/gicar.hpp"
#include "qisom/ideal.hpp"
#include "qisom/random.hpp"
#include "qisom/rep.hpp"
#include "qisom/rewrite.hpp"
#include "qisom/symmetry.hpp"

namespace qisom::acceptance {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "FAILED: " << what << "; ";
    passed = passed && ok;
  }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool in_time = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace detail

inline void confluence(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  int words = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int draw = 0; draw < 5; ++draw) {
      const QMatrix q = random_qmatrix(n, 0.9, rng);
      for (int w = 0; w < 70; ++w, ++words) {
        const Word word = random_word(n, 8, rng);
        const auto l = normal_form(word, q, Strategy::Leftmost);
        const auto r = normal_form(word, q, Strategy::Rightmost);
        o.require(l.mu == r.mu && l.sigma == r.sigma, "same normal monomial for " + to_string(word));
        worst = std::max(worst, std::abs(l.coefficient - r.coefficient));
      }
    }
  o.require(words >= 1000, "at least 1000 words");
  o.require(worst <= 1e-12, "coefficients agree within 1e-12");
  o.detail << words << " words, 15 q draws, worst coefficient gap " << detail::fmt(worst);
}

inline void pairing_bridge(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t pairs = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int draw = 0; draw < 5; ++draw) {
      const QMatrix q = random_qmatrix(n, 0.9, rng);
      for (const auto& v : occ_up_to_total(n, 4)) {
        const auto words = words_with_occ(v);
        for (const auto& mu : words)
          for (const auto& sigma : words) {
            const auto [rw, fk] = pairing_check(mu, sigma, q);
            worst = std::max(worst, std::abs(rw - fk));
            ++pairs;
          }
      }
    }
  o.require(worst <= 1e-9, "rewriting scalar equals Fock recursion within 1e-9");
  o.detail << pairs << " pairs, worst gap " << detail::fmt(worst);
}

inline void gram_positivity(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  int blocks = 0;
  double min_pivot = 1.0;
  for (int draw = 0; draw < 5; ++draw) {
    for (std::size_t n = 2; n <= 3; ++n) {
      const QMatrix q = random_qmatrix(n, 0.95, rng);
      const FockInnerProduct inner(q);
      for (const auto& v : occ_up_to_total(n, n == 2 ? 5 : 4)) {
        const GramBlock g = assemble_gram_block(v, inner);
        o.require(g.positive(), "block " + v.to_string() + " certified positive");
        min_pivot = std::min(min_pivot, g.min_pivot);
        ++blocks;
      }
    }
    const QMatrix q2 = random_qmatrix(2, 0.95, rng);
    const GramBlock g = gram_block(OccVector{1, 1}, q2);
    o.require(std::abs(g.determinant() - (1.0 - std::norm(q2(1, 2)))) <= 1e-12, "det of (1,1) block is 1 - |q_12|^2");
  }
  o.detail << blocks << " blocks at max|q| = 0.95, smallest pivot " << detail::fmt(min_pivot);
}

inline void relations(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  int spaces = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int draw = 0; draw < 3; ++draw) {
      const QMatrix q = draw == 0 ? QMatrix::zero(n) : random_qmatrix(n, 0.9, rng);
      const auto rep = verify_relations(TruncatedFock(q, 4), 1e-9, false);
      worst = std::max(worst, rep.worst);
      ++spaces;
    }
  o.require(worst <= 1e-9, "relation residuals below 1e-9 on levels <= L-1");
  o.detail << spaces << " truncated spaces at L = 4, worst residual " << detail::fmt(worst);
}

inline void faithfulness(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  struct Case {
    std::size_t n;
    int k;
    std::uint64_t expected;
  };
  for (const Case c : {Case{2, 1, 7}, Case{2, 2, 63}, Case{3, 1, 52}}) {
    const GicarModel model(fock_for_level(random_qmatrix(c.n, 0.9, rng), c.k), c.k);
    const auto formula = model.span().expected_dimension();
    const auto rank = static_cast<std::uint64_t>(model.represented_rank());
    o.require(formula == c.expected, "formula value for n = " + std::to_string(c.n) + ", k = " + std::to_string(c.k));
    o.require(rank == c.expected, "represented rank for n = " + std::to_string(c.n) + ", k = " + std::to_string(c.k));
    o.detail << "n=" << c.n << " k=" << c.k << ": rank " << rank << " formula " << formula << "; ";
  }
}

inline void units(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  struct Case {
    std::size_t n;
    int k;
  };
  for (const Case c : {Case{2, 1}, Case{2, 2}, Case{3, 1}}) {
    const auto rep = decompose(c.k, fock_for_level(random_qmatrix(c.n, 0.9, rng), c.k), Tolerances{}, false);
    const std::string tag = "n = " + std::to_string(c.n) + ", k = " + std::to_string(c.k);
    o.require(rep.passed(), "decomposition checks at " + tag + (rep.passed() ? "" : " (" + rep.first_failure() + ")"));
    for (const auto& b : rep.blocks)
      o.require(static_cast<std::uint64_t>(b.algebra_dim) == b.dim * b.dim, "block dimension at " + tag);
    o.detail << "n=" << c.n << " k=" << c.k << ": " << rep.blocks.size() << " blocks, sum " << rep.total_dim << "; ";
  }
}

inline void bratteli(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  struct Case {
    std::size_t n;
    int k_max;
  };
  for (const Case c : {Case{2, 2}, Case{3, 1}}) {
    const auto closed = bratteli_closed(c.n, c.k_max);
    for (int draw = 0; draw < 5; ++draw) {
      const auto numeric = bratteli_numeric(random_qmatrix(c.n, 0.9, rng), c.k_max);
      o.require(numeric.same_edges(closed), "numeric edges equal closed form at n = " + std::to_string(c.n));
    }
    o.detail << "n=" << c.n << " k<=" << c.k_max << ": " << closed.edges.size() << " edges x 5 q draws; ";
  }
}

inline void torus(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    const Expression x = random_expression(n, 3, 5, rng);
    const Expression e = conditional_expectation(x);
    bool fixed = true;
    for (int r = 0; r < 20; ++r) fixed = fixed && torus_act(random_torus(n, rng), e).approx_equal(e, 1e-12);
    o.require(fixed, "E(x) fixed by the torus");
    const Expression b = random_balanced_expression(n, 3, 5, rng);
    bool invariant = true;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Complex> w(n, 1.0);
      w[i] = random_phase(rng);
      invariant = invariant && torus_act(TorusElement(w), b).approx_equal(b, 1e-12);
    }
    o.require(invariant && conditional_expectation(b).approx_equal(b, 0.0), "balanced elements are the fixed points");
    bool x_invariant = true;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Complex> w(n, 1.0);
      w[i] = random_phase(rng);
      x_invariant = x_invariant && torus_act(TorusElement(w), x).approx_equal(x, 1e-12);
    }
    o.require(x_invariant == x.all_balanced(), "circle invariance detects balance");
  }
  o.require(conditional_expectation(Expression::unit()).approx_equal(Expression::unit(), 0.0), "E unital");
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    const QMatrix q = random_qmatrix(n, 0.9, rng);
    const Expression x = random_expression(n, 2, 4, rng);
    const Expression a = random_balanced_expression(n, 2, 3, rng);
    const Expression b = random_balanced_expression(n, 2, 3, rng);
    const Expression e = conditional_expectation(x);
    o.require(conditional_expectation(e).approx_equal(e, 0.0), "E idempotent");
    const Expression lhs = conditional_expectation(multiply(multiply(a, x, q), b, q));
    const Expression rhs = multiply(multiply(a, e, q), b, q);
    o.require(lhs.approx_equal(rhs, 1e-10), "E(a x b) = a E(x) b");
  }
  o.detail << "200 expressions, 100 bimodule triples";
}

inline void symmetry(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  int diag = 0, nondiag = 0;
  for (int draw = 0; draw < 5; ++draw) {
    const std::size_t n = 2 + static_cast<std::size_t>(draw % 2);
    const QMatrix q = random_qmatrix(n, 0.9, rng);
    const auto dn = static_cast<Eigen::Index>(n);
    o.require(membership_test(UnitaryCandidate(CMatrix::Identity(dn, dn)), q).passed, "identity passes");
    std::vector<UnitaryCandidate> members;
    for (int t = 0; t < 50; ++t, ++diag) {
      members.emplace_back(random_diagonal_unitary(n, rng));
      o.require(membership_test(members.back(), q).passed, "diagonal unitary passes");
    }
    for (std::size_t t = 0; t + 1 < members.size(); ++t) {
      o.require(membership_test(members[t] * members[t + 1], q).passed, "product of members passes");
      o.require(membership_test(members[t].inverse(), q).passed, "inverse of member passes");
    }
    const QMatrix g = random_general_qmatrix(n, 0.9, rng);
    for (int t = 0; t < 50; ++t, ++nondiag) {
      const UnitaryCandidate u(random_unitary(n, rng));
      o.require(!qisom::detail::is_diagonal(u.matrix()) && !membership_test(u, g).passed, "non-diagonal unitary fails for distinct q_ii");
    }
    const auto rep = group_axiom_sample(g, 20, rng);
    o.require(rep.ok(), "sampled closure and inverses");
  }
  CMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  const UnitaryCandidate swap(s);
  o.require(membership_test(swap, QMatrix(2, {0.0, 0.5, 0.5, 0.0})).passed, "swap passes for real q_12");
  const auto im = membership_test(swap, QMatrix(2, {0.0, Complex(0, 0.5), Complex(0, -0.5), 0.0}));
  o.require(!im.passed && im.witness.has_value(), "swap fails with witness for imaginary q_12");
  o.detail << diag << " diagonal members, " << nondiag << " non-diagonal rejections";
}

inline void compact_ideal(Outcome& o, std::uint64_t seed) {
  Rng rng(seed);
  const auto r = verify_ideal(TruncatedFock(random_qmatrix(2, 0.9, rng), 4), 2);
  o.require(r.nontrivial(), "p nontrivial");
  o.require(r.p_projection <= 1e-9, "p self-adjoint idempotent");
  o.require(r.p_kills_creation <= 1e-9, "p A_i = 0");
  o.require(r.product <= 1e-8 && r.adjoint <= 1e-8, "matrix-unit relations within 1e-8");
  o.require(r.independent(), "matrix units linearly independent");
  o.require(r.passed(), "all ideal checks");
  const auto z = verify_ideal(TruncatedFock(QMatrix::zero(2), 4), 2);
  const double zero_worst = std::max({z.product, z.adjoint, z.p_kills_creation, z.p_projection, z.orthogonality_same_occ,
                                      z.orthogonality_diff_occ});
  o.require(zero_worst < 1e-12 && z.passed(), "q = 0 residuals below 1e-12");
  o.detail << "rank p = " << r.rank_p << ", " << r.units << " units, worst product " << detail::fmt(r.product)
           << ", q=0 worst " << detail::fmt(zero_worst);
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  void (*run)(Outcome&, std::uint64_t);
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "confluence", 5.0, confluence},
      {2, "pairing bridge", 10.0, pairing_bridge},
      {3, "gram positivity", 5.0, gram_positivity},
      {4, "truncated relations", 10.0, relations},
      {5, "faithfulness ranks", 30.0, faithfulness},
      {6, "central units", 30.0, units},
      {7, "bratteli agreement", 60.0, bratteli},
      {8, "torus fixed points", 5.0, torus},
      {9, "symmetry membership", 5.0, symmetry},
      {10, "compact ideal", 30.0, compact_ideal},
  };
  return all;
}

inline CriterionResult run(const Criterion& c, std::uint64_t seed) {
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  r.limit = c.limit;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o, seed + static_cast<std::uint64_t>(c.id));
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.in_time = r.seconds <= c.limit;
  r.passed = o.passed && r.in_time;
  r.detail = o.detail.str();
  return r;
}

inline std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) out.push_back(run(c, seed));
  return out;
}

inline std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  (" << detail::fmt(r.seconds) << " s / "
     << r.limit << " s" << (r.in_time ? "" : ", over time limit") << ")  " << r.detail;
  return os.str();
}

}  // namespace qisom::acceptance

#endif  // QISOM_ACCEPTANCE_HPP
