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

// Normal-form rewriting for words in a_i, a_i* modulo
//   a_i* a_i = 1,   a_i* a_j = q_ij a_j a_i*  (i != j).
// A redex is an adjacent (starred, unstarred) pair. Redexes never overlap, so
// the system has no critical pairs; every word reduces to c * a_mu a_sigma*.

#ifndef QISOM_REWRITE_HPP
#define QISOM_REWRITE_HPP

#include <cstddef>
#include <optional>
#include <utility>

#include "qisom/qmatrix.hpp"
#include "qisom/words.hpp"

namespace qisom {

enum class Strategy { Leftmost, Rightmost };

struct StepResult {
  Complex scalar;
  Word word;
};

struct Reduction {
  NormalMonomial monomial;
  std::size_t steps = 0;  // total rewrite steps
  std::size_t swaps = 0;  // steps that applied a_i* a_j -> q_ij a_j a_i*
};

namespace detail {

inline void require_isom(const QMatrix& q) {
  if (!q.isom_mode())
    throw InvalidQMatrix(QMatrix::kZeroDiagonal, "normal-form rewriting requires isometric mode");
}

inline bool is_redex(const Word& w, std::size_t pos) {
  return pos + 1 < w.size() && w[pos].starred && !w[pos + 1].starred;
}

inline std::optional<std::size_t> find_redex(const Word& w, Strategy s) {
  if (w.size() < 2) return std::nullopt;
  if (s == Strategy::Leftmost) {
    for (std::size_t p = 0; p + 1 < w.size(); ++p)
      if (is_redex(w, p)) return p;
  } else {
    for (std::size_t p = w.size() - 1; p-- > 0;)
      if (is_redex(w, p)) return p;
  }
  return std::nullopt;
}

}  // namespace detail

/// One application of the defining relations at the redex (pos, pos+1).
inline StepResult rewrite_step(const Word& w, std::size_t pos, const QMatrix& q) {
  detail::require_isom(q);
  if (!detail::is_redex(w, pos))
    throw NotARedex("no (starred, unstarred) pair at position " + std::to_string(pos) + " of \"" + to_string(w) + "\"");
  const Letter starred = w[pos];
  const Letter plain = w[pos + 1];
  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  if (starred.gen == plain.gen) {
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
    return {Complex{1.0, 0.0}, std::move(out)};
  }
  out.push_back(plain);
  out.push_back(starred);
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
  return {q(starred.gen, plain.gen), std::move(out)};
}

/// Reduces w to a scalar multiple of a_mu a_sigma*, recording step counts.
inline Reduction reduce(Word w, const QMatrix& q, Strategy strategy = Strategy::Leftmost) {
  detail::require_isom(q);
  Reduction r;
  Complex coeff{1.0, 0.0};
  while (auto pos = detail::find_redex(w, strategy)) {
    const bool swap = w[*pos].gen != w[*pos + 1].gen;
    auto step = rewrite_step(w, *pos, q);
    coeff *= step.scalar;
    w = std::move(step.word);
    ++r.steps;
    if (swap) ++r.swaps;
  }
  r.monomial.coefficient = coeff;
  std::size_t split = 0;
  while (split < w.size() && !w[split].starred) ++split;
  for (std::size_t i = 0; i < split; ++i) r.monomial.mu.push_back(w[i].gen);
  for (std::size_t i = w.size(); i-- > split;) r.monomial.sigma.push_back(w[i].gen);
  return r;
}

inline NormalMonomial normal_form(const Word& w, const QMatrix& q, Strategy strategy = Strategy::Leftmost) {
  return reduce(w, q, strategy).monomial;
}

/// Product of normal monomials, (mu1, sigma1) * (mu2, sigma2).
inline NormalMonomial multiply(const NormalMonomial& x, const NormalMonomial& y, const QMatrix& q) {
  Word w = x.word();
  const Word wy = y.word();
  w.insert(w.end(), wy.begin(), wy.end());
  NormalMonomial m = normal_form(w, q);
  m.coefficient *= x.coefficient * y.coefficient;
  return m;
}

/// Bilinear extension of the monomial product.
inline Expression multiply(const Expression& x, const Expression& y, const QMatrix& q) {
  Expression out;
  for (const auto& [kx, cx] : x.terms())
    for (const auto& [ky, cy] : y.terms()) {
      const auto m = multiply(NormalMonomial{cx, kx.first, kx.second}, NormalMonomial{cy, ky.first, ky.second}, q);
      out.add(m.mu, m.sigma, m.coefficient);
    }
  return out;
}

/// The involution: (c a_mu a_sigma*)* = conj(c) a_sigma a_mu*.
inline Expression star(const Expression& x) {
  Expression out;
  for (const auto& [k, c] : x.terms()) out.add(k.second, k.first, std::conj(c));
  return out;
}

}  // namespace qisom

#endif  // QISOM_REWRITE_HPP
