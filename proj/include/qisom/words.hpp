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

// Combinatorial substrate: multi-indices, occupation vectors, free words in
// the generators a_i / a_i*, normal monomials a_mu a_sigma* and finite linear
// combinations of them. Generator indices are 1-based throughout.

#ifndef QISOM_WORDS_HPP
#define QISOM_WORDS_HPP

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qisom/error.hpp"

namespace qisom {

using Complex = std::complex<double>;

/// A sequence of generator indices (mu = (mu_1, ..., mu_m)), each in 1..n.
using MultiIndex = std::vector<int>;

/// Occupation vector in Z_+^n. Ordering via operator< is lexicographic and
/// exists for container keys; the partial order is componentwise_le().
class OccVector {
 public:
  OccVector() = default;
  explicit OccVector(std::size_t n) : entries_(n, 0) {}
  OccVector(std::initializer_list<int> entries) : entries_(entries) { check_non_negative(); }
  explicit OccVector(std::vector<int> entries) : entries_(std::move(entries)) { check_non_negative(); }

  /// The n-tuple (k, ..., k).
  static OccVector constant(std::size_t n, int k) { return OccVector(std::vector<int>(n, k)); }

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  /// l(v) = v_1 + ... + v_n.
  int total() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  friend bool operator==(const OccVector&, const OccVector&) = default;
  friend bool operator<(const OccVector& a, const OccVector& b) { return a.entries_ < b.entries_; }

  friend OccVector operator+(const OccVector& a, const OccVector& b) {
    require_same_size(a, b);
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return OccVector(std::move(out));
  }

  /// Componentwise difference; throws when a component would go negative.
  friend OccVector operator-(const OccVector& a, const OccVector& b) {
    require_same_size(a, b);
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = a[i] - b[i];
      if (out[i] < 0) throw Error("occupation vector subtraction leaves the non-negative orthant");
    }
    return OccVector(std::move(out));
  }

  friend OccVector max(const OccVector& a, const OccVector& b) {
    require_same_size(a, b);
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return OccVector(std::move(out));
  }

  /// v <= u componentwise.
  friend bool componentwise_le(const OccVector& v, const OccVector& u) {
    require_same_size(v, u);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] > u[i]) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

 private:
  void check_non_negative() const {
    for (int e : entries_)
      if (e < 0) throw Error("occupation vector entries must be non-negative");
  }
  static void require_same_size(const OccVector& a, const OccVector& b) {
    if (a.size() != b.size()) throw Error("occupation vectors of different lengths");
  }

  std::vector<int> entries_;
};

/// occ(mu): entry i counts the occurrences of generator i+1 in mu.
inline OccVector occ(const MultiIndex& mu, std::size_t n) {
  std::vector<int> counts(n, 0);
  for (int g : mu) {
    if (g < 1 || static_cast<std::size_t>(g) > n)
      throw Error("generator index " + std::to_string(g) + " outside 1.." + std::to_string(n));
    ++counts[g - 1];
  }
  return OccVector(std::move(counts));
}

/// Indicator vector delta_S of S, a subset of {1..n}.
inline OccVector delta_S(const std::vector<int>& subset, std::size_t n) {
  std::vector<int> out(n, 0);
  for (int i : subset) {
    if (i < 1 || static_cast<std::size_t>(i) > n) throw Error("subset element outside 1..n");
    out[i - 1] = 1;
  }
  return OccVector(std::move(out));
}

/// delta_S for S encoded as a bitmask over {1..n} (bit i-1 set iff i in S).
inline OccVector delta_mask(unsigned mask, std::size_t n) {
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i] = (mask >> i) & 1u;
  return OccVector(std::move(out));
}

inline std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// (v_1 + ... + v_n)! / (v_1! ... v_n!), computed as a product of binomials.
inline std::uint64_t multinomial(const OccVector& v) {
  std::uint64_t result = 1;
  int acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int j = 1; j <= v[i]; ++j) {
      ++acc;
      result = result * static_cast<std::uint64_t>(acc) / static_cast<std::uint64_t>(j);
    }
  }
  return result;
}

/// All multi-indices with occupation v, in lexicographic order.
inline std::vector<MultiIndex> words_with_occ(const OccVector& v) {
  std::vector<MultiIndex> out;
  std::vector<int> remaining = v.entries();
  MultiIndex current;
  current.reserve(static_cast<std::size_t>(v.total()));
  const auto recurse = [&](auto&& self) -> void {
    if (current.size() == static_cast<std::size_t>(v.total())) {
      out.push_back(current);
      return;
    }
    for (std::size_t g = 0; g < remaining.size(); ++g) {
      if (remaining[g] == 0) continue;
      --remaining[g];
      current.push_back(static_cast<int>(g) + 1);
      self(self);
      current.pop_back();
      ++remaining[g];
    }
  };
  recurse(recurse);
  return out;
}

/// All v with 0 <= v <= bound, in lexicographic order.
inline std::vector<OccVector> occ_box(const OccVector& bound) {
  std::vector<OccVector> out;
  std::vector<int> cur(bound.size(), 0);
  if (bound.size() == 0) return out;
  while (true) {
    out.emplace_back(cur);
    std::size_t i = bound.size();
    while (i > 0) {
      --i;
      if (cur[i] < bound[i]) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
  }
}

/// All v in Z_+^n with l(v) <= max_total, in lexicographic order.
inline std::vector<OccVector> occ_up_to_total(std::size_t n, int max_total) {
  std::vector<OccVector> out;
  for (const auto& v : occ_box(OccVector::constant(n, max_total)))
    if (v.total() <= max_total) out.push_back(v);
  return out;
}

/// All multi-indices over 1..n of length exactly m, lexicographic.
inline std::vector<MultiIndex> all_words_of_length(std::size_t n, int m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(m), 1);
  if (n == 0) return out;
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == static_cast<int>(n)) {
      cur[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return out;
    ++cur[static_cast<std::size_t>(i)];
  }
}

struct Letter {
  int gen = 1;
  bool starred = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A free word in a_i, a_i*. The empty word is the unit.
using Word = std::vector<Letter>;

/// Parses `a1 a2* a1`: letter := 'a' INT '*'? separated by whitespace.
inline Word parse_word(std::string_view text, std::size_t n) {
  Word w;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != 'a') throw ParseError("expected 'a' at offset " + std::to_string(i) + " in word \"" + std::string(text) + "\"");
    ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("expected generator index after 'a' at offset " + std::to_string(start));
    const int gen = std::stoi(std::string(text.substr(start, i - start)));
    if (gen < 1 || static_cast<std::size_t>(gen) > n)
      throw ParseError("generator a" + std::to_string(gen) + " outside 1.." + std::to_string(n));
    bool starred = false;
    if (i < text.size() && text[i] == '*') {
      starred = true;
      ++i;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError("letters must be separated by whitespace (offset " + std::to_string(i) + ")");
    w.push_back({gen, starred});
    skip_ws();
  }
  return w;
}

inline std::string to_string(const Word& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += 'a' + std::to_string(l.gen);
    if (l.starred) s += '*';
  }
  return s;
}

inline std::string to_string(const MultiIndex& mu) {
  std::string s = "(";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mu[i]);
  }
  return s + ")";
}

/// coefficient * a_mu a_sigma*. Note a_sigma* = a_{sigma_m}* ... a_{sigma_1}*.
struct NormalMonomial {
  Complex coefficient{1.0, 0.0};
  MultiIndex mu;
  MultiIndex sigma;

  /// The word a_mu a_sigma* with letters in algebra order.
  Word word() const {
    Word w;
    w.reserve(mu.size() + sigma.size());
    for (int g : mu) w.push_back({g, false});
    for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) w.push_back({*it, true});
    return w;
  }
};

inline bool occ_balanced(const MultiIndex& mu, const MultiIndex& sigma) {
  MultiIndex a = mu, b = sigma;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline bool occ_balanced(const NormalMonomial& m) { return occ_balanced(m.mu, m.sigma); }

/// Finite linear combination of normal monomials, keyed by (mu, sigma).
/// Exact zeros are never stored.
class Expression {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, Complex>;

  Expression() = default;
  explicit Expression(const NormalMonomial& m) { add(m.mu, m.sigma, m.coefficient); }

  static Expression unit(Complex c = 1.0) { return Expression(NormalMonomial{c, {}, {}}); }
  static Expression monomial(MultiIndex mu, MultiIndex sigma, Complex c = 1.0) {
    return Expression(NormalMonomial{c, std::move(mu), std::move(sigma)});
  }

  void add(const MultiIndex& mu, const MultiIndex& sigma, Complex c) {
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace(Key{mu, sigma}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{}) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Complex coefficient(const MultiIndex& mu, const MultiIndex& sigma) const {
    auto it = terms_.find(Key{mu, sigma});
    return it == terms_.end() ? Complex{} : it->second;
  }

  Expression& operator+=(const Expression& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  Expression& operator-=(const Expression& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  Expression& operator*=(Complex s) {
    if (s == Complex{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(Complex s, Expression a) { return a *= s; }

  /// Drops terms with |coefficient| <= tol.
  Expression pruned(double tol) const {
    Expression out;
    for (const auto& [k, c] : terms_)
      if (std::abs(c) > tol) out.terms_.emplace(k, c);
    return out;
  }

  /// Largest coefficient difference against another expression.
  double distance(const Expression& o) const {
    double worst = 0.0;
    for (const auto& [k, c] : terms_) worst = std::max(worst, std::abs(c - o.coefficient(k.first, k.second)));
    for (const auto& [k, c] : o.terms_)
      if (!terms_.count(k)) worst = std::max(worst, std::abs(c));
    return worst;
  }

  bool approx_equal(const Expression& o, double tol = 1e-9) const { return distance(o) <= tol; }

  bool all_balanced() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return occ_balanced(kv.first.first, kv.first.second); });
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      for (int g : k.first) os << " a" << g;
      for (auto it = k.second.rbegin(); it != k.second.rend(); ++it) os << " a" << *it << "*";
    }
    return os.str();
  }

 private:
  Terms terms_;
};

}  // namespace qisom

#endif  // QISOM_WORDS_HPP
