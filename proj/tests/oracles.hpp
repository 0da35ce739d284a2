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

// Test-only reference computations that share no code path with the library
// routines they check.

#ifndef QISOM_TESTS_ORACLES_HPP
#define QISOM_TESTS_ORACLES_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qisom/qmatrix.hpp"

namespace qisom::oracle {

/// Number of words of length |v| over 1..n whose letter counts equal v,
/// by scanning all n^|v| words.
inline std::uint64_t count_words_with_counts(const std::vector<int>& v) {
  const int n = static_cast<int>(v.size());
  int m = 0;
  for (int x : v) m += x;
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(n);
  std::uint64_t hits = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    std::uint64_t c = code;
    for (int i = 0; i < m; ++i) {
      ++counts[c % static_cast<std::uint64_t>(n)];
      c /= static_cast<std::uint64_t>(n);
    }
    if (counts == v) ++hits;
  }
  return hits;
}

/// Closed permutation-sum form of the deformed Fock inner product:
/// sum over matchings p (sigma position m -> mu position p[m]) with
/// mu[p[m]] = sigma[m] of prod_{s < t, rank(s) > rank(t)} q(mu_t, mu_s).
inline std::complex<double> permutation_inner(const std::vector<int>& mu, const std::vector<int>& sigma, const QMatrix& q) {
  if (mu.size() != sigma.size()) return {};
  const std::size_t m = mu.size();
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::complex<double> sum{};
  do {
    bool match = true;
    for (std::size_t k = 0; k < m && match; ++k) match = mu[p[k]] == sigma[k];
    if (!match) continue;
    std::vector<std::size_t> rank(m);
    for (std::size_t k = 0; k < m; ++k) rank[p[k]] = k;
    std::complex<double> w{1.0, 0.0};
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = s + 1; t < m; ++t)
        if (rank[s] > rank[t]) w *= q(mu[t], mu[s]);
    sum += w;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

}  // namespace qisom::oracle

#endif  // QISOM_TESTS_ORACLES_HPP
