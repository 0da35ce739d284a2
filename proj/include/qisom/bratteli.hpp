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

// Bratteli diagram of W_1 ⊆ W_2 ⊆ ..., by closed form and by the rank of
// the level-k units on the level-(k+1) blocks.

#ifndef QISOM_BRATTELI_HPP
#define QISOM_BRATTELI_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qisom/gicar.hpp"

namespace qisom {

namespace detail {

inline void require_edge_domain(const OccVector& v, const OccVector& u, int k) {
  if (k < 0 || v.size() != u.size()) throw Error("multiplicity needs k >= 0 and vectors of equal length");
  if (!componentwise_le(v, OccVector::constant(v.size(), k)) || !componentwise_le(u, OccVector::constant(u.size(), k + 1)))
    throw BadOrder("multiplicity needs v <= k^n and u <= (k+1)^n, got v = " + v.to_string() + ", u = " + u.to_string() +
                   ", k = " + std::to_string(k));
}

}  // namespace detail

/// Nonzero iff 0 <= u - v <= 1 and u_t > v_t only where v_t = k; then the
/// multinomial of u - v.
inline std::uint64_t multiplicity_closed(const OccVector& v, const OccVector& u, int k) {
  detail::require_edge_domain(v, u, k);
  std::vector<int> diff(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    diff[t] = u[t] - v[t];
    if (diff[t] < 0 || diff[t] > 1) return 0;
    if (diff[t] == 1 && v[t] != k) return 0;
  }
  return multinomial(OccVector(std::move(diff)));
}

/// Fock space holding every block u <= (k+1)^n.
inline TruncatedFock fock_for_embedding(const QMatrix& q, int k) {
  const OccVector top = OccVector::constant(q.n(), k + 1);
  return TruncatedFock(q, top.total(), top);
}

namespace detail {

inline std::uint64_t multiplicity_from_unit(const GradedOperator& unit, const OccVector& v, const OccVector& u, double rank_tol) {
  const CMatrix* m = unit.block(u, u);
  const Eigen::Index r = m ? numeric_rank(*m, rank_tol) : 0;
  const auto d = multinomial(v);
  if (static_cast<std::uint64_t>(r) % d != 0)
    throw NonIntegralMultiplicity("rank " + std::to_string(r) + " of 1_v^k on block " + u.to_string() +
                                  " is not a multiple of dim H_v = " + std::to_string(d) + " for v = " + v.to_string());
  return static_cast<std::uint64_t>(r) / d;
}

}  // namespace detail

/// rank of 1_v^k on H_u, evaluated on the block family (k+1)^n, divided by
/// dim H_v.
inline std::uint64_t multiplicity_numeric(const OccVector& v, const OccVector& u, int k, const TruncatedFock& t,
                                          double rank_tol = 1e-7) {
  detail::require_edge_domain(v, u, k);
  const OccVector family = OccVector::constant(t.n(), k + 1);
  const GradedOperator unit = unit_operator(v, k, t, family);
  return detail::multiplicity_from_unit(unit, v, u, rank_tol);
}

struct BratteliNode {
  int k = 0;
  OccVector v;
  std::uint64_t dim = 0;  // matrix size multinomial(v)
};

struct BratteliEdge {
  int k = 0;  // source level; target is level k + 1
  OccVector v;
  OccVector u;
  std::uint64_t m = 0;
};

/// How much of block u at level k+1 the level-k algebra fills.
struct BlockFill {
  int k = 0;  // level of u
  OccVector u;
  std::uint64_t received = 0;  // sum_v m_{v,u} dim(v)
  std::uint64_t dim = 0;
  bool unital() const { return received == dim; }
};

struct BratteliDiagram {
  std::size_t n = 0;
  int k_max = 0;
  std::vector<BratteliNode> nodes;  // level, then lexicographic v
  std::vector<BratteliEdge> edges;  // nonzero multiplicities only
  std::vector<BlockFill> fills;

  bool same_edges(const BratteliDiagram& o) const {
    if (edges.size() != o.edges.size()) return false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& a = edges[i];
      const auto& b = o.edges[i];
      if (a.k != b.k || !(a.v == b.v) || !(a.u == b.u) || a.m != b.m) return false;
    }
    return true;
  }
};

namespace detail {

// Levels 1..k_max+1 with edges from every level k <= k_max; mult(k, v, u)
// supplies the multiplicities.
template <class Mult>
BratteliDiagram assemble_diagram(std::size_t n, int k_max, Mult&& mult) {
  if (k_max < 1) throw Error("k_max must be at least 1");
  BratteliDiagram d;
  d.n = n;
  d.k_max = k_max;
  for (int k = 1; k <= k_max + 1; ++k)
    for (const auto& v : occ_box(OccVector::constant(n, k))) d.nodes.push_back({k, v, multinomial(v)});
  for (int k = 1; k <= k_max; ++k) {
    const auto lower = occ_box(OccVector::constant(n, k));
    const auto upper = occ_box(OccVector::constant(n, k + 1));
    std::map<OccVector, std::uint64_t> received;
    for (const auto& v : lower)
      for (const auto& u : upper) {
        const std::uint64_t m = mult(k, v, u);
        if (m == 0) continue;
        d.edges.push_back({k, v, u, m});
        received[u] += m * multinomial(v);
      }
    for (const auto& u : upper) d.fills.push_back({k + 1, u, received[u], multinomial(u)});
  }
  return d;
}

}  // namespace detail

inline BratteliDiagram bratteli_closed(std::size_t n, int k_max) {
  return detail::assemble_diagram(n, k_max, [](int k, const OccVector& v, const OccVector& u) { return multiplicity_closed(v, u, k); });
}

/// Numeric diagram for q; builds one truncated Fock space per level.
inline BratteliDiagram bratteli_numeric(const QMatrix& q, int k_max, double rank_tol = 1e-7) {
  std::map<int, TruncatedFock> spaces;
  std::map<std::pair<int, OccVector>, GradedOperator> units;
  return detail::assemble_diagram(q.n(), k_max, [&](int k, const OccVector& v, const OccVector& u) {
    auto it = spaces.find(k);
    if (it == spaces.end()) it = spaces.emplace(k, fock_for_embedding(q, k)).first;
    auto key = std::make_pair(k, v);
    auto ut = units.find(key);
    if (ut == units.end())
      ut = units.emplace(key, unit_operator(v, k, it->second, OccVector::constant(q.n(), k + 1))).first;
    return detail::multiplicity_from_unit(ut->second, v, u, rank_tol);
  });
}

inline std::string node_id(int k, const OccVector& v) {
  std::string s = "k" + std::to_string(k) + "_v";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "_" : "") + std::to_string(v[i]);
  return s;
}

inline std::string to_dot(const BratteliDiagram& d) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n";
  int level = 0;
  for (const auto& node : d.nodes) {
    if (node.k != level) {
      if (level != 0) os << "  }\n";
      level = node.k;
      os << "  subgraph level_" << level << " {\n    rank=same;\n";
    }
    os << "    " << node_id(node.k, node.v) << " [label=\"k=" << node.k << " " << node.v.to_string() << "\\nM_" << node.dim
       << "\"];\n";
  }
  if (level != 0) os << "  }\n";
  for (const auto& e : d.edges)
    os << "  " << node_id(e.k, e.v) << " -> " << node_id(e.k + 1, e.u) << " [label=\"" << e.m << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qisom

#endif  // QISOM_BRATTELI_HPP
