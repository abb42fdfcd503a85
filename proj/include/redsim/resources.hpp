// Copyright 2026 The redsim Authors
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

#pragma once

// Resource states: W, GHZ, graph states and the two-centered GHZ graph, plus
// the closed-form reduced W state left after helper particles are lost.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redsim/config.hpp"
#include "redsim/qcore.hpp"

namespace redsim {

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

// Simple undirected graph on vertices [0, vertex_count).
class Graph {
 public:
  using Edge = std::pair<int, int>;  // stored with first < second

  explicit Graph(int vertex_count) : vertex_count_(vertex_count) {
    detail::require(vertex_count >= 1, "graph needs at least one vertex");
  }

  Graph(int vertex_count, std::initializer_list<Edge> edges) : Graph(vertex_count) {
    for (auto [a, b] : edges) add_edge(a, b);
  }

  void add_edge(int a, int b) {
    detail::require(a >= 0 && a < vertex_count_ && b >= 0 && b < vertex_count_,
                    "edge endpoint out of range");
    detail::require(a != b, "self-loops are not allowed");
    const bool inserted = edges_.insert(std::minmax(a, b)).second;
    detail::require(inserted, "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  }

  bool has_edge(int a, int b) const { return edges_.count(std::minmax(a, b)) > 0; }
  int vertex_count() const { return vertex_count_; }
  const std::set<Edge>& edges() const { return edges_; }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges_) {
      if (a == v) out.push_back(b);
      if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool connected() const {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = vertex_count_;
    for (auto [a, b] : edges_) {
      const int ra = find(a), rb = find(b);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    return components == 1;
  }

  static Graph star(int n, int center = 0) {
    Graph g(n);
    detail::require(center >= 0 && center < n, "star center out of range");
    for (int v = 0; v < n; ++v)
      if (v != center) g.add_edge(center, v);
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int vertex_count_;
  std::set<Edge> edges_;
};

// Edge-list text: an optional "# vertices N" line, then one "a b" pair per line.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# vertices " << g.vertex_count() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
  return out.str();
}

// Blank lines and other '#' comments are ignored. Without a vertices line the
// vertex count is one more than the largest endpoint.
inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int declared = -1;
  std::vector<Graph::Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first.front() == '#') {
      std::string key;
      int count = 0;
      if (fields >> key >> count && key == "vertices") declared = count;
      continue;
    }
    int a = 0, b = 0;
    std::istringstream pair(line);
    std::string rest;
    detail::require(static_cast<bool>(pair >> a >> b) && !(pair >> rest),
                    "malformed edge on line " + std::to_string(line_no) + ": '" + line + "'");
    edges.emplace_back(a, b);
  }
  int n = declared;
  if (n < 0) {
    n = 0;
    for (auto [a, b] : edges) n = std::max({n, a + 1, b + 1});
  }
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

// ---------------------------------------------------------------------------
// Resource states
// ---------------------------------------------------------------------------

namespace detail {

inline void require_resource_size(int n) {
  require(n >= 2 && n <= kMaxQubits,
          "resource size must lie in [2, " + std::to_string(kMaxQubits) + "], got " +
              std::to_string(n));
}

// Amplitudes of W_n: 1/sqrt(n) on every weight-one basis state.
inline CVector w_amplitudes(int n) {
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  for (int q = 0; q < n; ++q) v(static_cast<Eigen::Index>(qubit_mask(n, q))) = 1.0;
  return v / std::sqrt(static_cast<double>(n));
}

}  // namespace detail

inline Ket w_state(int n) {
  detail::require_resource_size(n);
  return Ket(detail::w_amplitudes(n));
}

inline Ket ghz_state(int n) {
  detail::require_resource_size(n);
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return Ket(std::move(v));
}

inline Ket plus_state(int n) {
  detail::require_qubit_count(n);
  const auto dim = Eigen::Index{1} << n;
  return Ket(CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

// Controlled-Z between qubits a and b.
inline Ket apply_cz(const Ket& psi, int a, int b) {
  const int n = psi.qubits();
  detail::require(a >= 0 && a < n && b >= 0 && b < n && a != b, "invalid CZ qubits");
  const auto mask = detail::qubit_mask(n, a) | detail::qubit_mask(n, b);
  CVector out = psi.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if ((static_cast<std::uint64_t>(i) & mask) == mask) out(i) = -out(i);
  return Ket(std::move(out));
}

// Product of CZ over all edges applied to |+>^N.
inline Ket graph_state(const Graph& g) {
  detail::require(g.vertex_count() <= kMaxQubits, "graph has too many vertices");
  Ket psi = plus_state(g.vertex_count());
  for (auto [a, b] : g.edges()) psi = apply_cz(psi, a, b);
  return psi;
}

// Two adjacent roots (0 and 1) with each leaf attached to exactly one root.
struct TwoCenteredLayout {
  int root_a = 0;
  int root_b = 1;
  std::vector<int> leaves_a;
  std::vector<int> leaves_b;

  int vertex_count() const { return 2 + static_cast<int>(leaves_a.size() + leaves_b.size()); }
};

struct TwoCenteredGraph {
  Graph graph;
  TwoCenteredLayout layout;
};

// Leaves 2..n-1 are split as evenly as possible; root 0 takes the first
// ceil((n-2)/2) of them.
inline TwoCenteredGraph two_centered_graph(int n) {
  detail::require(n >= 4 && n <= kMaxQubits,
                  "two-centered graph needs 4 to " + std::to_string(kMaxQubits) +
                      " vertices, got " + std::to_string(n));
  TwoCenteredGraph out{Graph(n), {}};
  out.graph.add_edge(0, 1);
  const int on_a = (n - 1) / 2;  // ceil((n - 2) / 2)
  for (int leaf = 2; leaf < n; ++leaf) {
    const bool to_a = leaf < 2 + on_a;
    out.graph.add_edge(to_a ? 0 : 1, leaf);
    (to_a ? out.layout.leaves_a : out.layout.leaves_b).push_back(leaf);
  }
  return out;
}

// State left when the first i of N W-state particles are lost:
// (i/N)|0..0><0..0| + ((N-i)/N)|W_{N-i}><W_{N-i}| on the N-i survivors.
inline DensityOperator w_sigma(int n, int lost) {
  detail::require(n >= 2 && n <= kMaxQubits, "network size out of range");
  detail::require(lost >= 0 && lost <= n - 2,
                  "lost count must lie in [0, N-2], got " + std::to_string(lost));
  const int m = n - lost;
  const CVector w = detail::w_amplitudes(m);
  CMatrix rho = (static_cast<double>(m) / n) * (w * w.adjoint());
  rho(0, 0) += static_cast<double>(lost) / n;
  return DensityOperator(std::move(rho));
}

}  // namespace redsim
