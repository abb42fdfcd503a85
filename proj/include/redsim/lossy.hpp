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

// The distribution phase: i.i.d. erasure on the N-2 helper links, the
// resulting ensemble of received W states, and the GHZ-like benchmarks.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "redsim/config.hpp"
#include "redsim/qcore.hpp"
#include "redsim/resources.hpp"

namespace redsim {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

namespace detail {

inline void require_probability(double p, const char* name) {
  require(p >= 0.0 && p <= 1.0, std::string(name) + " must lie in [0, 1]");
}

}  // namespace detail

// Probability that exactly `lost` of the N-2 helper particles are erased.
inline double loss_weight(int n, int lost, double eps) {
  detail::require(n >= 2, "network size must be at least 2");
  detail::require(lost >= 0 && lost <= n - 2, "lost count must lie in [0, N-2]");
  detail::require_probability(eps, "loss probability");
  return binomial(n - 2, lost) * std::pow(eps, lost) * std::pow(1.0 - eps, n - 2 - lost);
}

struct LossEntry {
  int lost = 0;
  double weight = 0.0;
  DensityOperator state;
};

struct LossEnsemble {
  std::vector<LossEntry> entries;

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.weight;
    return s;
  }
};

inline LossEnsemble w_loss_ensemble(int n, double eps) {
  detail::require(n >= 3 && n <= kMaxQubits, "W ensemble needs 3 <= N <= 12");
  LossEnsemble out;
  for (int i = 0; i <= n - 2; ++i) out.entries.push_back({i, loss_weight(n, i, eps), w_sigma(n, i)});
  return out;
}

// ---------------------------------------------------------------------------
// Benchmarks
// ---------------------------------------------------------------------------

// GHZ: one unit of concurrence when nothing is lost, nothing otherwise.
inline double ghz_benchmark(int n, double eps) {
  detail::require(n >= 3, "GHZ benchmark needs N >= 3");
  detail::require_probability(eps, "loss probability");
  return std::pow(1.0 - eps, n - 2);
}

// robust: a GHZ state survives whenever every lost leaf hangs off the same root.
// strict: any loss destroys the entanglement.
enum class BenchmarkMode { robust, strict };

inline BenchmarkMode parse_benchmark_mode(std::string_view s) {
  if (s == "robust") return BenchmarkMode::robust;
  if (s == "strict") return BenchmarkMode::strict;
  throw ArgumentError("unknown benchmark mode '" + std::string(s) + "' (robust|strict)");
}

inline const char* to_string(BenchmarkMode m) {
  return m == BenchmarkMode::robust ? "robust" : "strict";
}

inline double two_centered_benchmark(int n, double eps, BenchmarkMode mode = BenchmarkMode::robust) {
  detail::require(n >= 4, "two-centered benchmark needs N >= 4");
  detail::require_probability(eps, "loss probability");
  const double keep = 1.0 - eps;
  if (mode == BenchmarkMode::strict) return std::pow(keep, n - 2);
  const int on_a = (n - 1) / 2;
  const int on_b = (n - 2) / 2;
  // P(no leaf of b lost) + P(no leaf of a lost) - P(nothing lost)
  return std::pow(keep, on_a) + std::pow(keep, on_b) - std::pow(keep, n - 2);
}

struct LossPattern {
  std::vector<int> lost;  // lost leaf vertices, ascending
  double probability = 0.0;
  bool recoverable = false;
};

// Every subset of leaves, with its i.i.d. probability and whether the GHZ
// structure survives (all lost leaves belong to a single root).
inline std::vector<LossPattern> enumerate_loss_patterns(const TwoCenteredLayout& layout, double eps) {
  detail::require_probability(eps, "loss probability");
  detail::require(layout.vertex_count() <= kMaxQubits, "layout has too many vertices");
  std::vector<int> leaves = layout.leaves_a;
  leaves.insert(leaves.end(), layout.leaves_b.begin(), layout.leaves_b.end());
  const auto na = layout.leaves_a.size();
  const int count = static_cast<int>(leaves.size());
  std::vector<LossPattern> out;
  out.reserve(std::size_t{1} << count);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << count); ++s) {
    LossPattern p;
    bool hits_a = false, hits_b = false;
    p.probability = 1.0;
    for (int k = 0; k < count; ++k) {
      if (s & (std::uint64_t{1} << k)) {
        p.lost.push_back(leaves[k]);
        p.probability *= eps;
        (static_cast<std::size_t>(k) < na ? hits_a : hits_b) = true;
      } else {
        p.probability *= 1.0 - eps;
      }
    }
    std::sort(p.lost.begin(), p.lost.end());
    p.recoverable = !(hits_a && hits_b);
    out.push_back(std::move(p));
  }
  return out;
}

// Exact reduced state of a graph state after discarding `lost` vertices.
// Exploration aid only; the benchmark curves come from the closed forms.
inline DensityOperator graph_state_after_loss(const Graph& g, std::span<const int> lost) {
  return trace_out(DensityOperator::from_ket(graph_state(g)), lost);
}

}  // namespace redsim
