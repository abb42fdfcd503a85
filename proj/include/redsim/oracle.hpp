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

// Seeded Monte Carlo simulation of the whole pipeline (erasure sampling, then
// round-by-round outcome-class sampling), used to validate the deterministic
// lower bound statistically.
//
// Random numbers come from a counter-based SplitMix64 construction:
//   mix64(z):  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//              z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
//   draw k of stream `key`:  mix64(key + k * 0x9E3779B97F4A7C15),  k = 1, 2, ...
//   substream s of `key`:    key' = mix64(key ^ mix64(s + 0x632BE59BD9B4E019))
//   uniform double:          (draw >> 11) * 2^-53
// Sample number s of a run with seed S uses substream s of key S, so results
// do not depend on how samples are distributed over threads.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "redsim/analysis.hpp"
#include "redsim/config.hpp"
#include "redsim/locc.hpp"
#include "redsim/lossy.hpp"
#include "redsim/parallel.hpp"

namespace redsim {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

  constexpr std::uint64_t next() { return mix64(key_ + (++counter_) * kGamma); }
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr CounterRng split(std::uint64_t stream) const {
    return CounterRng(mix64(key_ ^ mix64(stream + 0x632BE59BD9B4E019ULL)));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct McConfig {
  int n = 3;
  int rounds = 1;
  std::optional<double> kappa;  // unset: use the deterministic optimum per lost count
  double eps = 0.0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 42;
};

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
  bool degenerate = false;  // a single sample: no spread estimate
};

namespace detail {

inline void validate(const McConfig& cfg) {
  require(cfg.n >= 3 && cfg.n <= kMaxQubits, "Monte Carlo needs 3 <= N <= 12");
  require(cfg.rounds >= 1, "at least one round is required");
  require_probability(cfg.eps, "loss probability");
  if (cfg.kappa) require_probability(*cfg.kappa, "kappa");
  require(cfg.samples >= 1, "sample count must be at least 1");
}

// Per-m class weights for one kappa: W component (with the single-excitation
// class folded into the separable column) and vacuum component.
struct ClassTable {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> vac;

  ClassTable(int max_m, double kappa) : w(max_m + 1), vac(max_m + 1) {
    for (int m = 1; m <= max_m; ++m) {
      w[m].assign(m + 1, 0.0);
      vac[m].assign(m + 1, 0.0);
      for (int j = 0; j <= m; ++j) {
        if (j >= 1) w[m][j] = w_class_weight(m, j, kappa);
        vac[m][j] = vac_class_weight(m, j, kappa);
      }
    }
  }
};

struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const auto total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) /
                     static_cast<double>(total);
    count = total;
  }
};

inline constexpr std::int64_t kMcChunk = 4096;

}  // namespace detail

// Kappa used for each lost count i = 0..N-2.
inline std::vector<double> mc_kappas(const McConfig& cfg) {
  detail::validate(cfg);
  if (cfg.kappa) return std::vector<double>(cfg.n - 1, *cfg.kappa);
  std::vector<double> out;
  const WLowerBound bound(cfg.n, cfg.rounds);
  for (const auto& o : bound.optima()) out.push_back(o.kappa_star);
  return out;
}

// The quantity the Monte Carlo run estimates, computed by the deterministic
// branch engine with the same kappas.
inline double mc_deterministic_value(const McConfig& cfg) {
  const auto kappas = mc_kappas(cfg);
  double sum = 0.0;
  for (int i = 0; i <= cfg.n - 2; ++i)
    sum += loss_weight(cfg.n, i, cfg.eps) * avg_entanglement(lossy_w_branch(cfg.n, i), kappas[i], cfg.rounds);
  return sum;
}

// One simulated protocol run; returns the final best-pair concurrence.
inline double mc_sample(const McConfig& cfg, const std::vector<detail::ClassTable>& tables, CounterRng rng) {
  int lost = 0;
  for (int k = 0; k < cfg.n - 2; ++k) lost += rng.uniform() < cfg.eps ? 1 : 0;
  const auto& table = tables[lost];
  BranchState b = lossy_w_branch(cfg.n, lost);
  for (int r = 0; r < cfg.rounds && b.m > 2; ++r) {
    const int m = b.m;
    const double u = rng.uniform() * b.total();
    double acc = 0.0;
    BranchState next{0, 0.0, b.total()};  // fallback if round-off leaves u uncovered
    for (int j = m; j >= 0; --j) {
      const double w = b.w_w * table.w[m][j];
      const double v = b.w_0 * table.vac[m][j];
      const double p = w + v;
      if (p <= 0.0) continue;
      acc += p;
      next = j >= 2 ? BranchState{j, w / p, v / p} : BranchState{j, 0.0, 1.0};
      if (u < acc) break;
    }
    b = next;
  }
  return branch_concurrence(b);
}

inline McEstimate mc_estimate(const McConfig& cfg, unsigned threads = 1) {
  const auto kappas = mc_kappas(cfg);
  std::vector<detail::ClassTable> tables;
  for (double k : kappas) tables.emplace_back(cfg.n, k);
  const CounterRng root(cfg.seed);
  const auto chunks = static_cast<std::size_t>((cfg.samples + detail::kMcChunk - 1) / detail::kMcChunk);
  std::vector<detail::Moments> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * detail::kMcChunk;
    const std::int64_t end = std::min(cfg.samples, begin + detail::kMcChunk);
    for (std::int64_t s = begin; s < end; ++s)
      partial[c].add(mc_sample(cfg, tables, root.split(static_cast<std::uint64_t>(s))));
  });
  detail::Moments total;
  for (const auto& p : partial) total.merge(p);
  McEstimate est;
  est.mean = total.mean;
  est.samples = total.count;
  est.degenerate = total.count < 2;
  if (!est.degenerate) {
    const double variance = total.m2 / static_cast<double>(total.count - 1);
    est.standard_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  return est;
}

// |estimate - expected| within `sigmas` standard errors (plus round-off slack
// for zero-variance runs).
inline bool mc_agrees(const McEstimate& est, double expected, double sigmas = 3.0) {
  return std::abs(est.mean - expected) <= sigmas * est.standard_error + 1e-12;
}

struct ClassHistogram {
  std::vector<std::int64_t> counts;  // index = number of zero outcomes
  std::vector<double> frequencies;
  std::vector<double> expected;      // w_class_weight, 0 for class 0
  double chi_square = 0.0;           // over classes with nonzero expectation
  int degrees_of_freedom = 0;
};

// Single-round outcome classes sampled from a pure W_m branch.
inline ClassHistogram mc_class_histogram(int m, double kappa, std::int64_t samples, std::uint64_t seed) {
  detail::require(m >= 1 && m <= 64, "live qubit count out of range");
  detail::require_probability(kappa, "kappa");
  detail::require(samples >= 1, "sample count must be at least 1");
  ClassHistogram h;
  h.counts.assign(m + 1, 0);
  h.expected.assign(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) h.expected[j] = w_class_weight(m, j, kappa);
  const CounterRng root(seed);
  for (std::int64_t s = 0; s < samples; ++s) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(s));
    const double u = rng.uniform();
    double acc = 0.0;
    int pick = 0;
    for (int j = m; j >= 1; --j) {
      if (h.expected[j] <= 0.0) continue;
      acc += h.expected[j];
      pick = j;
      if (u < acc) break;
    }
    ++h.counts[pick];
  }
  int used = 0;
  for (int j = 0; j <= m; ++j) {
    h.frequencies.push_back(static_cast<double>(h.counts[j]) / static_cast<double>(samples));
    if (h.expected[j] <= 0.0) continue;
    const double e = h.expected[j] * static_cast<double>(samples);
    h.chi_square += (h.counts[j] - e) * (h.counts[j] - e) / e;
    ++used;
  }
  h.degrees_of_freedom = std::max(0, used - 1);
  return h;
}

}  // namespace redsim
