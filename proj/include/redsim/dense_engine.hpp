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

// Brute-force SP-LOCC evolution on dense density operators. Every outcome
// string is applied as an explicit tensor-product Kraus operator; nothing here
// relies on the W/vacuum structure used by BranchState. It is the reference
// the compact engine is checked against.

#include <bit>
#include <cstdint>
#include <vector>

#include "redsim/locc.hpp"
#include "redsim/qcore.hpp"

namespace redsim {

// Largest two-qubit concurrence over all pairs of qubits in rho.
inline double best_pair_concurrence(const DensityOperator& rho) {
  const int n = rho.qubits();
  if (n < 2) return 0.0;
  if (n == 2) return concurrence(rho);
  double best = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) best = std::max(best, concurrence(partial_trace(rho, {a, b})));
  return best;
}

namespace detail {

// Global Kraus operator for one round: qubits outside `live` are untouched,
// live qubit q applies M1 if bit q of `ones` is set and M0 otherwise.
inline LinearOp round_operator(int n, std::uint64_t live, std::uint64_t ones, const SpKrausPair& k) {
  std::vector<LinearOp> factors;
  factors.reserve(n);
  const LinearOp id = LinearOp::identity(1);
  const LinearOp m0 = k.zero.op(), m1 = k.one.op();
  for (int q = 0; q < n; ++q) {
    const auto bit = std::uint64_t{1} << q;
    factors.push_back(!(live & bit) ? id : (ones & bit) ? m1 : m0);
  }
  return tensor(std::span<const LinearOp>(factors));
}

// Enumerates the subsets of `mask` (including the empty one).
template <class F>
void for_each_submask(std::uint64_t mask, F&& f) {
  std::uint64_t sub = mask;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

inline double dense_value(const DensityOperator& rho, std::uint64_t live, int rounds_left,
                          const SpKrausPair& k) {
  if (std::popcount(live) <= 2 || rounds_left == 0) return best_pair_concurrence(rho);
  double total = 0.0;
  for_each_submask(live, [&](std::uint64_t ones) {
    const auto outcome = apply_kraus(round_operator(rho.qubits(), live, ones, k), rho);
    if (!outcome.vanished())
      total += outcome.weight * dense_value(*outcome.state, live & ~ones, rounds_left - 1, k);
  });
  return total;
}

}  // namespace detail

struct DenseClass {
  int zeros = 0;
  double probability = 0.0;
  double concurrence = 0.0;         // probability-weighted over the class's strings
  double concurrence_spread = 0.0;  // max - min over strings with nonzero weight
};

// One round on every qubit of sigma, grouped by number of zero outcomes.
// Entry k of the result is class k = 0..n.
inline std::vector<DenseClass> dense_single_round(const DensityOperator& sigma, double kappa) {
  const int n = sigma.qubits();
  const auto k = sp_kraus(kappa);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::vector<DenseClass> classes(n + 1);
  std::vector<double> lo(n + 1, 2.0), hi(n + 1, -1.0);
  for (std::uint64_t ones = 0; ones <= all; ++ones) {
    const int zeros = n - std::popcount(ones);
    const auto outcome = apply_kraus(detail::round_operator(n, all, ones, k), sigma);
    classes[zeros].zeros = zeros;
    classes[zeros].probability += outcome.weight;
    if (outcome.vanished()) continue;
    const double c = best_pair_concurrence(*outcome.state);
    classes[zeros].concurrence += outcome.weight * c;
    lo[zeros] = std::min(lo[zeros], c);
    hi[zeros] = std::max(hi[zeros], c);
  }
  for (int z = 0; z <= n; ++z) {
    classes[z].zeros = z;
    if (classes[z].probability > 0.0) classes[z].concurrence /= classes[z].probability;
    if (hi[z] >= lo[z]) classes[z].concurrence_spread = hi[z] - lo[z];
  }
  return classes;
}

// Expected best-pair concurrence after `rounds` rounds. Parties leave the live
// set on their first 1 outcome; measuring stops once two or fewer remain.
inline double dense_avg_entanglement(const DensityOperator& sigma, double kappa, int rounds) {
  detail::require(rounds >= 0, "round count must be non-negative");
  const std::uint64_t all = (std::uint64_t{1} << sigma.qubits()) - 1;
  return detail::dense_value(sigma, all, rounds, sp_kraus(kappa));
}

}  // namespace redsim
