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

// Single-parameter LOCC on (possibly lossy) W states.
//
// Every live party applies the Kraus pair
//   M0 = diag(sqrt(1 - kappa), 1),   M1 = diag(sqrt(kappa), 0)
// in every round. Outcome strings are grouped by their number of zeros (the
// outcome class); all strings of a class leave LOCC-equivalent states. A
// received state sigma_i is a mixture of a W component and the vacuum, and so
// is every branch it evolves into, which gives the compact BranchState form.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "redsim/config.hpp"
#include "redsim/lossy.hpp"
#include "redsim/qcore.hpp"
#include "redsim/tsv.hpp"

namespace redsim {

// ---------------------------------------------------------------------------
// Kraus operators
// ---------------------------------------------------------------------------

// Upper-triangular single-qubit Kraus operator [[sqrt(a), b], [0, sqrt(c)]].
struct KrausOperator {
  double a = 0.0;
  Complex b = 0.0;
  double c = 0.0;

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m << std::sqrt(a), b, 0.0, std::sqrt(c);
    return m;
  }

  LinearOp op() const { return LinearOp(CMatrix(matrix())); }
};

struct SpKrausPair {
  KrausOperator zero;  // outcome 0
  KrausOperator one;   // outcome 1
};

inline SpKrausPair sp_kraus(double kappa) {
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  return {{1.0 - kappa, 0.0, 1.0}, {kappa, 0.0, 0.0}};
}

struct CompletenessReport {
  bool pass = false;
  double residual = 0.0;  // Frobenius norm of sum(M^dagger M) - I
};

inline CompletenessReport kraus_completeness_check(std::span<const KrausOperator> set) {
  detail::require(!set.empty(), "completeness check of an empty Kraus set");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& k : set) sum += k.matrix().adjoint() * k.matrix();
  const double residual = (sum - Eigen::Matrix2cd::Identity()).norm();
  return {residual <= 1e-10, residual};
}

inline CompletenessReport kraus_completeness_check(std::initializer_list<KrausOperator> set) {
  return kraus_completeness_check(std::span<const KrausOperator>(set.begin(), set.size()));
}

// ---------------------------------------------------------------------------
// Outcome-class weights
// ---------------------------------------------------------------------------

// Probability that a pure W_m lands in outcome class `zeros`:
// C(m, j) (j/m) kappa^(m-j) (1-kappa)^(j-1).
inline double w_class_weight(int m, int zeros, double kappa) {
  detail::require(m >= 1, "live qubit count must be positive");
  detail::require(zeros >= 1 && zeros <= m, "W outcome class must lie in [1, m]");
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  return binomial(m, zeros) * (static_cast<double>(zeros) / m) * std::pow(kappa, m - zeros) *
         std::pow(1.0 - kappa, zeros - 1);
}

// Probability that the vacuum |0..0> on m qubits lands in class `zeros`.
inline double vac_class_weight(int m, int zeros, double kappa) {
  detail::require(m >= 1, "live qubit count must be positive");
  detail::require(zeros >= 0 && zeros <= m, "vacuum outcome class must lie in [0, m]");
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  return binomial(m, zeros) * std::pow(kappa, m - zeros) * std::pow(1.0 - kappa, zeros);
}

// ---------------------------------------------------------------------------
// Branch states
// ---------------------------------------------------------------------------

// Unnormalized  w_w |W_m><W_m| + w_0 |separable>  on m live qubits. Parties
// that dropped out of the live set sit in |0> and are not tracked.
struct BranchState {
  int m = 0;
  double w_w = 0.0;
  double w_0 = 0.0;

  double total() const { return w_w + w_0; }

  BranchState normalized() const {
    const double t = total();
    return t > 0.0 ? BranchState{m, w_w / t, w_0 / t} : *this;
  }

  friend bool operator==(const BranchState&, const BranchState&) = default;
};

// Branch describing w_sigma(n, lost).
inline BranchState lossy_w_branch(int n, int lost) {
  detail::require(n >= 2 && lost >= 0 && lost <= n - 2, "lost count must lie in [0, N-2]");
  const int m = n - lost;
  return {m, static_cast<double>(m) / n, static_cast<double>(lost) / n};
}

struct OutcomeClass {
  int zeros = 0;             // number of 0 outcomes in the round
  double probability = 0.0;  // unnormalized, relative to the parent branch
  BranchState branch;        // unnormalized child
};

using OutcomeClassEnsemble = std::vector<OutcomeClass>;

// One measurement round. Classes of zero probability are omitted; the class
// weights sum to the parent's total weight.
inline OutcomeClassEnsemble evolve_branch(const BranchState& b, double kappa) {
  detail::require(b.m >= 1, "cannot measure a dead branch (m = 0)");
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  OutcomeClassEnsemble out;
  for (int j = b.m; j >= 0; --j) {
    const double w = (j >= 1 && b.w_w > 0.0) ? b.w_w * w_class_weight(b.m, j, kappa) : 0.0;
    BranchState child{j, 0.0, b.w_0 > 0.0 ? b.w_0 * vac_class_weight(b.m, j, kappa) : 0.0};
    // a single surviving excitation is a product state and joins the separable part
    if (j >= 2)
      child.w_w = w;
    else
      child.w_0 += w;
    if (child.total() > 0.0) out.push_back({j, child.total(), child});
  }
  return out;
}

struct TerminalBranch {
  double probability = 0.0;
  BranchState branch;  // normalized
};

using TerminalEnsemble = std::vector<TerminalBranch>;

namespace detail {

// Adds b to the bucket list, merging with a branch of equal m and equal
// W/separable proportion. Along any measurement path the proportion depends
// only on (m, rounds taken), so buckets stay O(m) per round.
inline void merge_into(std::vector<BranchState>& buckets, const BranchState& b) {
  for (auto& x : buckets) {
    if (x.m != b.m) continue;
    const double cross = x.w_w * b.w_0 - b.w_w * x.w_0;
    if (std::abs(cross) <= 1e-13 * x.total() * b.total()) {
      x.w_w += b.w_w;
      x.w_0 += b.w_0;
      return;
    }
  }
  buckets.push_back(b);
}

}  // namespace detail

// Breadth-first evolution for up to `rounds` rounds. Branches with m <= 2 are
// absorbing. Probabilities are relative to the initial branch's weight.
inline TerminalEnsemble run_rounds(const BranchState& initial, double kappa, int rounds) {
  detail::require(rounds >= 0, "round count must be non-negative");
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  detail::require(initial.w_w >= 0.0 && initial.w_0 >= 0.0 && initial.total() > 0.0,
                  "initial branch must carry positive weight");
  const double scale = initial.total();
  std::vector<BranchState> active{initial};
  std::vector<BranchState> finished;
  for (int r = 0; r < rounds && !active.empty(); ++r) {
    std::vector<BranchState> next;
    for (const auto& b : active) {
      if (b.m <= 2) {
        detail::merge_into(finished, b);
        continue;
      }
      for (const auto& cls : evolve_branch(b, kappa)) detail::merge_into(next, cls.branch);
    }
    active = std::move(next);
  }
  for (const auto& b : active) detail::merge_into(finished, b);
  TerminalEnsemble out;
  out.reserve(finished.size());
  for (const auto& b : finished) out.push_back({b.total() / scale, b.normalized()});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.branch.m != y.branch.m ? x.branch.m > y.branch.m : x.branch.w_w > y.branch.w_w;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Finite-state Markov chain of the lossless protocol
// ---------------------------------------------------------------------------

struct TransitionMatrix {
  std::vector<std::string> states;  // W_N, ..., W_3, Bell, sep
  Eigen::MatrixXd p;                // row-stochastic

  int index_of(std::string_view label) const {
    for (std::size_t k = 0; k < states.size(); ++k)
      if (states[k] == label) return static_cast<int>(k);
    throw ArgumentError("unknown chain state '" + std::string(label) + "'");
  }

  Eigen::Index size() const { return p.rows(); }
};

inline std::string w_label(int m) { return "W_" + std::to_string(m); }

inline TransitionMatrix build_transition_matrix(int n, double kappa) {
  detail::require(n >= 3, "the lossless chain needs N >= 3");
  detail::require(n <= 64, "chain size is limited to N <= 64");
  detail::require(kappa >= 0.0 && kappa <= 1.0, "kappa must lie in [0, 1]");
  TransitionMatrix t;
  for (int m = n; m >= 3; --m) t.states.push_back(w_label(m));
  t.states.push_back("Bell");
  t.states.push_back("sep");
  const auto size = static_cast<Eigen::Index>(t.states.size());
  const Eigen::Index bell = size - 2, sep = size - 1;
  auto state_of = [&](int zeros) -> Eigen::Index {
    if (zeros >= 3) return n - zeros;
    return zeros == 2 ? bell : sep;
  };
  t.p = Eigen::MatrixXd::Zero(size, size);
  for (int m = n; m >= 3; --m)
    for (int j = 1; j <= m; ++j) t.p(n - m, state_of(j)) += w_class_weight(m, j, kappa);
  t.p(bell, bell) = 1.0;
  t.p(sep, sep) = 1.0;
  return t;
}

inline Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& p, int r) {
  detail::require(r >= 0, "matrix power must be non-negative");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  Eigen::MatrixXd base = p;
  for (; r > 0; r >>= 1) {
    if (r & 1) result = result * base;
    base = base * base;
  }
  return result;
}

// Row `start` of P^r.
inline Eigen::VectorXd r_step_distribution(const TransitionMatrix& t, std::string_view start, int r) {
  detail::require(r >= 0, "step count must be non-negative");
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Unit(t.size(), t.index_of(start));
  for (int k = 0; k < r; ++k) row = row * t.p;
  return row.transpose();
}

// Header line "from" + state labels, then one labelled row per state.
inline std::string transition_matrix_tsv(const TransitionMatrix& t) {
  std::string out = "from";
  for (const auto& s : t.states) out += '\t' + s;
  out += '\n';
  for (Eigen::Index r = 0; r < t.size(); ++r) {
    out += t.states[r];
    for (Eigen::Index c = 0; c < t.size(); ++c) out += '\t' + format_number(t.p(r, c));
    out += '\n';
  }
  return out;
}

}  // namespace redsim
