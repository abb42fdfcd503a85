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

// Entanglement accounting on top of the SP-LOCC engine: branch concurrence,
// kappa optimization, the loss-averaged lower bound on the figure of merit,
// benchmark curves, lossy thresholds and the small-loss derivative checks.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redsim/config.hpp"
#include "redsim/locc.hpp"
#include "redsim/lossy.hpp"
#include "redsim/parallel.hpp"
#include "redsim/tsv.hpp"

namespace redsim {

// Concurrence of the best surviving pair: (2/m) * w_w / (w_w + w_0).
inline double branch_concurrence(const BranchState& b) {
  if (b.m < 2 || b.total() <= 0.0) return 0.0;
  return (2.0 / b.m) * b.w_w / b.total();
}

inline double avg_entanglement(const BranchState& start, double kappa, int rounds) {
  double sum = 0.0;
  for (const auto& t : run_rounds(start, kappa, rounds))
    sum += t.probability * branch_concurrence(t.branch);
  return sum;
}

// ---------------------------------------------------------------------------
// Scalar maximization
// ---------------------------------------------------------------------------

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

// Golden-section search for a maximum of f on [lo, hi]; stops once the
// bracket is narrower than tol.
template <class F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double tol, int max_iterations = 500) {
  detail::require(lo <= hi, "golden-section bracket is inverted");
  detail::require(tol > 0.0, "tolerance must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  int evaluations = 2;
  for (int it = 0; it < max_iterations && hi - lo >= tol; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evaluations;
  }
  const double x = (lo + hi) / 2.0;
  const double fx = f(x);
  ++evaluations;
  // return the best point actually evaluated
  if (fc > fx && fc >= fd) return {c, fc, evaluations};
  if (fd > fx && fd > fc) return {d, fd, evaluations};
  return {x, fx, evaluations};
}

struct OptimizationResult {
  double kappa_star = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

inline constexpr int kKappaGridPoints = 101;

// Scans kappa on a 0.01 grid, then refines the best grid cell by golden
// section. Ties resolve toward the smaller kappa, so a flat objective
// reports kappa* = 0 (no measurement).
inline OptimizationResult optimize_kappa(const BranchState& start, int rounds, double tol = 1e-6) {
  detail::require(tol > 0.0, "tolerance must be positive");
  detail::require(rounds >= 1, "at least one round is required");
  auto objective = [&](double kappa) { return avg_entanglement(start, kappa, rounds); };
  OptimizationResult best{0.0, objective(0.0), 1};
  for (int k = 1; k < kKappaGridPoints; ++k) {
    const double kappa = static_cast<double>(k) / (kKappaGridPoints - 1);
    const double v = objective(kappa);
    ++best.evaluations;
    if (v > best.value) {
      best.kappa_star = kappa;
      best.value = v;
    }
  }
  const double step = 1.0 / (kKappaGridPoints - 1);
  const double lo = std::max(0.0, best.kappa_star - step);
  const double hi = std::min(1.0, best.kappa_star + step);
  const auto refined = golden_section_maximize(objective, lo, hi, tol);
  best.evaluations += refined.evaluations;
  if (refined.value > best.value) {
    best.kappa_star = refined.x;
    best.value = refined.value;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Lower bound on the figure of merit
// ---------------------------------------------------------------------------

// Sum over lost counts i of q_i(N, eps) times the kappa-optimized average
// concurrence of sigma_i. The per-i optima do not depend on eps and are
// computed once at construction; afterwards the object is read-only.
class WLowerBound {
 public:
  WLowerBound(int n, int rounds, double tol = 1e-6, unsigned threads = 1) : n_(n), rounds_(rounds) {
    detail::require(n >= 3 && n <= kMaxQubits, "W lower bound needs 3 <= N <= 12");
    detail::require(rounds >= 1, "at least one round is required");
    optima_.resize(n - 1);
    parallel_for(optima_.size(), threads, [&](std::size_t i) {
      optima_[i] = optimize_kappa(lossy_w_branch(n, static_cast<int>(i)), rounds, tol);
    });
  }

  int n() const { return n_; }
  int rounds() const { return rounds_; }
  const std::vector<OptimizationResult>& optima() const { return optima_; }
  double branch_value(int lost) const { return optima_.at(lost).value; }

  double operator()(double eps) const {
    double sum = 0.0;
    for (int i = 0; i <= n_ - 2; ++i) sum += loss_weight(n_, i, eps) * optima_[i].value;
    return sum;
  }

 private:
  int n_;
  int rounds_;
  std::vector<OptimizationResult> optima_;
};

inline double fom_lower_bound(int n, int rounds, double eps) {
  detail::require_probability(eps, "loss probability");
  return WLowerBound(n, rounds)(eps);
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

enum class ResourceKind { w, ghz, two_centered };

inline ResourceKind parse_resource_kind(std::string_view s) {
  if (s == "w") return ResourceKind::w;
  if (s == "ghz") return ResourceKind::ghz;
  if (s == "twocentered") return ResourceKind::two_centered;
  throw ArgumentError("unknown resource '" + std::string(s) + "' (w|ghz|twocentered)");
}

inline const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::w: return "w";
    case ResourceKind::ghz: return "ghz";
    case ResourceKind::two_centered: return "twocentered";
  }
  return "?";
}

struct Curve {
  std::vector<double> grid;
  std::vector<double> values;
  ResourceKind resource = ResourceKind::w;
  int n = 0;
  int rounds = 1;
  BenchmarkMode mode = BenchmarkMode::robust;
};

inline std::vector<double> uniform_grid(double start = 0.0, double stop = 1.0, int points = 101) {
  detail::require(points >= 2, "a grid needs at least two points");
  detail::require(0.0 <= start && start < stop && stop <= 1.0, "grid must satisfy 0 <= start < stop <= 1");
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k) g[k] = start + (stop - start) * k / (points - 1);
  g.back() = stop;
  return g;
}

namespace detail {

inline void require_grid(std::span<const double> grid) {
  require(!grid.empty(), "empty grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    require(grid[k] >= 0.0 && grid[k] <= 1.0, "grid values must lie in [0, 1]");
    require(k == 0 || grid[k] > grid[k - 1], "grid must be strictly increasing");
  }
}

inline void require_resource(ResourceKind kind, int n, int rounds) {
  require(rounds >= 1, "at least one round is required");
  switch (kind) {
    case ResourceKind::w: require(n >= 3 && n <= kMaxQubits, "W curves need 3 <= N <= 12"); break;
    case ResourceKind::ghz: require(n >= 3, "GHZ curves need N >= 3"); break;
    case ResourceKind::two_centered: require(n >= 4, "two-centered curves need N >= 4"); break;
  }
}

}  // namespace detail

// eps -> value for one resource. The W variant shares its precomputed optima.
inline std::function<double(double)> resource_function(ResourceKind kind, int n, int rounds,
                                                       BenchmarkMode mode = BenchmarkMode::robust,
                                                       unsigned threads = 1) {
  detail::require_resource(kind, n, rounds);
  switch (kind) {
    case ResourceKind::w: {
      auto bound = std::make_shared<const WLowerBound>(n, rounds, 1e-6, threads);
      return [bound](double eps) { return (*bound)(eps); };
    }
    case ResourceKind::ghz:
      return [n](double eps) { return ghz_benchmark(n, eps); };
    case ResourceKind::two_centered:
      return [n, mode](double eps) { return two_centered_benchmark(n, eps, mode); };
  }
  throw ArgumentError("unknown resource kind");
}

inline Curve build_curve(const std::function<double(double)>& f, ResourceKind kind, int n, int rounds,
                         std::span<const double> grid, BenchmarkMode mode = BenchmarkMode::robust) {
  detail::require_grid(grid);
  Curve c{std::vector<double>(grid.begin(), grid.end()), {}, kind, n, rounds, mode};
  c.values.reserve(grid.size());
  for (double eps : grid) c.values.push_back(f(eps));
  return c;
}

inline Curve build_curve(ResourceKind kind, int n, int rounds, std::span<const double> grid,
                         BenchmarkMode mode = BenchmarkMode::robust, unsigned threads = 1) {
  detail::require_grid(grid);
  return build_curve(resource_function(kind, n, rounds, mode, threads), kind, n, rounds, grid, mode);
}

// Two columns, epsilon<TAB>value, no header.
inline std::string curve_tsv(const Curve& c) {
  std::string out;
  for (std::size_t k = 0; k < c.grid.size(); ++k)
    out += format_number(c.grid[k]) + '\t' + format_number(c.values[k]) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

struct ThresholdResult {
  double epsilon = 0.0;
  double value_a = 0.0;
  double value_b = 0.0;
};

inline constexpr double kThresholdResolution = 1e-5;

namespace detail {

// Bisection keeping d(lo) <= 0 < d(hi).
template <class D>
double bisect_crossing(D&& d, double lo, double hi) {
  while (hi - lo >= kThresholdResolution) {
    const double mid = (lo + hi) / 2.0;
    (d(mid) > 0.0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace detail

// First point where curve a rises above curve b, given a(0) < b(0). Uses
// the piecewise-linear interpolant of a - b. Empty when there is no crossing.
inline std::optional<ThresholdResult> threshold(const Curve& a, const Curve& b) {
  detail::require(a.grid.size() == b.grid.size(), "curves must share a grid");
  for (std::size_t k = 0; k < a.grid.size(); ++k)
    detail::require(std::abs(a.grid[k] - b.grid[k]) <= 1e-12, "curves must share a grid");
  const auto& g = a.grid;
  if (g.size() < 2 || a.values[0] - b.values[0] >= 0.0) return std::nullopt;
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double dk = a.values[k] - b.values[k];
    if (dk <= 0.0) continue;
    const double d0 = a.values[k - 1] - b.values[k - 1];
    auto lerp = [&](const std::vector<double>& v, double x) {
      const double t = (x - g[k - 1]) / (g[k] - g[k - 1]);
      return v[k - 1] + t * (v[k] - v[k - 1]);
    };
    auto d = [&](double x) { return d0 + (dk - d0) * (x - g[k - 1]) / (g[k] - g[k - 1]); };
    const double eps = detail::bisect_crossing(d, g[k - 1], g[k]);
    return ThresholdResult{eps, lerp(a.values, eps), lerp(b.values, eps)};
  }
  return std::nullopt;
}

// Same rule evaluated on the functions themselves: the grid only brackets
// the first sign change, bisection then runs on fa - fb.
inline std::optional<ThresholdResult> threshold(const std::function<double(double)>& fa,
                                                const std::function<double(double)>& fb,
                                                std::span<const double> grid) {
  detail::require_grid(grid);
  if (grid.size() < 2 || fa(grid[0]) - fb(grid[0]) >= 0.0) return std::nullopt;
  auto d = [&](double x) { return fa(x) - fb(x); };
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (d(grid[k]) <= 0.0) continue;
    const double eps = detail::bisect_crossing(d, grid[k - 1], grid[k]);
    return ThresholdResult{eps, fa(eps), fb(eps)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Small-loss behaviour
// ---------------------------------------------------------------------------

// Central difference inside [0, 1]; second-order one-sided at the ends.
inline double derivative_at(const std::function<double(double)>& f, double x, double h = 1e-4) {
  detail::require(h > 0.0 && x >= 0.0 && x <= 1.0, "invalid derivative arguments");
  if (x - h >= 0.0 && x + h <= 1.0) return (f(x + h) - f(x - h)) / (2.0 * h);
  if (x - h < 0.0) return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
}

inline double derivative_at_zero(const std::function<double(double)>& f, double h = 1e-4) {
  return derivative_at(f, 0.0, h);
}

inline double ghz_derivative_at_zero(int n) {
  return derivative_at_zero([n](double eps) { return ghz_benchmark(n, eps); });
}

inline double w_derivative_at_zero(const WLowerBound& bound) {
  return derivative_at_zero([&bound](double eps) { return bound(eps); });
}

// Only q_0 and q_1 have a nonzero slope at eps = 0, hence
// -(N-2) * (E(sigma_0) - E(sigma_1)).
inline double w_derivative_analytic(const WLowerBound& bound) {
  return -(bound.n() - 2) * (bound.branch_value(0) - bound.branch_value(1));
}

// Ratio of the W slope to the GHZ slope at eps = 0, which reduces to
// E(sigma_0^N) - E(sigma_1^N).
inline double advantage_ratio(const WLowerBound& bound) {
  detail::require(bound.n() >= 4, "advantage ratio needs N >= 4");
  return bound.branch_value(0) - bound.branch_value(1);
}

inline double advantage_ratio(int n, int rounds) { return advantage_ratio(WLowerBound(n, rounds)); }

// Finite-difference route to the same ratio.
inline double advantage_ratio_fd(const WLowerBound& bound) {
  detail::require(bound.n() >= 4, "advantage ratio needs N >= 4");
  return w_derivative_at_zero(bound) / ghz_derivative_at_zero(bound.n());
}

struct AdvantageRow {
  int n = 0;
  std::optional<double> threshold;  // W versus the reference benchmark
  double ghz_derivative = 0.0;
  double w_derivative = 0.0;
  double ratio = 0.0;     // analytic
  double ratio_fd = 0.0;  // finite differences
};

struct AdvantageReport {
  std::vector<AdvantageRow> rows;
  std::vector<std::string> violations;
};

// Thresholds and derivative ratios over a range of network sizes, with the
// expected trends (both decreasing in N) checked.
inline AdvantageReport advantage_table(std::span<const int> sizes, int rounds,
                                       ResourceKind reference = ResourceKind::ghz,
                                       BenchmarkMode mode = BenchmarkMode::robust, unsigned threads = 1) {
  detail::require(reference != ResourceKind::w, "reference must be a GHZ-like benchmark");
  AdvantageReport report;
  report.rows.resize(sizes.size());
  const auto grid = uniform_grid();
  parallel_for(sizes.size(), threads, [&](std::size_t k) {
    const int n = sizes[k];
    detail::require(n >= 4 && n <= kMaxQubits, "advantage sizes must lie in [4, 12]");
    const WLowerBound bound(n, rounds);
    auto& row = report.rows[k];
    row.n = n;
    const auto found = threshold([&bound](double e) { return bound(e); },
                                 resource_function(reference, n, rounds, mode), grid);
    if (found) row.threshold = found->epsilon;
    row.ghz_derivative = ghz_derivative_at_zero(n);
    row.w_derivative = w_derivative_at_zero(bound);
    row.ratio = advantage_ratio(bound);
    row.ratio_fd = advantage_ratio_fd(bound);
  });
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const auto& row = report.rows[k];
    if (!row.threshold) report.violations.push_back("N=" + std::to_string(row.n) + ": no threshold");
    if (k == 0) continue;
    const auto& prev = report.rows[k - 1];
    if (row.threshold && prev.threshold && !(*row.threshold < *prev.threshold))
      report.violations.push_back("threshold not decreasing at N=" + std::to_string(row.n));
    if (!(row.ratio < prev.ratio))
      report.violations.push_back("ratio not decreasing at N=" + std::to_string(row.n));
  }
  return report;
}

}  // namespace redsim
