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

#include "redsim/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "redsim/dense_engine.hpp"
#include "redsim/resources.hpp"

namespace redsim {
namespace {

double choose(int n, int k) {
  double c = 1.0;
  for (int t = 1; t <= k; ++t) c = c * (n - k + t) / t;
  return c;
}

// Single-round average concurrence of sigma_lost written out directly:
// class j keeps j parties in a W_j with weight (m/N) C(m,j) (j/m) k^(m-j) (1-k)^(j-1).
// Two live parties are left alone.
double single_round_oracle(int n, int lost, double kappa) {
  const int m = n - lost;
  if (m == 2) return 2.0 / n;
  double sum = 0.0;
  for (int j = 2; j <= m; ++j)
    sum += (2.0 / j) * (static_cast<double>(m) / n) * choose(m, j) * (static_cast<double>(j) / m) *
           std::pow(kappa, m - j) * std::pow(1.0 - kappa, j - 1);
  return sum;
}

double fine_grid_argmax(const std::function<double(double)>& f, int points, double* value) {
  double best_x = 0.0, best = f(0.0);
  for (int k = 1; k <= points; ++k) {
    const double x = static_cast<double>(k) / points;
    if (f(x) > best) best = f(x), best_x = x;
  }
  *value = best;
  return best_x;
}

TEST(AnalysisBranch, Concurrence) {
  EXPECT_DOUBLE_EQ(branch_concurrence({2, 1.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(branch_concurrence({3, 1.0, 0.0}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(branch_concurrence({4, 0.5, 0.5}), 0.25);
  EXPECT_EQ(branch_concurrence({1, 0.0, 1.0}), 0.0);
  EXPECT_EQ(branch_concurrence({5, 0.0, 0.0}), 0.0);
}

TEST(AnalysisBranch, AverageEntanglementExamples) {
  EXPECT_NEAR(avg_entanglement({3, 1.0, 0.0}, 0.25, 1), 0.75, 1e-15);
  EXPECT_NEAR(avg_entanglement({4, 1.0, 0.0}, 0.4625, 1), 0.68981, 1e-5);
  EXPECT_NEAR(avg_entanglement({4, 1.0, 0.0}, 0.0, 3), 0.5, 1e-15);
}

TEST(AnalysisBranch, SingleRoundMatchesClosedForm) {
  for (int n = 3; n <= 12; ++n)
    for (int lost = 0; lost <= n - 2; ++lost)
      for (int k = 0; k <= 20; ++k) {
        const double kappa = k / 20.0;
        EXPECT_NEAR(avg_entanglement(lossy_w_branch(n, lost), kappa, 1), single_round_oracle(n, lost, kappa),
                    1e-12);
      }
}

TEST(AnalysisBranch, MatchesDenseEngineOverRounds) {
  for (int n = 3; n <= 5; ++n)
    for (int lost = 0; lost <= n - 2; ++lost)
      for (int r = 1; r <= 3; ++r)
        for (double kappa : {0.15, 0.5, 0.8}) {
          const double dense = dense_avg_entanglement(w_sigma(n, lost), kappa, r);
          EXPECT_NEAR(avg_entanglement(lossy_w_branch(n, lost), kappa, r), dense, 1e-9)
              << n << ' ' << lost << ' ' << r << ' ' << kappa;
        }
}

TEST(AnalysisBranch, OptimizedValueGrowsWithRounds) {
  for (int n = 3; n <= 8; ++n)
    for (int lost = 0; lost <= n - 2; ++lost) {
      double prev = 0.0;
      for (int r = 1; r <= 4; ++r) {
        const double v = optimize_kappa(lossy_w_branch(n, lost), r).value;
        EXPECT_GE(v, prev - 1e-9) << n << ' ' << lost << ' ' << r;
        prev = v;
      }
    }
}

TEST(AnalysisOptimize, GoldenSection) {
  const auto r = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
  EXPECT_GT(r.evaluations, 10);
  EXPECT_THROW(golden_section_maximize([](double x) { return x; }, 1.0, 0.0, 1e-6), ArgumentError);
}

TEST(AnalysisOptimize, HandDerivedOptima) {
  const auto w3 = optimize_kappa({3, 1.0, 0.0}, 1);
  EXPECT_NEAR(w3.kappa_star, 0.25, 1e-6);
  EXPECT_NEAR(w3.value, 0.75, 1e-6);

  const auto w4 = optimize_kappa({4, 1.0, 0.0}, 1);
  EXPECT_NEAR(w4.kappa_star, (1.0 + std::sqrt(10.0)) / 9.0, 1e-6);
  EXPECT_NEAR(w4.value, 0.68981, 1e-5);
  const double k = w4.kappa_star;
  EXPECT_NEAR(w4.value, 0.5 * std::pow(1 - k, 3) + 2 * k * (1 - k) * (1 - k) + 3 * k * k * (1 - k), 1e-12);
}

TEST(AnalysisOptimize, AbsorbingStartKeepsKappaZero) {
  const auto r = optimize_kappa({2, 1.0, 0.0}, 3);
  EXPECT_EQ(r.kappa_star, 0.0);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_THROW(optimize_kappa({3, 1.0, 0.0}, 0), ArgumentError);
}

TEST(AnalysisOptimize, AgreesWithFineGridSearch) {
  for (int n = 3; n <= 8; ++n)
    for (int lost = 0; lost <= n - 2; ++lost) {
      double oracle = 0.0;
      fine_grid_argmax([&](double kappa) { return single_round_oracle(n, lost, kappa); }, 20000, &oracle);
      const auto r = optimize_kappa(lossy_w_branch(n, lost), 1);
      EXPECT_GE(r.value, oracle - 1e-9) << n << ' ' << lost;
      EXPECT_LE(r.value, oracle + 1e-7) << n << ' ' << lost;
    }
}

TEST(AnalysisBound, Endpoints) {
  for (int n = 3; n <= 10; ++n) {
    const WLowerBound bound(n, 1);
    EXPECT_NEAR(bound(1.0), 2.0 / n, 1e-12);
    EXPECT_NEAR(bound(0.0), bound.branch_value(0), 1e-15);
  }
  EXPECT_NEAR(fom_lower_bound(4, 1, 0.0), 0.68981, 1e-5);
  EXPECT_THROW(fom_lower_bound(4, 1, 1.5), ArgumentError);
  EXPECT_THROW(WLowerBound(2, 1), ArgumentError);
  EXPECT_THROW(WLowerBound(13, 1), ArgumentError);
}

TEST(AnalysisBound, ThreadCountDoesNotChangeOptima) {
  const WLowerBound serial(7, 2, 1e-6, 1), threaded(7, 2, 1e-6, 4);
  for (int i = 0; i <= 5; ++i) {
    EXPECT_EQ(serial.optima()[i].kappa_star, threaded.optima()[i].kappa_star);
    EXPECT_EQ(serial.optima()[i].value, threaded.optima()[i].value);
  }
}

TEST(AnalysisBound, BranchValuesDecreaseWithLoss) {
  for (int n = 3; n <= 10; ++n) {
    const WLowerBound bound(n, 1);
    for (int i = 1; i <= n - 2; ++i) EXPECT_LT(bound.branch_value(i), bound.branch_value(i - 1));
  }
}

TEST(AnalysisCurve, Examples) {
  const auto grid = uniform_grid();
  ASSERT_EQ(grid.size(), 101u);
  const auto w = build_curve(ResourceKind::w, 4, 1, grid);
  EXPECT_NEAR(w.values[0], 0.68981, 1e-5);
  EXPECT_NEAR(w.values[100], 0.5, 1e-12);
  EXPECT_NEAR(build_curve(ResourceKind::ghz, 6, 1, grid).values[50], 0.0625, 1e-15);
  EXPECT_NEAR(build_curve(ResourceKind::two_centered, 4, 1, grid).values[50], 0.75, 1e-15);
  EXPECT_THROW(build_curve(ResourceKind::two_centered, 3, 1, grid), ArgumentError);
  EXPECT_THROW(uniform_grid(0.5, 0.5, 3), ArgumentError);
  const std::vector<double> bad{0.0, 0.5, 0.4};
  EXPECT_THROW(build_curve(ResourceKind::ghz, 4, 1, bad), ArgumentError);
}

TEST(AnalysisCurve, CurvesDecreaseInLoss) {
  const auto grid = uniform_grid();
  for (auto kind : {ResourceKind::w, ResourceKind::ghz, ResourceKind::two_centered})
    for (int n : {4, 6, 8}) {
      const auto c = build_curve(kind, n, 1, grid);
      for (std::size_t k = 1; k < c.values.size(); ++k) EXPECT_LE(c.values[k], c.values[k - 1] + 1e-12);
    }
}

TEST(AnalysisCurve, TsvFormat) {
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto c = build_curve(ResourceKind::ghz, 4, 1, grid);
  EXPECT_EQ(curve_tsv(c), "0\t1\n0.5\t0.25\n1\t0\n");
  const auto w = build_curve([](double) { return 1.0 / 3.0; }, ResourceKind::w, 3, 1, grid);
  EXPECT_EQ(curve_tsv(w).substr(0, 17), "0\t0.333333333333\n");
}

TEST(AnalysisThreshold, SyntheticCrossing) {
  const auto grid = uniform_grid(0.0, 1.0, 11);
  auto a = [](double x) { return x - 0.33; };
  auto b = [](double) { return 0.0; };
  const auto f = threshold(a, b, grid);
  ASSERT_TRUE(f);
  EXPECT_NEAR(f->epsilon, 0.33, 1e-5);
  const auto c = threshold(build_curve(a, ResourceKind::w, 3, 1, grid), build_curve(b, ResourceKind::ghz, 3, 1, grid));
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->epsilon, 0.33, 1e-5);
  EXPECT_NEAR(c->value_a, c->value_b, 1e-4);
}

TEST(AnalysisThreshold, NoCrossing) {
  const auto grid = uniform_grid();
  const auto ghz = build_curve(ResourceKind::ghz, 6, 1, grid);
  EXPECT_FALSE(threshold(ghz, ghz));
  auto f = resource_function(ResourceKind::ghz, 6, 1);
  EXPECT_FALSE(threshold(f, f, grid));
  // W already ahead at eps = 0 for N = 3 (GHZ_3 gives 1 but W_3 gives 0.75)
  EXPECT_FALSE(threshold(resource_function(ResourceKind::ghz, 3, 1), resource_function(ResourceKind::w, 3, 1), grid));
}

TEST(AnalysisThreshold, WVersusGhz) {
  const auto grid = uniform_grid();
  double prev = 1.0;
  for (int n : {4, 6, 8}) {
    const auto t = threshold(resource_function(ResourceKind::w, n, 1), resource_function(ResourceKind::ghz, n, 1), grid);
    ASSERT_TRUE(t) << n;
    EXPECT_LT(t->epsilon, prev);
    EXPECT_NEAR(t->value_a, t->value_b, 1e-4);
    prev = t->epsilon;
    if (n == 4) EXPECT_NEAR(t->epsilon, 0.2, 0.05);
    if (n == 8) EXPECT_NEAR(t->epsilon, 0.1, 0.05);

    // grid-interpolated curves land close to the exact crossing
    const auto c = threshold(build_curve(ResourceKind::w, n, 1, grid), build_curve(ResourceKind::ghz, n, 1, grid));
    ASSERT_TRUE(c);
    EXPECT_NEAR(c->epsilon, t->epsilon, 2e-3);
  }
}

TEST(AnalysisThreshold, MultiRoundDominatesAndShrinks) {
  const auto grid = uniform_grid();
  for (auto [n, r] : {std::pair{4, 10}, {6, 5}, {8, 2}}) {
    const auto one = build_curve(ResourceKind::w, n, 1, grid);
    const auto many = build_curve(ResourceKind::w, n, r, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_GE(many.values[k], one.values[k] - 1e-9);
    const auto ghz = build_curve(ResourceKind::ghz, n, 1, grid);
    const auto t1 = threshold(one, ghz), tr = threshold(many, ghz);
    ASSERT_TRUE(t1 && tr);
    EXPECT_LT(tr->epsilon, t1->epsilon) << n << ' ' << r;
  }
}

TEST(AnalysisDerivative, FiniteDifferences) {
  EXPECT_NEAR(derivative_at([](double x) { return x * x * x; }, 0.5), 0.75, 1e-7);
  EXPECT_NEAR(derivative_at([](double x) { return x * x; }, 0.0), 0.0, 1e-12);
  EXPECT_NEAR(derivative_at([](double x) { return x * x; }, 1.0), 2.0, 1e-10);
  EXPECT_THROW(derivative_at([](double x) { return x; }, 1.5), ArgumentError);
}

TEST(AnalysisDerivative, GhzSlope) {
  for (int n = 4; n <= 10; ++n) EXPECT_NEAR(ghz_derivative_at_zero(n) / -(n - 2), 1.0, 1e-3);
}

TEST(AnalysisDerivative, WSlopeAnalyticMatchesNumeric) {
  for (int n = 4; n <= 10; ++n) {
    const WLowerBound bound(n, 1);
    EXPECT_NEAR(w_derivative_at_zero(bound), w_derivative_analytic(bound), 1e-4) << n;
    EXPECT_NEAR(advantage_ratio(bound), advantage_ratio_fd(bound), 1e-4) << n;
  }
}

TEST(AnalysisDerivative, RatioAndFidelityTrends) {
  double prev_ratio = 1.0, prev_fid = 0.0;
  for (int n = 4; n <= 10; ++n) {
    const double ratio = advantage_ratio(n, 1);
    EXPECT_GT(ratio, 0.0);
    EXPECT_LT(ratio, prev_ratio) << n;
    prev_ratio = ratio;
    const double fid = fidelity(w_sigma(n - 1, 0), w_sigma(n, 1));
    EXPECT_GT(fid, prev_fid) << n;
    EXPECT_LT(fid, 1.0);
    EXPECT_NEAR(fid, static_cast<double>(n - 1) / n, 1e-9);
    prev_fid = fid;
  }
}

TEST(AnalysisAdvantage, Table) {
  const std::vector<int> sizes{4, 6, 8};
  const auto report = advantage_table(sizes, 1);
  EXPECT_TRUE(report.violations.empty());
  ASSERT_EQ(report.rows.size(), 3u);
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.threshold);
    EXPECT_NEAR(row.ghz_derivative, -(row.n - 2), 1e-3 * (row.n - 2));
  }
  EXPECT_THROW(advantage_table(sizes, 1, ResourceKind::w), ArgumentError);
}

TEST(AnalysisParse, ResourceKinds) {
  EXPECT_EQ(parse_resource_kind("w"), ResourceKind::w);
  EXPECT_EQ(parse_resource_kind("ghz"), ResourceKind::ghz);
  EXPECT_EQ(parse_resource_kind("twocentered"), ResourceKind::two_centered);
  EXPECT_STREQ(to_string(ResourceKind::two_centered), "twocentered");
  EXPECT_THROW(parse_resource_kind("cluster"), ArgumentError);
}

}  // namespace
}  // namespace redsim
