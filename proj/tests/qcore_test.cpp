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

#include "redsim/qcore.hpp"

#include <gtest/gtest.h>

#include <random>

#include "redsim/resources.hpp"
#include "test_util.hpp"

namespace redsim {
namespace {

using testing::kron2;
using testing::max_abs_diff;

Eigen::Matrix2cd diag2(double a, double b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

TEST(QcoreTensor, IdentityAndBasis) {
  const auto id = tensor({LinearOp::identity(1), LinearOp::identity(1)});
  EXPECT_EQ(max_abs_diff(id.matrix(), CMatrix::Identity(4, 4)), 0.0);

  const auto k = tensor({Ket::from_bits("0"), Ket::from_bits("1")});
  ASSERT_EQ(k.dim(), 4);
  EXPECT_EQ(k[0], Complex(0.0));
  EXPECT_EQ(k[1], Complex(1.0));
  EXPECT_EQ(k[2], Complex(0.0));
  EXPECT_EQ(k[3], Complex(0.0));
}

TEST(QcoreTensor, KrausPairExpansion) {
  // M0^0.25 = diag(sqrt(.75), 1), M1^0.25 = diag(sqrt(.25), 0); their product is
  // diagonal with entries (sqrt(.75) sqrt(.25), 0, sqrt(.25), 0).
  const LinearOp m0(CMatrix(diag2(std::sqrt(0.75), 1.0)));
  const LinearOp m1(CMatrix(diag2(std::sqrt(0.25), 0.0)));
  const auto t = tensor({m0, m1});
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = std::sqrt(0.75) * std::sqrt(0.25);
  expected(2, 2) = std::sqrt(0.25);
  EXPECT_LT(max_abs_diff(t.matrix(), expected), 1e-15);
}

TEST(QcoreTensor, Errors) {
  EXPECT_THROW(tensor(std::span<const LinearOp>{}), ArgumentError);
  std::vector<TensorFactor> mixed{LinearOp::identity(1), Ket::from_bits("0")};
  EXPECT_THROW(tensor(std::span<const TensorFactor>(mixed)), ArgumentError);
  std::vector<TensorFactor> kets{Ket::from_bits("1"), Ket::from_bits("0")};
  const auto out = tensor(std::span<const TensorFactor>(kets));
  EXPECT_EQ(std::get<Ket>(out)[2], Complex(1.0));
}

TEST(QcoreTensor, DimensionIsProduct) {
  std::vector<Ket> factors(5, Ket::from_bits("01"));
  EXPECT_EQ(tensor(std::span<const Ket>(factors)).qubits(), 10);
  std::vector<Ket> too_many(7, Ket::from_bits("01"));
  EXPECT_THROW(tensor(std::span<const Ket>(too_many)), ArgumentError);
}

TEST(QcoreKet, NormalizingConstructor) {
  CVector v(4);
  v << 1.0, Complex(0, 2.0), -3.0, 0.5;
  EXPECT_NEAR(Ket::normalized(v).norm(), 1.0, 1e-12);
  EXPECT_THROW(Ket::normalized(CVector::Zero(4)), ArgumentError);
  EXPECT_THROW(Ket(CVector::Zero(3)), ArgumentError);
  EXPECT_THROW(Ket::basis(13, 0), ArgumentError);
}

TEST(QcorePartialTrace, BellReducesToMaximallyMixed) {
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  const auto rho = DensityOperator::from_ket(Ket::normalized(phi));
  const auto red = partial_trace(rho, {0});
  EXPECT_LT(max_abs_diff(red.matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(QcorePartialTrace, W3OverFirstQubit) {
  // |W3> = (|001> + |010> + |100>)/sqrt(3). Tracing qubit 0 leaves
  // (1/3)|00><00| (from |100>) + (2/3)|Psi+><Psi+|.
  const auto red = partial_trace(DensityOperator::from_ket(w_state(3)), {1, 2});
  const CMatrix expected = testing::ket00() / 3.0 + (2.0 / 3.0) * testing::psi_plus();
  EXPECT_LT(max_abs_diff(red.matrix(), expected), 1e-15);
}

TEST(QcorePartialTrace, KeepAllIsIdentity) {
  std::mt19937_64 rng(7);
  const auto rho = testing::random_density(3, rng);
  EXPECT_EQ(max_abs_diff(partial_trace(rho, {0, 1, 2}).matrix(), rho.matrix()), 0.0);
}

TEST(QcorePartialTrace, BigEndianOrder) {
  // |01>: qubit 0 is |0>, qubit 1 is |1>.
  const auto rho = DensityOperator::from_ket(Ket::from_bits("01"));
  EXPECT_NEAR(partial_trace(rho, {0}).matrix()(0, 0).real(), 1.0, 0.0);
  EXPECT_NEAR(partial_trace(rho, {1}).matrix()(1, 1).real(), 1.0, 0.0);
}

TEST(QcorePartialTrace, Errors) {
  const auto rho = DensityOperator::maximally_mixed(2);
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), ArgumentError);
  EXPECT_THROW(partial_trace(rho, {2}), ArgumentError);
  EXPECT_THROW(partial_trace(rho, {-1}), ArgumentError);
  EXPECT_THROW(partial_trace(rho, {1, 1}), ArgumentError);
}

TEST(QcorePartialTrace, ComposesAndPreservesValidity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = testing::random_density(4, rng);
    // trace out {0} then (new) qubit 1 == original qubit 2, versus {0, 2} at once
    const auto step = partial_trace(partial_trace(rho, {1, 2, 3}), {0, 2});
    const auto once = partial_trace(rho, {1, 3});
    EXPECT_LT(max_abs_diff(step.matrix(), once.matrix()), 1e-12);
    EXPECT_TRUE(check_validity(once).ok());
    EXPECT_NEAR(once.trace(), 1.0, 1e-12);
  }
}

TEST(QcoreKraus, IdentityAndAnnihilation) {
  const auto w3 = DensityOperator::from_ket(w_state(3));
  const auto same = apply_kraus(LinearOp::identity(3), w3);
  EXPECT_NEAR(same.weight, 1.0, 1e-15);
  ASSERT_FALSE(same.vanished());
  EXPECT_LT(max_abs_diff(same.state->matrix(), w3.matrix()), 1e-15);

  // M1 = diag(sqrt(k), 0) kills |1>, and every W term has one excitation.
  const LinearOp m1(CMatrix(diag2(std::sqrt(0.5), 0.0)));
  const auto gone = apply_kraus(tensor({m1, m1, m1}), w3);
  EXPECT_EQ(gone.weight, 0.0);
  EXPECT_TRUE(gone.vanished());
}

TEST(QcoreKraus, WeakMeasurementOnW3) {
  // Each W term picks up (sqrt(1-k))^2 from the two |0> factors: weight (1-k)^2.
  const LinearOp m0(CMatrix(diag2(std::sqrt(0.75), 1.0)));
  const auto out = apply_kraus(tensor({m0, m0, m0}), DensityOperator::from_ket(w_state(3)));
  EXPECT_NEAR(out.weight, 0.5625, 1e-15);
  EXPECT_LT(max_abs_diff(out.state->matrix(), DensityOperator::from_ket(w_state(3)).matrix()), 1e-14);
  EXPECT_THROW(apply_kraus(m0, DensityOperator::from_ket(w_state(3))), ArgumentError);
}

TEST(QcoreKraus, CompleteSetWeightsSumToOne) {
  std::mt19937_64 rng(3);
  const LinearOp m0(CMatrix(diag2(std::sqrt(0.6), 1.0)));
  const LinearOp m1(CMatrix(diag2(std::sqrt(0.4), 0.0)));
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = testing::random_density(3, rng);
    double total = 0.0;
    for (int s = 0; s < 8; ++s) {
      const auto op = tensor({(s & 4) ? m1 : m0, (s & 2) ? m1 : m0, (s & 1) ? m1 : m0});
      const auto out = apply_kraus(op, rho);
      total += out.weight;
      if (!out.vanished()) EXPECT_TRUE(check_validity(*out.state).ok());
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(QcoreConcurrence, ReferenceStates) {
  EXPECT_NEAR(concurrence(DensityOperator(testing::psi_plus())), 1.0, 1e-12);
  // rho rho~ = (4/9)|Psi+><Psi+| for this mixture, so C = 2/3.
  const CMatrix mix = testing::ket00() / 3.0 + (2.0 / 3.0) * testing::psi_plus();
  EXPECT_NEAR(concurrence(DensityOperator(mix)), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(concurrence(DensityOperator::maximally_mixed(2)), 0.0, 1e-12);
}

TEST(QcoreConcurrence, Errors) {
  EXPECT_THROW(concurrence(DensityOperator::maximally_mixed(3)), ArgumentError);
  CMatrix skew = testing::psi_plus();
  skew(0, 1) = 0.3;
  EXPECT_THROW(concurrence(DensityOperator(skew)), ArgumentError);
}

TEST(QcoreConcurrence, ProductStatesAreUnentangled) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_density(1, rng, 1 + trial % 2);
    const auto b = testing::random_density(1, rng, 1 + (trial / 2) % 2);
    EXPECT_LT(concurrence(DensityOperator(kron2(a.matrix(), b.matrix()))), 1e-9);
  }
}

TEST(QcoreConcurrence, LocalUnitaryInvariance) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = testing::random_density(2, rng, 1 + trial % 4);
    const CMatrix u = kron2(testing::random_unitary2(rng), testing::random_unitary2(rng));
    const DensityOperator rotated(u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(concurrence(rho), concurrence(rotated), 1e-9);
  }
}

// Independent route: sqrt of the eigenvalues of the non-Hermitian rho * rho~.
TEST(QcoreConcurrence, MatchesNonHermitianRoute) {
  std::mt19937_64 rng(13);
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = testing::random_density(2, rng, 1 + trial % 3);
    const CMatrix r = rho.matrix() * yy * rho.matrix().conjugate() * yy;
    Eigen::ComplexEigenSolver<CMatrix> solver(r);
    std::vector<double> l;
    for (int k = 0; k < 4; ++k) l.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(k).real())));
    std::sort(l.rbegin(), l.rend());
    EXPECT_NEAR(concurrence(rho), std::max(0.0, l[0] - l[1] - l[2] - l[3]), 1e-7);
  }
}

TEST(QcoreFidelity, Basics) {
  std::mt19937_64 rng(17);
  const auto rho = testing::random_density(2, rng);
  const auto sigma = testing::random_density(2, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(rho, sigma), fidelity(sigma, rho), 1e-10);
  EXPECT_LT(fidelity(rho, sigma), 1.0);
  const auto zero = DensityOperator::from_ket(Ket::from_bits("0"));
  const auto one = DensityOperator::from_ket(Ket::from_bits("1"));
  EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
  EXPECT_THROW(fidelity(zero, rho), ArgumentError);
}

TEST(QcoreFidelity, PureAgainstMixed) {
  // For pure |psi>, F = <psi|sigma|psi>.
  std::mt19937_64 rng(19);
  const auto psi = Ket::normalized(testing::random_unitary(4, rng).col(0));
  const auto sigma = testing::random_density(2, rng);
  const double expected = (psi.amplitudes().adjoint() * sigma.matrix() * psi.amplitudes())(0, 0).real();
  EXPECT_NEAR(fidelity(DensityOperator::from_ket(psi), sigma), expected, 1e-9);
}

TEST(QcoreValidity, FlagsBadOperators) {
  EXPECT_TRUE(check_validity(DensityOperator::maximally_mixed(3)).ok());
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_FALSE(check_validity(DensityOperator(neg)).ok());
  CMatrix unnormalized = CMatrix::Identity(2, 2);
  EXPECT_FALSE(check_validity(DensityOperator(unnormalized)).ok());
  EXPECT_THROW(DensityOperator(CMatrix::Identity(2, 4)), ArgumentError);
}

TEST(QcoreLimits, ThirteenQubitsRejected) {
  EXPECT_THROW(DensityOperator::maximally_mixed(13), ArgumentError);
  EXPECT_NO_THROW(Ket::basis(12, 4095));
}

}  // namespace
}  // namespace redsim
