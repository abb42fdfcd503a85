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

// Dense state-vector and density-matrix primitives for small qubit registers.
//
// Qubit indexing is big-endian: qubit 0 is the leftmost tensor factor, so in a
// register of n qubits, qubit q is bit (n - 1 - q) of a basis index.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "redsim/config.hpp"

namespace redsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace detail {

inline int qubits_for_dim(Eigen::Index dim) {
  require(dim >= 2 && std::has_single_bit(static_cast<std::uint64_t>(dim)),
          "dimension must be a power of two >= 2, got " + std::to_string(dim));
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
  require(n <= kMaxQubits, "at most " + std::to_string(kMaxQubits) +
                               " qubits are supported, got " + std::to_string(n));
  return n;
}

inline void require_qubit_count(int n) {
  require(n >= 1 && n <= kMaxQubits,
          "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "], got " +
              std::to_string(n));
}

// Bit mask of qubit q inside an n-qubit basis index.
constexpr std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

inline CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace detail

class Ket {
 public:
  // Takes the amplitudes as given; no normalization is applied.
  explicit Ket(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    qubits_ = detail::qubits_for_dim(amplitudes_.size());
  }

  static Ket normalized(CVector amplitudes) {
    const double norm = amplitudes.norm();
    detail::require(norm > 0.0, "cannot normalize a zero vector");
    return Ket(amplitudes / norm);
  }

  static Ket basis(int qubits, std::uint64_t index) {
    detail::require_qubit_count(qubits);
    const auto dim = Eigen::Index{1} << qubits;
    detail::require(index < static_cast<std::uint64_t>(dim), "basis index out of range");
    CVector v = CVector::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return Ket(std::move(v));
  }

  // Computational basis state from a bit string such as "0110".
  static Ket from_bits(std::string_view bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
      detail::require(c == '0' || c == '1', "bit string may only contain 0 and 1");
      index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return basis(static_cast<int>(bits.size()), index);
  }

  const CVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  int qubits() const { return qubits_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
  double norm() const { return amplitudes_.norm(); }

 private:
  CVector amplitudes_;
  int qubits_ = 0;
};

class DensityOperator {
 public:
  explicit DensityOperator(CMatrix entries) : entries_(std::move(entries)) {
    detail::require(entries_.rows() == entries_.cols(), "density operator must be square");
    qubits_ = detail::qubits_for_dim(entries_.rows());
  }

  static DensityOperator from_ket(const Ket& psi) {
    return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityOperator maximally_mixed(int qubits) {
    detail::require_qubit_count(qubits);
    const auto dim = Eigen::Index{1} << qubits;
    return DensityOperator(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  int qubits() const { return qubits_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }
  double trace() const { return entries_.trace().real(); }

  DensityOperator normalized() const {
    const double t = trace();
    detail::require(t > 0.0, "cannot normalize an operator with non-positive trace");
    return DensityOperator(entries_ / t);
  }

 private:
  CMatrix entries_;
  int qubits_ = 0;
};

class LinearOp {
 public:
  explicit LinearOp(CMatrix entries) : entries_(std::move(entries)) {
    detail::require(entries_.rows() > 0 && entries_.cols() > 0, "operator must be non-empty");
    detail::require(entries_.rows() <= (Eigen::Index{1} << kMaxQubits) &&
                        entries_.cols() <= (Eigen::Index{1} << kMaxQubits),
                    "operator exceeds the supported register size");
  }

  static LinearOp identity(int qubits) {
    detail::require_qubit_count(qubits);
    const auto dim = Eigen::Index{1} << qubits;
    return LinearOp(CMatrix::Identity(dim, dim));
  }

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index dim_in() const { return entries_.cols(); }
  Eigen::Index dim_out() const { return entries_.rows(); }
  bool square() const { return dim_in() == dim_out(); }
  LinearOp adjoint() const { return LinearOp(entries_.adjoint()); }

 private:
  CMatrix entries_;
};

inline Ket apply(const LinearOp& op, const Ket& psi) {
  detail::require(op.dim_in() == psi.dim() && op.square(), "operator/ket dimension mismatch");
  return Ket(op.matrix() * psi.amplitudes());
}

// ---------------------------------------------------------------------------
// Tensor products
// ---------------------------------------------------------------------------

namespace detail {

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

inline LinearOp tensor(std::span<const LinearOp> factors) {
  detail::require(!factors.empty(), "tensor product of an empty list");
  Eigen::Index rows = 1, cols = 1;
  for (const auto& f : factors) {
    rows *= f.dim_out();
    cols *= f.dim_in();
    detail::require(rows <= (Eigen::Index{1} << kMaxQubits) &&
                        cols <= (Eigen::Index{1} << kMaxQubits),
                    "tensor product exceeds the supported register size");
  }
  CMatrix acc = factors.front().matrix();
  for (const auto& f : factors.subspan(1)) acc = detail::kron(acc, f.matrix());
  return LinearOp(std::move(acc));
}

inline LinearOp tensor(std::initializer_list<LinearOp> factors) {
  return tensor(std::span<const LinearOp>(factors.begin(), factors.size()));
}

inline Ket tensor(std::span<const Ket> factors) {
  detail::require(!factors.empty(), "tensor product of an empty list");
  int qubits = 0;
  for (const auto& f : factors) qubits += f.qubits();
  detail::require(qubits <= kMaxQubits, "tensor product exceeds the supported register size");
  CMatrix acc = factors.front().amplitudes();
  for (const auto& f : factors.subspan(1)) acc = detail::kron(acc, f.amplitudes());
  return Ket(CVector(acc.col(0)));
}

inline Ket tensor(std::initializer_list<Ket> factors) {
  return tensor(std::span<const Ket>(factors.begin(), factors.size()));
}

// Dynamically typed factor list; every entry must hold the same alternative.
using TensorFactor = std::variant<LinearOp, Ket>;

inline TensorFactor tensor(std::span<const TensorFactor> factors) {
  detail::require(!factors.empty(), "tensor product of an empty list");
  const auto kind = factors.front().index();
  for (const auto& f : factors)
    detail::require(f.index() == kind, "tensor product of mixed operator and ket factors");
  if (kind == 0) {
    std::vector<LinearOp> ops;
    for (const auto& f : factors) ops.push_back(std::get<LinearOp>(f));
    return tensor(std::span<const LinearOp>(ops));
  }
  std::vector<Ket> kets;
  for (const auto& f : factors) kets.push_back(std::get<Ket>(f));
  return tensor(std::span<const Ket>(kets));
}

// ---------------------------------------------------------------------------
// Spectral helpers
// ---------------------------------------------------------------------------

// Ascending eigenvalues of the Hermitian part of m.
inline Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(detail::hermitian_part(m),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// Principal square root of a positive semidefinite matrix. Eigenvalues at
// round-off level (or slightly negative) are treated as exact zeros.
inline CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(detail::hermitian_part(m));
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(m.rows()) *
                       std::max(1.0, ev.cwiseAbs().maxCoeff());
  const Eigen::VectorXd roots = ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Validity
// ---------------------------------------------------------------------------

struct Validity {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger| entry
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity_error < kEpsHerm && trace_error < kEpsHerm && min_eigenvalue > -kEpsEig;
  }
};

inline double hermiticity_error(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Validity check_validity(const DensityOperator& rho) {
  Validity v;
  v.hermiticity_error = hermiticity_error(rho.matrix());
  v.trace_error = std::abs(rho.matrix().trace() - Complex(1.0, 0.0));
  v.min_eigenvalue = hermitian_eigenvalues(rho.matrix()).minCoeff();
  return v;
}

// ---------------------------------------------------------------------------
// Partial trace
// ---------------------------------------------------------------------------

// Reduced operator on the qubits in `keep` (in ascending qubit order).
inline DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const int n = rho.qubits();
  detail::require(!keep.empty(), "partial trace needs at least one kept qubit");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (std::size_t p = 0; p < kept.size(); ++p) {
    detail::require(kept[p] >= 0 && kept[p] < n,
                    "qubit index " + std::to_string(kept[p]) + " out of range");
    detail::require(p == 0 || kept[p] != kept[p - 1], "duplicate qubit index in keep set");
  }
  std::vector<int> traced;
  for (int q = 0, p = 0; q < n; ++q) {
    if (p < static_cast<int>(kept.size()) && kept[p] == q)
      ++p;
    else
      traced.push_back(q);
  }

  // Scatter tables: sub-register index -> full-register bit pattern.
  auto offsets = [n](const std::vector<int>& qubits) {
    const int k = static_cast<int>(qubits.size());
    std::vector<Eigen::Index> out(std::size_t{1} << k, 0);
    for (std::size_t a = 0; a < out.size(); ++a) {
      std::uint64_t full = 0;
      for (int p = 0; p < k; ++p)
        if (a & (std::uint64_t{1} << (k - 1 - p))) full |= detail::qubit_mask(n, qubits[p]);
      out[a] = static_cast<Eigen::Index>(full);
    }
    return out;
  };
  const auto keep_off = offsets(kept);
  const auto trace_off = offsets(traced);

  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  const CMatrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (auto t : trace_off) acc += m(keep_off[r] | t, keep_off[c] | t);
      out(r, c) = acc;
    }
  return DensityOperator(std::move(out));
}

inline DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

// Reduced operator after discarding the qubits in `lost`.
inline DensityOperator trace_out(const DensityOperator& rho, std::span<const int> lost) {
  std::vector<int> keep;
  for (int q = 0; q < rho.qubits(); ++q)
    if (std::find(lost.begin(), lost.end(), q) == lost.end()) keep.push_back(q);
  return partial_trace(rho, keep);
}

// ---------------------------------------------------------------------------
// Kraus application
// ---------------------------------------------------------------------------

// Below this trace a branch is reported as a zero-weight marker (no state).
inline constexpr double kZeroWeight = 1e-15;

struct KrausOutcome {
  double weight = 0.0;
  std::optional<DensityOperator> state;  // empty: zero-weight marker

  bool vanished() const { return !state.has_value(); }
};

inline KrausOutcome apply_kraus(const LinearOp& m, const DensityOperator& rho) {
  detail::require(m.square(), "Kraus operator must be square");
  detail::require(m.dim_in() == rho.dim(), "Kraus operator/state dimension mismatch");
  CMatrix out = m.matrix() * rho.matrix() * m.matrix().adjoint();
  KrausOutcome result;
  result.weight = std::max(0.0, out.trace().real());
  if (result.weight > kZeroWeight)
    result.state.emplace(detail::hermitian_part(out) / result.weight);
  return result;
}

// ---------------------------------------------------------------------------
// Entanglement and distance measures
// ---------------------------------------------------------------------------

// Wootters concurrence of a two-qubit state. The square roots of the
// eigenvalues of sqrt(rho) rho~ sqrt(rho) are the singular values of
// sqrt(rho) (Y x Y) conj(sqrt(rho)), which is how they are computed here.
inline double concurrence(const DensityOperator& rho) {
  detail::require(rho.dim() == 4, "concurrence is defined for two-qubit states only");
  detail::require(hermiticity_error(rho.matrix()) < kEpsHerm,
                  "concurrence requires a Hermitian operator");
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix root = psd_sqrt(rho.matrix());
  const CMatrix a = root * yy * root.conjugate();
  Eigen::VectorXd lambda = Eigen::JacobiSVD<CMatrix>(a).singularValues();
  std::sort(lambda.data(), lambda.data() + lambda.size(), std::greater<>());
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require(rho.dim() == sigma.dim(), "fidelity of operators with different dimensions");
  // Tr sqrt(...) is the nuclear norm of sqrt(sigma) sqrt(rho)
  const CMatrix product = psd_sqrt(sigma.matrix()) * psd_sqrt(rho.matrix());
  const double s = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Local gates on kets
// ---------------------------------------------------------------------------

inline Ket apply_local(const Ket& psi, int qubit, const Eigen::Matrix2cd& u) {
  const int n = psi.qubits();
  detail::require(qubit >= 0 && qubit < n, "qubit index out of range");
  const auto mask = detail::qubit_mask(n, qubit);
  CVector out = psi.amplitudes();
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    if (static_cast<std::uint64_t>(i) & mask) continue;
    const auto j = static_cast<Eigen::Index>(static_cast<std::uint64_t>(i) | mask);
    const Complex a0 = psi[i], a1 = psi[j];
    out(i) = u(0, 0) * a0 + u(0, 1) * a1;
    out(j) = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return Ket(std::move(out));
}

inline Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

}  // namespace redsim
