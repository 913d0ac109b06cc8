// Copyright 2026 the egn-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "egn/config.hpp"
#include "egn/errors.hpp"
#include "egn/jacobi.hpp"
#include "egn/matrix.hpp"
#include "egn/pauli.hpp"
#include "egn/rng.hpp"

namespace egn {

inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-9;

// An N-qubit density matrix. Construction validates hermiticity, unit trace
// and positive semidefiniteness (minimum eigenvalue >= -1e-9, computed with
// the in-repo Jacobi solver), so a constructed value is always a physical
// state within those tolerances.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix m) : n_(n_qubits), m_(std::move(m)) {
    check_qubit_guard(n_, "DensityMatrix");
    const std::size_t dim = 1ull << n_;
    if (m_.dim() != dim) {
      throw DimensionError("DensityMatrix: matrix dimension " +
                           std::to_string(m_.dim()) + " != 2^" +
                           std::to_string(n_));
    }
    const double herm = m_.hermiticity_deviation();
    if (herm > kHermTol) {
      throw InvalidStateError("DensityMatrix: hermiticity deviation " +
                              std::to_string(herm) + " exceeds 1e-10");
    }
    const cplx tr = m_.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > kTraceTol) {
      throw InvalidStateError("DensityMatrix: trace deviates from 1 by " +
                              std::to_string(std::abs(tr - cplx(1.0, 0.0))));
    }
    const auto eig = jacobi_eigenvalues(m_);
    if (eig.front() < kPsdTol) {
      throw InvalidStateError("DensityMatrix: minimum eigenvalue " +
                              std::to_string(eig.front()) + " below -1e-9");
    }
  }

  int n_qubits() const { return n_; }
  const Matrix& matrix() const { return m_; }

  // (|0...0> + |1...1>)(<0...0| + <1...1|) / 2, n_qubits >= 2.
  static DensityMatrix ghz(int n_qubits) {
    if (n_qubits < 2) {
      throw ArgumentError("ghz: n_qubits must be at least 2");
    }
    check_qubit_guard(n_qubits, "ghz");
    const std::size_t dim = 1ull << n_qubits;
    Matrix m(dim);
    m(0, 0) = 0.5;
    m(0, dim - 1) = 0.5;
    m(dim - 1, 0) = 0.5;
    m(dim - 1, dim - 1) = 0.5;
    return DensityMatrix(n_qubits, std::move(m));
  }

  static DensityMatrix maximally_mixed(int n_qubits) {
    check_qubit_guard(n_qubits, "maximally_mixed");
    const std::size_t dim = 1ull << n_qubits;
    Matrix m = Matrix::identity(dim);
    m *= cplx(1.0 / static_cast<double>(dim), 0.0);
    return DensityMatrix(n_qubits, std::move(m));
  }

  // G G^dagger / tr(G G^dagger) for a seeded complex Gaussian G: a full-rank
  // state drawn deterministically from the seed.
  static DensityMatrix random(int n_qubits, std::uint64_t seed) {
    check_qubit_guard(n_qubits, "random state");
    const std::size_t dim = 1ull << n_qubits;
    Rng rng(seed);
    Matrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        g(i, j) = cplx(rng.normal(), rng.normal());
    Matrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= cplx(1.0 / tr, 0.0);
    return DensityMatrix(n_qubits, std::move(rho));
  }

 private:
  int n_;
  Matrix m_;
};

// tr(rho P_alpha), evaluated through the signed-permutation form of the
// string in O(2^N). The result must be real for a Hermitian input; an
// imaginary residue above 1e-10 reports an invalid state.
inline double correlation(const DensityMatrix& rho, const PauliString& alpha) {
  if (alpha.n_qubits() != rho.n_qubits()) {
    throw DimensionError("correlation: string acts on " +
                         std::to_string(alpha.n_qubits()) +
                         " qubits, state has " +
                         std::to_string(rho.n_qubits()));
  }
  const PauliAction act = action_of(alpha);
  const std::size_t dim = 1ull << rho.n_qubits();
  cplx t = 0.0;
  for (std::uint64_t j = 0; j < dim; ++j) {
    t += act.coefficient(j) * rho.matrix()(j, act.map(j));
  }
  if (std::abs(t.imag()) > 1e-10) {
    throw InvalidStateError("correlation: imaginary part " +
                            std::to_string(t.imag()) + " exceeds 1e-10");
  }
  return t.real();
}

// A (possibly partial) set of Pauli correlations T_alpha. The all-zero
// entry is always present with value 1 and every stored value lies in
// [-1, 1] up to 1e-9.
class CorrelationTensor {
 public:
  CorrelationTensor(int n_qubits, std::map<PauliString, double> entries)
      : n_(n_qubits), entries_(std::move(entries)) {
    check_qubit_guard(n_, "CorrelationTensor");
    for (const auto& [key, value] : entries_) {
      if (key.n_qubits() != n_) {
        throw DimensionError("CorrelationTensor: entry " + key.to_string() +
                             " acts on " + std::to_string(key.n_qubits()) +
                             " qubits, expected " + std::to_string(n_));
      }
      if (std::abs(value) > 1.0 + 1e-9) {
        throw ArgumentError("CorrelationTensor: |T_" + key.to_string() +
                            "| = " + std::to_string(std::abs(value)) +
                            " exceeds 1");
      }
    }
    const PauliString zero = PauliString::identity(n_);
    auto it = entries_.find(zero);
    if (it == entries_.end()) {
      entries_.emplace(zero, 1.0);
    } else if (std::abs(it->second - 1.0) > 1e-9) {
      throw ArgumentError(
          "CorrelationTensor: the all-zero entry must equal 1, got " +
          std::to_string(it->second));
    }
  }

  int n_qubits() const { return n_; }
  const std::map<PauliString, double>& entries() const { return entries_; }

  // Missing entries read as zero.
  double value(const PauliString& alpha) const {
    auto it = entries_.find(alpha);
    return it == entries_.end() ? 0.0 : it->second;
  }

 private:
  int n_;
  std::map<PauliString, double> entries_;
};

// The complete tensor over all 4^N strings. O(8^N); intended for small N.
inline CorrelationTensor to_bloch(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  std::map<PauliString, double> entries;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    PauliString alpha(idx);
    entries.emplace(alpha, correlation(rho, alpha));
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == 3) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
  }
  return CorrelationTensor(n, std::move(entries));
}

// 2^{-N} sum_alpha T_alpha P_alpha. Hermiticity and unit trace hold by
// construction; positivity is checked and failure throws
// UnphysicalTensorError carrying the minimum eigenvalue.
inline DensityMatrix from_bloch(const CorrelationTensor& t) {
  const int n = t.n_qubits();
  const std::size_t dim = 1ull << n;
  Matrix m(dim);
  static constexpr cplx phase_table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [alpha, value] : t.entries()) {
    if (value == 0.0) continue;
    const PauliAction act = action_of(alpha);
    for (std::uint64_t j = 0; j < dim; ++j) {
      m(act.map(j), j) += value * phase_table[act.exponent(j)];
    }
  }
  m *= cplx(1.0 / static_cast<double>(dim), 0.0);

  const auto eig = jacobi_eigenvalues(m);
  if (eig.front() < kPsdTol) {
    throw UnphysicalTensorError(
        "from_bloch: tensor is not realizable, minimum eigenvalue " +
            std::to_string(eig.front()),
        eig.front());
  }
  return DensityMatrix(n, std::move(m));
}

// U rho U^dagger for U = factors[0] (x) ... (x) factors[N-1]. Each factor
// must be a 2x2 unitary within 1e-10.
inline DensityMatrix apply_local_unitary(const DensityMatrix& rho,
                                         const std::vector<Matrix>& factors) {
  const int n = rho.n_qubits();
  if (static_cast<int>(factors.size()) != n) {
    throw DimensionError("apply_local_unitary: " +
                         std::to_string(factors.size()) +
                         " factors for " + std::to_string(n) + " qubits");
  }
  for (const auto& f : factors) {
    if (f.dim() != 2) {
      throw ArgumentError("apply_local_unitary: factors must be 2x2");
    }
    const Matrix gram = f * f.adjoint();
    if (gram.max_abs_diff(Matrix::identity(2)) > 1e-10) {
      throw ArgumentError(
          "apply_local_unitary: factor is not unitary within 1e-10");
    }
  }
  Matrix u = Matrix::identity(1);
  for (const auto& f : factors) u = kron(u, f);
  Matrix out = u * rho.matrix() * u.adjoint();
  return DensityMatrix(n, std::move(out));
}

}  // namespace egn
