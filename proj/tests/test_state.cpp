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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "egn/jacobi.hpp"
#include "egn/state.hpp"
#include "support/naive.hpp"

TEST_CASE("ghz state has the textbook matrix", "[state]") {
  const egn::DensityMatrix rho = egn::DensityMatrix::ghz(3);
  REQUIRE(rho.n_qubits() == 3);
  const egn::Matrix& m = rho.matrix();
  REQUIRE(std::abs(m(0, 0) - egn::cplx(0.5, 0.0)) < 1e-15);
  REQUIRE(std::abs(m(0, 7) - egn::cplx(0.5, 0.0)) < 1e-15);
  REQUIRE(std::abs(m(7, 0) - egn::cplx(0.5, 0.0)) < 1e-15);
  REQUIRE(std::abs(m(7, 7) - egn::cplx(0.5, 0.0)) < 1e-15);
  REQUIRE(std::abs(m.trace() - egn::cplx(1.0, 0.0)) < 1e-15);
  // Purity one: the state is pure.
  REQUIRE(std::abs((m * m).trace() - egn::cplx(1.0, 0.0)) < 1e-14);
  REQUIRE_THROWS_AS(egn::DensityMatrix::ghz(1), egn::ArgumentError);
}

TEST_CASE("maximally mixed state is the scaled identity", "[state]") {
  const egn::DensityMatrix rho = egn::DensityMatrix::maximally_mixed(3);
  REQUIRE(rho.matrix().max_abs_diff(egn::Matrix::identity(8) *
                                    egn::cplx(0.125, 0.0)) < 1e-15);
}

TEST_CASE("random states are reproducible and physical", "[state]") {
  const egn::DensityMatrix a = egn::DensityMatrix::random(3, 99);
  const egn::DensityMatrix b = egn::DensityMatrix::random(3, 99);
  REQUIRE(a.matrix().max_abs_diff(b.matrix()) == 0.0);
  const egn::DensityMatrix c = egn::DensityMatrix::random(3, 100);
  REQUIRE(a.matrix().max_abs_diff(c.matrix()) > 1e-3);
  const auto eig = egn::jacobi_eigenvalues(a.matrix());
  REQUIRE(eig.front() > 0.0);
}

TEST_CASE("density matrix invariants are enforced", "[state]") {
  REQUIRE_THROWS_AS(egn::DensityMatrix(2, egn::Matrix::identity(8)),
                    egn::DimensionError);

  egn::Matrix wrong_trace = egn::Matrix::identity(4);
  REQUIRE_THROWS_AS(egn::DensityMatrix(2, wrong_trace),
                    egn::InvalidStateError);

  egn::Matrix non_hermitian(4);
  non_hermitian(0, 0) = 1.0;
  non_hermitian(0, 1) = 0.5;
  REQUIRE_THROWS_AS(egn::DensityMatrix(2, non_hermitian),
                    egn::InvalidStateError);

  egn::Matrix negative(4);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  REQUIRE_THROWS_AS(egn::DensityMatrix(2, negative), egn::InvalidStateError);
}

TEST_CASE("correlation equals the naive trace", "[state]") {
  egn::Rng rng(21);
  const egn::DensityMatrix rho = egn::DensityMatrix::random(3, 17);
  const naive::Mat dense = naive::from_egn(rho.matrix());
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> sites(3);
    for (auto& v : sites) v = static_cast<int>(rng.uniform_int(4));
    const egn::PauliString alpha(sites);
    const double got = egn::correlation(rho, alpha);
    const double want =
        naive::trace(naive::mul(dense, naive::string_matrix(sites))).real();
    REQUIRE(std::abs(got - want) < 1e-12);
  }
  REQUIRE(egn::correlation(rho, egn::PauliString::identity(3)) ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE_THROWS_AS(egn::correlation(rho, egn::PauliString::identity(2)),
                    egn::DimensionError);
}

TEST_CASE("correlation flags an imaginary readout", "[state]") {
  // I/16 + i eps P passes the constructor tolerances but tr(rho P) has an
  // imaginary part of 16 eps, well above the readout tolerance.
  const double eps = 0.4e-10;
  const egn::PauliString p(std::vector<int>{1, 1, 1, 1});
  egn::Matrix m = egn::Matrix::identity(16) * egn::cplx(1.0 / 16.0, 0.0);
  m += egn::dense_matrix(p) * egn::cplx(0.0, eps);
  const egn::DensityMatrix rho(4, std::move(m));
  REQUIRE_THROWS_AS(egn::correlation(rho, p), egn::InvalidStateError);
}

TEST_CASE("correlation tensor validates its entries", "[state]") {
  const egn::PauliString zzi(std::vector<int>{3, 3, 0});
  std::map<egn::PauliString, double> entries{{zzi, 1.0}};
  const egn::CorrelationTensor t(3, std::move(entries));
  // The all-zero entry is implied with value one.
  REQUIRE(t.value(egn::PauliString::identity(3)) == 1.0);
  REQUIRE(t.value(zzi) == 1.0);
  REQUIRE(t.value(egn::PauliString(std::vector<int>{1, 1, 1})) == 0.0);
  REQUIRE(t.entries().size() == 2);

  std::map<egn::PauliString, double> big{{zzi, 1.5}};
  REQUIRE_THROWS_AS(egn::CorrelationTensor(3, std::move(big)),
                    egn::ArgumentError);

  std::map<egn::PauliString, double> bad_id{
      {egn::PauliString::identity(3), 0.5}};
  REQUIRE_THROWS_AS(egn::CorrelationTensor(3, std::move(bad_id)),
                    egn::ArgumentError);

  std::map<egn::PauliString, double> wrong_n{
      {egn::PauliString::identity(2), 1.0}};
  REQUIRE_THROWS_AS(egn::CorrelationTensor(3, std::move(wrong_n)),
                    egn::DimensionError);
}

TEST_CASE("to_bloch and from_bloch are mutually inverse", "[state]") {
  for (int n = 2; n <= 3; ++n) {
    const egn::DensityMatrix rho =
        egn::DensityMatrix::random(n, static_cast<std::uint64_t>(n));
    const egn::CorrelationTensor t = egn::to_bloch(rho);
    REQUIRE(static_cast<int>(t.entries().size()) == 1 << (2 * n));
    const egn::DensityMatrix back = egn::from_bloch(t);
    REQUIRE(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
  }
}

TEST_CASE("from_bloch rejects unphysical tensors", "[state]") {
  // T_11 = T_22 = T_33 = 1 on two qubits reconstructs a matrix with an
  // eigenvalue of -1/2.
  std::map<egn::PauliString, double> entries{
      {egn::PauliString(std::vector<int>{1, 1}), 1.0},
      {egn::PauliString(std::vector<int>{2, 2}), 1.0},
      {egn::PauliString(std::vector<int>{3, 3}), 1.0}};
  const egn::CorrelationTensor t(2, std::move(entries));
  try {
    egn::from_bloch(t);
    FAIL("expected UnphysicalTensorError");
  } catch (const egn::UnphysicalTensorError& e) {
    REQUIRE(e.min_eigenvalue() < -1e-9);
    REQUIRE(std::abs(e.min_eigenvalue() - (-0.5)) < 1e-12);
  }
}

TEST_CASE("apply_local_unitary preserves the spectrum", "[state]") {
  const egn::DensityMatrix rho = egn::DensityMatrix::random(2, 31);
  // A Hadamard on each qubit.
  egn::Matrix h(2);
  const double r = 1.0 / std::sqrt(2.0);
  h(0, 0) = r;
  h(0, 1) = r;
  h(1, 0) = r;
  h(1, 1) = -r;
  const egn::DensityMatrix rotated =
      egn::apply_local_unitary(rho, {h, h});
  const auto before = egn::jacobi_eigenvalues(rho.matrix());
  const auto after = egn::jacobi_eigenvalues(rotated.matrix());
  for (std::size_t k = 0; k < before.size(); ++k)
    REQUIRE(std::abs(before[k] - after[k]) < 1e-10);

  REQUIRE_THROWS_AS(egn::apply_local_unitary(rho, {h}), egn::DimensionError);
  egn::Matrix shear = egn::Matrix::identity(2);
  shear(0, 1) = 1.0;
  REQUIRE_THROWS_AS(egn::apply_local_unitary(rho, {h, shear}),
                    egn::ArgumentError);
}
