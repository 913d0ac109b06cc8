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
#include <vector>

#include "egn/oracles.hpp"
#include "egn/separability.hpp"

TEST_CASE("simplex feasibility on hand-checked systems", "[oracles]") {
  // x = 1 with x >= 0.
  std::vector<double> sol;
  REQUIRE(egn::simplex_feasible({1.0}, 1, 1, {1.0}, 1e-10, &sol));
  REQUIRE(sol.size() == 1);
  REQUIRE(std::abs(sol[0] - 1.0) < 1e-10);

  // x = 1 and x = 2 conflict.
  REQUIRE_FALSE(egn::simplex_feasible({1.0, 1.0}, 2, 1, {1.0, 2.0}, 1e-10));

  // x - y = 0, x + y = 2 has the unique solution x = y = 1.
  REQUIRE(egn::simplex_feasible({1.0, -1.0, 1.0, 1.0}, 2, 2, {0.0, 2.0},
                                1e-10, &sol));
  REQUIRE(sol.size() == 2);
  REQUIRE(std::abs(sol[0] - 1.0) < 1e-10);
  REQUIRE(std::abs(sol[1] - 1.0) < 1e-10);

  // x + y = -1 with nonnegative variables is infeasible even after the
  // row-sign normalization.
  REQUIRE_FALSE(egn::simplex_feasible({1.0, 1.0}, 1, 2, {-1.0}, 1e-10));

  REQUIRE_THROWS_AS(egn::simplex_feasible({1.0}, 1, 2, {1.0}, 1e-10),
                    egn::ArgumentError);
  REQUIRE_THROWS_AS(egn::simplex_feasible({1.0}, 0, 1, {}, 1e-10),
                    egn::ArgumentError);
}

TEST_CASE("eigen oracle guards its domain", "[oracles]") {
  REQUIRE_THROWS_AS(egn::eigen_oracle(egn::Matrix()), egn::ArgumentError);
  REQUIRE_THROWS_AS(egn::eigen_oracle(egn::Matrix(256)), egn::ArgumentError);
  egn::Matrix skew(2);
  skew(0, 1) = 1.0;
  REQUIRE_THROWS_AS(egn::eigen_oracle(skew), egn::ArgumentError);

  egn::Matrix h(2);
  h(0, 0) = 2.0;
  h(0, 1) = 1.0;
  h(1, 0) = 1.0;
  h(1, 1) = 2.0;
  const auto eig = egn::eigen_oracle(h);
  REQUIRE(std::abs(eig[0] - 1.0) < 1e-12);
  REQUIRE(std::abs(eig[1] - 3.0) < 1e-12);
}

TEST_CASE("trace-readout projection matches the group average", "[oracles]") {
  for (int n = 2; n <= 4; ++n) {
    const egn::EnipSpec spec = egn::standard_egn_spec(n);
    const egn::DensityMatrix rho =
        egn::DensityMatrix::random(n, static_cast<std::uint64_t>(60 + n));
    const egn::DensityMatrix avg = egn::project_group_average(rho, spec);
    const egn::DensityMatrix orc =
        egn::dense_projection_oracle(rho, spec.surviving);
    REQUIRE(avg.matrix().max_abs_diff(orc.matrix()) < 1e-12);
  }
  const egn::DensityMatrix rho = egn::DensityMatrix::maximally_mixed(2);
  REQUIRE_THROWS_AS(
      egn::dense_projection_oracle(rho, {egn::PauliString::identity(3)}),
      egn::DimensionError);
}

TEST_CASE("lp robustness reproduces the closed form", "[oracles]") {
  const egn::OracleConfig cfg;
  // Vertex triple: the formula gives exactly one.
  const egn::EgnTriple vertex(1.0, -1.0, 1.0, 3);
  REQUIRE(std::abs(egn::robustness_lp_oracle(vertex, 3, cfg) - 1.0) < 2e-9);

  // Trivial regime short-circuits to zero.
  REQUIRE(egn::robustness_lp_oracle(vertex, 2, cfg) == 0.0);

  egn::Rng rng(23);
  for (int n : {3, 5, 7}) {
    for (int k = 0; k < 12; ++k) {
      const egn::EgnTriple t = egn::random_physical_triple(n, rng);
      for (int m = n / 2 + 2; m <= n; ++m) {
        const double formula = egn::robustness(t, m);
        const double lp = egn::robustness_lp_oracle(t, m, cfg);
        CAPTURE(n, k, m, t.d1, t.d2, t.d3);
        REQUIRE(std::abs(formula - lp) < 1e-6);
      }
    }
  }
}

TEST_CASE("lp robustness certificate decomposes the triple", "[oracles]") {
  const egn::OracleConfig cfg;
  egn::Rng rng(29);
  int certified = 0;
  for (int k = 0; k < 40 && certified < 8; ++k) {
    const egn::EgnTriple t = egn::random_physical_triple(3, rng);
    if (egn::height(t) < 1e-3) continue;
    ++certified;
    egn::RobustnessCertificate cert;
    const double s = egn::robustness_lp_oracle(t, 3, cfg, &cert);
    REQUIRE(cert.extracted);
    REQUIRE(std::abs(cert.s - s) < 1e-15);
    const auto& x = cert.separable_point;
    const auto& e = cert.mixing_point;
    REQUIRE(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) <= 1.0 + 1e-6);
    // Odd count: the mixing point lies in the physical tetrahedron, on the
    // facet opposite the corner carrying the triple.
    REQUIRE(egn::region_contains(egn::RegionLabel::TetraMinus, e, 1e-6));
    REQUIRE(std::abs(e[0] + e[1] + e[2] - 1.0) < 1e-6);
    for (int c = 0; c < 3; ++c) {
      const double lhs = (1.0 + s) * x[static_cast<std::size_t>(c)] -
                         s * e[static_cast<std::size_t>(c)];
      const double want =
          t.coords()[static_cast<std::size_t>(c)];
      REQUIRE(std::abs(lhs - want) < 1e-6);
    }
  }
  REQUIRE(certified == 8);
}

TEST_CASE("even-count certificate uses the distance reformulation",
          "[oracles]") {
  const egn::OracleConfig cfg;
  const double r = 1.0 / std::sqrt(2.0);
  const egn::EgnTriple t(r, r, 0.0, 4);
  egn::RobustnessCertificate cert;
  const double s = egn::robustness_lp_oracle(t, 4, cfg, &cert);
  REQUIRE(std::abs(s - (3.0 - 2.0 * std::sqrt(2.0))) < 2e-9);
  REQUIRE(cert.extracted);
  const auto& x = cert.separable_point;
  const auto& e = cert.mixing_point;
  REQUIRE(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) <= 1.0 + 1e-9);
  // Even count: the mixing point lies in the unit ball.
  REQUIRE(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] <= 1.0 + 1e-6);
  for (int c = 0; c < 3; ++c) {
    const double lhs = (1.0 + s) * x[static_cast<std::size_t>(c)] -
                       s * e[static_cast<std::size_t>(c)];
    REQUIRE(std::abs(lhs - t.coords()[static_cast<std::size_t>(c)]) < 1e-9);
  }
}

TEST_CASE("lp robustness validates its arguments", "[oracles]") {
  const egn::OracleConfig cfg;
  const egn::EgnTriple t(0.0, 0.0, 1.0, 3);
  REQUIRE_THROWS_AS(egn::robustness_lp_oracle(t, 1, cfg), egn::ArgumentError);
  REQUIRE_THROWS_AS(
      egn::robustness_lp_oracle(egn::EgnTriple(1.0, 1.0, 1.0, 3), 3, cfg),
      egn::DomainError);
  // Even counts are in scope through the distance reformulation.
  REQUIRE(egn::robustness_lp_oracle(egn::EgnTriple(0.1, 0.1, 0.1, 4), 4,
                                    cfg) == 0.0);
}

TEST_CASE("grid distance oracle matches the closed form", "[oracles]") {
  const egn::OracleConfig cfg;
  REQUIRE(std::abs(egn::grid_distance_oracle({1.0, 1.0, 1.0}, cfg) -
                   2.0 / std::sqrt(3.0)) < 1e-6);
  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(std::abs(egn::grid_distance_oracle({r, r, 0.0}, cfg) - (1.0 - r)) <
          1e-6);
  REQUIRE(egn::grid_distance_oracle({0.2, -0.1, 0.3}, cfg) == 0.0);

  egn::Rng rng(31);
  for (int k = 0; k < 25; ++k) {
    const std::array<double, 3> p{rng.uniform(-1.5, 1.5),
                                  rng.uniform(-1.5, 1.5),
                                  rng.uniform(-1.5, 1.5)};
    REQUIRE(std::abs(egn::grid_distance_oracle(p, cfg) -
                     egn::distance_to_octahedron(p)) < 1e-6);
  }
}

TEST_CASE("self check passes in quick mode", "[oracles]") {
  const egn::SelfCheckReport report = egn::self_check(1, true);
  REQUIRE(report.checks.size() == 5);
  REQUIRE(report.checks[0].name == "projection_agreement");
  REQUIRE(report.checks[1].name == "robustness_formula_vs_lp");
  REQUIRE(report.checks[2].name == "eigenvalues_formula_vs_jacobi");
  REQUIRE(report.checks[3].name == "distance_closed_vs_grid");
  REQUIRE(report.checks[4].name == "lp_monotonicity");
  for (const auto& c : report.checks) {
    CAPTURE(c.name, c.max_deviation, c.tolerance);
    REQUIRE(c.pass);
    REQUIRE(c.max_deviation <= c.tolerance);
  }
  REQUIRE(report.all_pass());
}
