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
#include <numbers>
#include <vector>

#include "egn/optimize.hpp"

namespace {

double abs_sum(const egn::EgnTriple& t) {
  return std::abs(t.d1) + std::abs(t.d2) + std::abs(t.d3);
}

bool unitary_within(const egn::Matrix& u, double tol) {
  const egn::Matrix p = u * u.adjoint();
  return p.max_abs_diff(egn::Matrix::identity(u.dim())) < tol;
}

}  // namespace

TEST_CASE("su2 reference points", "[optimize]") {
  const egn::Matrix id = egn::su2(0.0, 0.0, 0.0);
  REQUIRE(id.max_abs_diff(egn::Matrix::identity(2)) < 1e-15);

  // Full x rotation: -i sigma1.
  const egn::Matrix x = egn::su2(std::numbers::pi, 0.0, 0.0);
  REQUIRE(std::abs(x(0, 0)) < 1e-15);
  REQUIRE(std::abs(x(0, 1) - egn::cplx(0.0, -1.0)) < 1e-15);
  REQUIRE(std::abs(x(1, 0) - egn::cplx(0.0, -1.0)) < 1e-15);

  egn::Rng rng(14);
  for (int k = 0; k < 10; ++k) {
    const egn::Matrix u = egn::su2(rng.uniform(0.0, 2.0 * std::numbers::pi),
                                   rng.uniform(0.0, 2.0 * std::numbers::pi),
                                   rng.uniform(0.0, 2.0 * std::numbers::pi));
    REQUIRE(unitary_within(u, 1e-14));
    const egn::cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    REQUIRE(std::abs(det - egn::cplx(1.0, 0.0)) < 1e-13);
  }
}

TEST_CASE("so3_of carries su2 into a rotation", "[optimize]") {
  egn::Rng rng(15);
  for (int k = 0; k < 5; ++k) {
    const egn::Matrix u = egn::su2(rng.uniform(0.0, 2.0 * std::numbers::pi),
                                   rng.uniform(0.0, 2.0 * std::numbers::pi),
                                   rng.uniform(0.0, 2.0 * std::numbers::pi));
    const auto r = egn::detail::so3_of(u);
    // R_ab = tr(sigma_a U sigma_b U^dag) / 2 is orthogonal with unit
    // determinant.
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double dot = 0.0;
        for (int c = 0; c < 3; ++c)
          dot += r[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] *
                 r[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        REQUIRE(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
    const double det =
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
        r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
        r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    REQUIRE(std::abs(det - 1.0) < 1e-12);
  }
}

TEST_CASE("canonicalized parameters leave the unitary unchanged",
          "[optimize]") {
  egn::Rng rng(16);
  for (int k = 0; k < 20; ++k) {
    const egn::AngleTriple a{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0),
                             rng.uniform(-10.0, 10.0)};
    const auto p = egn::LocalUnitaryParams::shared(a);
    const auto c = p.canonicalized();
    REQUIRE(c.angles.front().theta >= 0.0);
    REQUIRE(c.angles.front().theta <= std::numbers::pi);
    REQUIRE(c.angles.front().psi >= 0.0);
    REQUIRE(c.angles.front().psi < 2.0 * std::numbers::pi);
    // The 2 pi wraps may flip the global sign; the adjoint action and hence
    // the rotation are untouched.
    const egn::Matrix uc = egn::su2(c.angles.front());
    const egn::Matrix ua = egn::su2(a);
    egn::Matrix negated = ua;
    negated *= -1.0;
    const double diff =
        std::min(uc.max_abs_diff(ua), uc.max_abs_diff(negated));
    REQUIRE(diff < 1e-12);
    const auto ra = egn::detail::so3_of(ua);
    const auto rc = egn::detail::so3_of(uc);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        REQUIRE(std::abs(ra[i][j] - rc[i][j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("contracted and dense rotated triples agree", "[optimize]") {
  egn::Rng rng(17);
  for (int n = 2; n <= 4; ++n) {
    const egn::DensityMatrix rho =
        egn::DensityMatrix::random(n, static_cast<std::uint64_t>(40 + n));
    for (int k = 0; k < 5; ++k) {
      const egn::AngleTriple a{rng.uniform(0.0, 2.0 * std::numbers::pi),
                               rng.uniform(0.0, 2.0 * std::numbers::pi),
                               rng.uniform(0.0, 2.0 * std::numbers::pi)};
      const auto p = egn::LocalUnitaryParams::shared(a);
      const egn::EgnTriple fast = egn::rotated_triple(rho, p);
      const egn::EgnTriple dense = egn::rotated_triple_dense(rho, p);
      CAPTURE(n, k);
      REQUIRE(std::abs(fast.d1 - dense.d1) < 1e-12);
      REQUIRE(std::abs(fast.d2 - dense.d2) < 1e-12);
      REQUIRE(std::abs(fast.d3 - dense.d3) < 1e-12);
    }
    // Per-qubit parameters take the same two routes.
    std::vector<egn::AngleTriple> angles;
    for (int q = 0; q < n; ++q)
      angles.push_back({rng.uniform(0.0, 6.0), rng.uniform(0.0, 6.0),
                        rng.uniform(0.0, 6.0)});
    const auto pq = egn::LocalUnitaryParams::per_qubit(angles);
    const egn::EgnTriple fast = egn::rotated_triple(rho, pq);
    const egn::EgnTriple dense = egn::rotated_triple_dense(rho, pq);
    REQUIRE(std::abs(fast.d1 - dense.d1) < 1e-12);
    REQUIRE(std::abs(fast.d2 - dense.d2) < 1e-12);
    REQUIRE(std::abs(fast.d3 - dense.d3) < 1e-12);
  }
}

TEST_CASE("identity parameters reproduce the plain triple", "[optimize]") {
  const egn::DensityMatrix rho = egn::DensityMatrix::ghz(3);
  const egn::EgnTriple plain = egn::triple_of(rho);
  const egn::EgnTriple rotated =
      egn::rotated_triple(rho, egn::LocalUnitaryParams{});
  REQUIRE(std::abs(plain.d1 - rotated.d1) < 1e-14);
  REQUIRE(std::abs(plain.d2 - rotated.d2) < 1e-14);
  REQUIRE(std::abs(plain.d3 - rotated.d3) < 1e-14);
}

TEST_CASE("tabulated ghz angles reach the tabulated triples", "[optimize]") {
  const double r = 1.0 / std::sqrt(2.0);
  struct Row {
    int n;
    double d1, d2, d3;
  };
  const Row rows[] = {{3, 1.0, -1.0, 1.0},
                      {4, r, r, 0.0},
                      {5, 1.0, 1.0, 1.0},
                      {6, r, -r, 0.0},
                      {7, 1.0, -1.0, 1.0}};
  for (const Row& row : rows) {
    const auto angles = egn::ghz_optimal_angles(row.n);
    REQUIRE(angles.has_value());
    const egn::EgnTriple t =
        egn::rotated_triple(egn::DensityMatrix::ghz(row.n),
                            egn::LocalUnitaryParams::shared(*angles));
    CAPTURE(row.n);
    REQUIRE(std::abs(t.d1 - row.d1) < 1e-9);
    REQUIRE(std::abs(t.d2 - row.d2) < 1e-9);
    REQUIRE(std::abs(t.d3 - row.d3) < 1e-9);
  }
  REQUIRE_FALSE(egn::ghz_optimal_angles(8).has_value());
}

TEST_CASE("nelder-mead climbs a smooth peak", "[optimize]") {
  auto f = [](const std::vector<double>& x) {
    const double a = x[0] - 1.0;
    const double b = x[1] + 2.0;
    return -(a * a) - (b * b);
  };
  const auto r = egn::nelder_mead_maximize(f, {0.0, 0.0}, 0.5, 500, 1e-12);
  REQUIRE(std::abs(r.x[0] - 1.0) < 1e-5);
  REQUIRE(std::abs(r.x[1] + 2.0) < 1e-5);
  REQUIRE(r.value > -1e-9);

  const auto rr = egn::nelder_mead_restarted(f, {0.0, 0.0}, 0.5, 500, 1e-12);
  REQUIRE(rr.value >= r.value - 1e-15);
  REQUIRE_THROWS_AS(egn::nelder_mead_maximize(f, {}, 0.5, 10, 1e-12),
                    egn::ArgumentError);
}

TEST_CASE("optimizer recovers the ghz3 objective", "[optimize]") {
  egn::OptimizeConfig cfg;
  cfg.grid_points = 12;
  const egn::BoundReport report =
      egn::optimize(egn::DensityMatrix::ghz(3), cfg);
  REQUIRE(report.abs_sum > 3.0 - 1e-8);
  REQUIRE(std::abs(abs_sum(report.triple) - report.abs_sum) < 1e-12);
  // The odd-count invariant ties the sum to the height.
  REQUIRE(std::abs(report.abs_sum - (2.0 * egn::height(report.triple) + 1.0)) <
          1e-12);
  REQUIRE(report.per_m.size() == 2);
  REQUIRE(report.per_m.count(2) == 1);
  REQUIRE(report.per_m.count(3) == 1);
  REQUIRE(report.per_m.at(3).robustness ==
          egn::robustness(report.triple, 3));
  REQUIRE(report.per_m.at(2).robustness == 0.0);
  REQUIRE(report.params.symmetric);
}

TEST_CASE("optimizer is deterministic", "[optimize]") {
  egn::OptimizeConfig cfg;
  cfg.grid_points = 8;
  const egn::DensityMatrix rho = egn::DensityMatrix::random(3, 55);
  const egn::BoundReport a = egn::optimize(rho, cfg);
  const egn::BoundReport b = egn::optimize(rho, cfg);
  REQUIRE(a.abs_sum == b.abs_sum);
  REQUIRE(a.params.angles.front().theta == b.params.angles.front().theta);
  REQUIRE(a.params.angles.front().psi == b.params.angles.front().psi);
  REQUIRE(a.params.angles.front().phi == b.params.angles.front().phi);
}

TEST_CASE("optimizer respects the maximally mixed fixed point", "[optimize]") {
  egn::OptimizeConfig cfg;
  cfg.grid_points = 6;
  const egn::BoundReport report =
      egn::optimize(egn::DensityMatrix::maximally_mixed(3), cfg);
  REQUIRE(report.abs_sum < 1e-9);
  REQUIRE(report.per_m.at(3).robustness == 0.0);
}

TEST_CASE("per-qubit stage never loses to the symmetric stage", "[optimize]") {
  egn::OptimizeConfig sym;
  sym.grid_points = 8;
  egn::OptimizeConfig pq = sym;
  pq.per_qubit_stage = true;
  const egn::DensityMatrix rho = egn::DensityMatrix::random(3, 77);
  const egn::BoundReport a = egn::optimize(rho, sym);
  const egn::BoundReport b = egn::optimize(rho, pq);
  REQUIRE(b.abs_sum >= a.abs_sum - 1e-12);
  if (!b.params.symmetric) REQUIRE(b.params.angles.size() == 3);
}

TEST_CASE("optimizer validates its configuration", "[optimize]") {
  const egn::DensityMatrix rho = egn::DensityMatrix::maximally_mixed(2);
  egn::OptimizeConfig bad;
  bad.grid_points = 1;
  REQUIRE_THROWS_AS(egn::optimize(rho, bad), egn::ArgumentError);
  egn::OptimizeConfig bad_k;
  bad_k.top_k = 0;
  REQUIRE_THROWS_AS(egn::optimize(rho, bad_k), egn::ArgumentError);
}
