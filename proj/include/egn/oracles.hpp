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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "egn/enip.hpp"
#include "egn/errors.hpp"
#include "egn/geometry.hpp"
#include "egn/jacobi.hpp"
#include "egn/separability.hpp"
#include "egn/state.hpp"

namespace egn {

struct OracleConfig {
  double bisection_tol = 1e-9;
  double lp_tol = 1e-10;
  int grid_resolution = 400;
};

// Projection by trace readout: read the correlation of every declared
// surviving string and rebuild the state from those entries alone. Shares
// no code with the conjugation-based projection paths it validates.
inline DensityMatrix dense_projection_oracle(
    const DensityMatrix& rho, const std::vector<PauliString>& surviving) {
  const int n = rho.n_qubits();
  std::map<PauliString, double> entries;
  for (const auto& alpha : surviving) {
    if (alpha.n_qubits() != n) {
      throw DimensionError("dense_projection_oracle: surviving string " +
                           alpha.to_string() + " has the wrong qubit count");
    }
    entries.emplace(alpha, correlation(rho, alpha));
  }
  return from_bloch(CorrelationTensor(n, std::move(entries)));
}

// Numerical spectrum through the in-repo Jacobi iteration, ascending.
inline std::vector<double> eigen_oracle(const Matrix& a) {
  if (a.dim() == 0) {
    throw ArgumentError("eigen_oracle: empty matrix");
  }
  if (a.dim() > 128) {
    throw ArgumentError("eigen_oracle: dimension above 128");
  }
  if (a.hermiticity_deviation() > 1e-9) {
    throw ArgumentError("eigen_oracle: input is not Hermitian within 1e-9");
  }
  return jacobi_eigenvalues(a);
}

// Phase-1 simplex feasibility for {z >= 0 : A z = b}, dense row-major A of
// shape rows x cols. Bland's rule on entering and leaving variables rules
// out cycling. When a solution pointer is given it receives one basic
// feasible point.
inline bool simplex_feasible(std::vector<double> a, int rows, int cols,
                             std::vector<double> b, double tol,
                             std::vector<double>* solution = nullptr) {
  if (rows < 1 || cols < 1 ||
      a.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) ||
      b.size() != static_cast<std::size_t>(rows)) {
    throw ArgumentError("simplex_feasible: inconsistent shapes");
  }
  // Flip rows so the right-hand side is nonnegative, then append one
  // artificial variable per row and minimize their sum.
  for (int i = 0; i < rows; ++i) {
    if (b[static_cast<std::size_t>(i)] < 0.0) {
      b[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
      for (int j = 0; j < cols; ++j) {
        a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
          static_cast<std::size_t>(j)] *= -1.0;
      }
    }
  }
  const int total = cols + rows;
  std::vector<std::vector<double>> t(
      static_cast<std::size_t>(rows),
      std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
            static_cast<std::size_t>(j)];
    }
    t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols + i)] = 1.0;
    t[static_cast<std::size_t>(i)].back() = b[static_cast<std::size_t>(i)];
    basis[static_cast<std::size_t>(i)] = cols + i;
  }
  // Reduced costs for phase 1: artificial columns start basic with cost 1.
  // The last slot carries the negated objective so every slot transforms by
  // the same pivot-row subtraction.
  std::vector<double> cost(static_cast<std::size_t>(total) + 1, 0.0);
  for (int j = 0; j <= total; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) {
      s += (j == total) ? t[static_cast<std::size_t>(i)].back()
                        : t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    if (j < cols) {
      cost[static_cast<std::size_t>(j)] = -s;
    } else if (j == total) {
      cost.back() = -s;
    }
  }

  const int max_pivots = 200 * (rows + cols);
  for (int pivots = 0; pivots < max_pivots; ++pivots) {
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      if (cost[static_cast<std::size_t>(j)] < -1e-12) {
        enter = j;
        break;  // Bland: smallest improving index
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double coef =
          t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (coef <= 1e-12) continue;
      const double ratio = t[static_cast<std::size_t>(i)].back() / coef;
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 &&
           basis[static_cast<std::size_t>(i)] <
               basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      // Unbounded phase-1 objective cannot happen; treat as failure.
      throw DomainError("simplex_feasible: lost direction during phase 1");
    }
    const double pivot =
        t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
    for (double& v : t[static_cast<std::size_t>(leave)]) v /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double f =
          t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) {
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(j)];
      }
    }
    const double cf = cost[static_cast<std::size_t>(enter)];
    for (int j = 0; j <= total; ++j) {
      cost[static_cast<std::size_t>(j)] -=
          cf * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  const double objective = -cost.back();
  if (objective > tol) return false;
  if (solution) {
    solution->assign(static_cast<std::size_t>(cols), 0.0);
    for (int i = 0; i < rows; ++i) {
      if (basis[static_cast<std::size_t>(i)] < cols) {
        (*solution)[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
            t[static_cast<std::size_t>(i)].back();
      }
    }
  }
  return true;
}

namespace detail {

inline const std::array<std::array<double, 3>, 6>& octahedron_vertices() {
  static const std::array<std::array<double, 3>, 6> v = {{{1, 0, 0},
                                                          {-1, 0, 0},
                                                          {0, 1, 0},
                                                          {0, -1, 0},
                                                          {0, 0, 1},
                                                          {0, 0, -1}}};
  return v;
}

// Vertices of the tetrahedron whose corners have coordinate product c.
inline std::array<std::array<double, 3>, 4> tetra_vertices(double c) {
  if (c > 0.0) {
    return {{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  }
  return {{{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};
}

// Feasibility of d = (1+s) x - s e with x a mixture of the 6 cross-polytope
// vertices and e a mixture of the 4 tetrahedron vertices (the odd-count
// physical region). An optional extra row pins sum(e) to a constant, used
// to pull a canonical mixing point out of a degenerate optimal face.
inline bool robustness_feasible_polytope(const std::array<double, 3>& d,
                                         double s, double c, double lp_tol,
                                         bool pin_mixing_plane,
                                         double plane_value,
                                         std::vector<double>* solution) {
  const auto& oct = octahedron_vertices();
  const auto tet = tetra_vertices(c);
  const int rows = pin_mixing_plane ? 6 : 5;
  const int cols = 10;
  std::vector<double> a(static_cast<std::size_t>(rows * cols), 0.0);
  std::vector<double> b(static_cast<std::size_t>(rows), 0.0);
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i * cols + j)];
  };
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 6; ++j) {
      at(k, j) = (1.0 + s) * oct[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    for (int j = 0; j < 4; ++j) {
      at(k, 6 + j) = -s * tet[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    b[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k)];
  }
  for (int j = 0; j < 6; ++j) at(3, j) = 1.0;
  b[3] = 1.0;
  for (int j = 0; j < 4; ++j) at(4, 6 + j) = 1.0;
  b[4] = 1.0;
  if (pin_mixing_plane) {
    for (int j = 0; j < 4; ++j) {
      const auto& v = tet[static_cast<std::size_t>(j)];
      at(5, 6 + j) = v[0] + v[1] + v[2];
    }
    b[5] = plane_value;
  }
  return simplex_feasible(std::move(a), rows, cols, std::move(b), lp_tol,
                          solution);
}

inline double tetra_sign(int n_qubits) {
  return ((n_qubits - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace detail

// Feasibility test behind the robustness oracle: can the triple reach the
// cross-polytope by mixing in weight s/(1+s) of a physical-region point?
// Odd counts run the vertex-mixture LP; even counts use the ball
// reformulation distance(d/(1+s)) <= s/(1+s).
inline bool robustness_lp_feasible(const EgnTriple& t, double s,
                                   const OracleConfig& cfg = {}) {
  const std::array<double, 3> d = t.coords();
  if (t.n_qubits % 2 == 0) {
    const double f = 1.0 / (1.0 + s);
    return distance_to_octahedron({d[0] * f, d[1] * f, d[2] * f}) <= s * f;
  }
  return detail::robustness_feasible_polytope(
      d, s, detail::tetra_sign(t.n_qubits), cfg.lp_tol, false, 0.0, nullptr);
}

struct RobustnessCertificate {
  double s = 0.0;
  std::array<double, 3> separable_point{};
  std::array<double, 3> mixing_point{};
  bool extracted = false;
};

// Independent robustness certification: bisection on s with a feasibility
// test at every step. Odd counts mix over vertices of the cross-polytope
// and of the physical tetrahedron, which keeps the subproblem a small LP;
// even counts have a ball for the physical region and use the distance
// reformulation instead.
inline double robustness_lp_oracle(const EgnTriple& t, int m,
                                   const OracleConfig& cfg = {},
                                   RobustnessCertificate* cert = nullptr) {
  check_measure_args(t, m, "robustness_lp_oracle");
  if (cert) *cert = RobustnessCertificate{};
  if (!nontrivial_regime(t.n_qubits, m)) return 0.0;

  auto feasible = [&](double s) { return robustness_lp_feasible(t, s, cfg); };
  double result;
  if (feasible(0.0)) {
    result = 0.0;
  } else {
    double lo = 0.0;
    double hi = 3.0;
    while (hi - lo > cfg.bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    result = hi;
  }

  if (cert) {
    cert->s = result;
    const std::array<double, 3> d = t.coords();
    if (t.n_qubits % 2 == 0) {
      // Ball case in closed form: the reached point is the projection of
      // the shrunk triple, and the mixing point follows by elimination.
      const double f = 1.0 / (1.0 + result);
      const auto x = project_to_octahedron({d[0] * f, d[1] * f, d[2] * f});
      cert->separable_point = x;
      if (result > 0.0) {
        for (int k = 0; k < 3; ++k) {
          cert->mixing_point[static_cast<std::size_t>(k)] =
              ((1.0 + result) * x[static_cast<std::size_t>(k)] -
               d[static_cast<std::size_t>(k)]) /
              result;
        }
      } else {
        cert->mixing_point = {0.0, 0.0, 0.0};
      }
      cert->extracted = true;
    } else {
      // Prefer the mixing point on the tetrahedron base opposite its own
      // corner; the optimal face can be degenerate and this pins a
      // canonical representative when one exists.
      const double c = detail::tetra_sign(t.n_qubits);
      std::vector<double> z;
      bool got = detail::robustness_feasible_polytope(d, result, c, cfg.lp_tol,
                                                      true, -c, &z);
      if (!got) {
        got = detail::robustness_feasible_polytope(d, result, c, cfg.lp_tol,
                                                   false, 0.0, &z);
      }
      if (got) {
        const auto& oct = detail::octahedron_vertices();
        const auto tet = detail::tetra_vertices(c);
        cert->extracted = true;
        for (int k = 0; k < 3; ++k) {
          for (int j = 0; j < 6; ++j) {
            cert->separable_point[static_cast<std::size_t>(k)] +=
                z[static_cast<std::size_t>(j)] *
                oct[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          }
          for (int j = 0; j < 4; ++j) {
            cert->mixing_point[static_cast<std::size_t>(k)] +=
                z[static_cast<std::size_t>(6 + j)] *
                tet[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          }
        }
      }
    }
  }
  return result;
}

// Brute-force distance to the cross-polytope: a dense barycentric grid at
// the configured per-axis resolution over each boundary face (the nearest
// point to an exterior query lies on the boundary), then local pattern
// refinement on every face to push the grid error well below 1e-6.
inline double grid_distance_oracle(const std::array<double, 3>& p,
                                   const OracleConfig& cfg = {}) {
  if (cfg.grid_resolution < 2) {
    throw ArgumentError("grid_distance_oracle: resolution must be >= 2");
  }
  if (std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) <= 1.0) return 0.0;

  auto dist2_at = [&](const std::array<double, 3>& u, double aa, double bb) {
    const double cc = 1.0 - aa - bb;
    const double x = aa * u[0] - p[0];
    const double y = bb * u[1] - p[1];
    const double z = cc * u[2] - p[2];
    return x * x + y * y + z * z;
  };

  const int res = cfg.grid_resolution;
  double best = std::numeric_limits<double>::infinity();
  for (int su = 0; su < 8; ++su) {
    const std::array<double, 3> u = {su & 1 ? -1.0 : 1.0,
                                     su & 2 ? -1.0 : 1.0,
                                     su & 4 ? -1.0 : 1.0};
    // Coarse scan of this face.
    double face_best = std::numeric_limits<double>::infinity();
    double fa = 0.0, fb = 0.0;
    for (int i = 0; i <= res; ++i) {
      const double aa = static_cast<double>(i) / res;
      for (int j = 0; i + j <= res; ++j) {
        const double bb = static_cast<double>(j) / res;
        const double d2 = dist2_at(u, aa, bb);
        if (d2 < face_best) {
          face_best = d2;
          fa = aa;
          fb = bb;
        }
      }
    }
    // Pattern refinement within the face: 5x5 neighborhoods with halving
    // steps, clamped to the barycentric simplex.
    double step = 1.0 / res;
    for (int round = 0; round < 40; ++round) {
      double round_best = face_best;
      double ra = fa, rb = fb;
      for (int di = -2; di <= 2; ++di) {
        for (int dj = -2; dj <= 2; ++dj) {
          double aa = fa + di * step * 0.5;
          double bb = fb + dj * step * 0.5;
          if (aa < 0.0 || bb < 0.0 || aa + bb > 1.0) continue;
          const double d2 = dist2_at(u, aa, bb);
          if (d2 < round_best) {
            round_best = d2;
            ra = aa;
            rb = bb;
          }
        }
      }
      face_best = round_best;
      fa = ra;
      fb = rb;
      step *= 0.5;
    }
    best = std::min(best, face_best);
  }
  return std::sqrt(best);
}

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelfCheckReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Cross-validates every closed form in the library against its brute-force
// counterpart. quick trims the sample counts for smoke testing.
inline SelfCheckReport self_check(std::uint64_t seed, bool quick,
                                  const OracleConfig& cfg = {}) {
  SelfCheckReport report;
  Rng rng(seed);

  {
    CheckResult c{"projection_agreement", 0.0, 1e-12, false};
    const int per_n = quick ? 2 : 5;
    for (int n = 2; n <= 5; ++n) {
      VerificationReport vr;
      const EnipSpec spec = standard_egn_spec(n, &vr);
      for (int k = 0; k < per_n; ++k) {
        const DensityMatrix rho = DensityMatrix::random(n, rng.next_u64());
        const DensityMatrix avg = project_group_average(rho, spec);
        const DensityMatrix rec = project_recursive(rho, spec);
        const DensityMatrix orc = dense_projection_oracle(rho, spec.surviving);
        c.max_deviation = std::max(
            {c.max_deviation, avg.matrix().max_abs_diff(rec.matrix()),
             avg.matrix().max_abs_diff(orc.matrix()),
             rec.matrix().max_abs_diff(orc.matrix())});
      }
    }
    c.pass = c.max_deviation <= c.tolerance;
    report.checks.push_back(c);
  }

  {
    CheckResult c{"robustness_formula_vs_lp", 0.0, 1e-6, false};
    const int per_n = quick ? 7 : 67;
    for (int n : {3, 5, 7}) {
      for (int k = 0; k < per_n; ++k) {
        const EgnTriple t = random_physical_triple(n, rng);
        for (int m = n / 2 + 2; m <= n; ++m) {
          const double formula = robustness(t, m);
          const double lp = robustness_lp_oracle(t, m, cfg);
          c.max_deviation = std::max(c.max_deviation, std::abs(formula - lp));
        }
      }
    }
    c.pass = c.max_deviation <= c.tolerance;
    report.checks.push_back(c);
  }

  {
    CheckResult c{"eigenvalues_formula_vs_jacobi", 0.0, 1e-10, false};
    const int per_n = quick ? 10 : 100;
    for (int n : {3, 4, 5}) {
      for (int k = 0; k < per_n; ++k) {
        const EgnTriple t = random_physical_triple(n, rng);
        std::vector<double> formula;
        for (const auto& [value, mult] : egn_eigenvalues(t)) {
          formula.insert(formula.end(), static_cast<std::size_t>(mult), value);
        }
        std::sort(formula.begin(), formula.end());
        const auto numeric = eigen_oracle(egn_state(t).matrix());
        for (std::size_t i = 0; i < numeric.size(); ++i) {
          c.max_deviation =
              std::max(c.max_deviation, std::abs(formula[i] - numeric[i]));
        }
      }
    }
    c.pass = c.max_deviation <= c.tolerance;
    report.checks.push_back(c);
  }

  {
    CheckResult c{"distance_closed_vs_grid", 0.0, 1e-4, false};
    const int count = quick ? 10 : 100;
    for (int k = 0; k < count; ++k) {
      const std::array<double, 3> p = {rng.uniform(-1.5, 1.5),
                                       rng.uniform(-1.5, 1.5),
                                       rng.uniform(-1.5, 1.5)};
      c.max_deviation =
          std::max(c.max_deviation, std::abs(distance_to_octahedron(p) -
                                             grid_distance_oracle(p, cfg)));
    }
    c.pass = c.max_deviation <= c.tolerance;
    report.checks.push_back(c);
  }

  {
    CheckResult c{"lp_monotonicity", 0.0, 0.5, false};
    const int count = quick ? 6 : 21;
    for (int k = 0; k < count; ++k) {
      const EgnTriple t = random_physical_triple(3 + k % 3, rng);
      const double s = rng.uniform(0.0, 3.0);
      if (robustness_lp_feasible(t, s, cfg) &&
          !robustness_lp_feasible(t, s + 0.01, cfg)) {
        c.max_deviation += 1.0;
      }
    }
    c.pass = c.max_deviation <= c.tolerance;
    report.checks.push_back(c);
  }

  return report;
}

}  // namespace egn
