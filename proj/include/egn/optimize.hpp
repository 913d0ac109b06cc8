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

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "egn/errors.hpp"
#include "egn/geometry.hpp"
#include "egn/matrix.hpp"
#include "egn/rng.hpp"
#include "egn/state.hpp"

namespace egn {

struct AngleTriple {
  double theta = 0.0;
  double psi = 0.0;
  double phi = 0.0;
};

// The standard single-qubit rotation
//   [ cos(t/2) e^{-i(psi+phi)/2}   -i sin(t/2) e^{-i(phi-psi)/2} ]
//   [ -i sin(t/2) e^{i(phi-psi)/2}  cos(t/2) e^{i(psi+phi)/2}    ].
inline Matrix su2(double theta, double psi, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cplx mi(0.0, -1.0);
  Matrix u(2);
  u(0, 0) = c * std::exp(cplx(0.0, -(psi + phi) / 2.0));
  u(0, 1) = mi * s * std::exp(cplx(0.0, -(phi - psi) / 2.0));
  u(1, 0) = mi * s * std::exp(cplx(0.0, (phi - psi) / 2.0));
  u(1, 1) = c * std::exp(cplx(0.0, (psi + phi) / 2.0));
  return u;
}

inline Matrix su2(const AngleTriple& a) { return su2(a.theta, a.psi, a.phi); }

// Angle triples for every qubit: either one shared triple (symmetric) or
// one per qubit.
struct LocalUnitaryParams {
  bool symmetric = true;
  std::vector<AngleTriple> angles = {AngleTriple{}};

  static LocalUnitaryParams shared(const AngleTriple& a) {
    return LocalUnitaryParams{true, {a}};
  }
  static LocalUnitaryParams per_qubit(std::vector<AngleTriple> a) {
    return LocalUnitaryParams{false, std::move(a)};
  }

  const AngleTriple& qubit(int k) const {
    return symmetric ? angles.front() : angles[static_cast<std::size_t>(k)];
  }

  // Fold every triple into theta in [0, pi], psi and phi in [0, 2 pi). The
  // identity su2(2 pi - t, psi + pi, phi + pi) = su2(t, psi, phi) keeps the
  // unitary unchanged; the 2 pi wraps can flip its global sign, which the
  // adjoint action does not see.
  LocalUnitaryParams canonicalized() const {
    const double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [&](double v) {
      v = std::fmod(v, two_pi);
      if (v < 0.0) v += two_pi;
      if (v >= two_pi) v = 0.0;
      return v;
    };
    LocalUnitaryParams out = *this;
    for (auto& a : out.angles) {
      a.theta = wrap(a.theta);
      if (a.theta > std::numbers::pi) {
        a.theta = two_pi - a.theta;
        a.psi += std::numbers::pi;
        a.phi += std::numbers::pi;
      }
      a.psi = wrap(a.psi);
      a.phi = wrap(a.phi);
    }
    return out;
  }
};

inline std::vector<Matrix> local_unitary_factors(const LocalUnitaryParams& p,
                                                 int n_qubits) {
  if (!p.symmetric && static_cast<int>(p.angles.size()) != n_qubits) {
    throw DimensionError("local_unitary_factors: " +
                         std::to_string(p.angles.size()) +
                         " angle triples for " + std::to_string(n_qubits) +
                         " qubits");
  }
  std::vector<Matrix> factors;
  factors.reserve(static_cast<std::size_t>(n_qubits));
  for (int k = 0; k < n_qubits; ++k) factors.push_back(su2(p.qubit(k)));
  return factors;
}

namespace detail {

inline Matrix sigma_matrix(int a) {
  Matrix m(2);
  switch (a) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw ArgumentError("sigma_matrix: index outside 1..3");
  }
  return m;
}

// Rotation matrix R with U^dag sigma_a U = sum_b R[a][b] sigma_b.
inline std::array<std::array<double, 3>, 3> so3_of(const Matrix& u) {
  const Matrix ud = u.adjoint();
  std::array<std::array<double, 3>, 3> r{};
  for (int a = 0; a < 3; ++a) {
    const Matrix rotated = ud * sigma_matrix(a + 1) * u;
    for (int b = 0; b < 3; ++b) {
      const Matrix sb = sigma_matrix(b + 1);
      cplx t = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t += rotated(i, j) * sb(j, i);
      r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          0.5 * t.real();
    }
  }
  return r;
}

}  // namespace detail

// Precomputed correlation blocks that let a rotated readout triple be
// re-evaluated in O(3^N) per parameter vector: tr(U rho U^dag P_alpha)
// contracts the non-identity correlation block of rho against one SO(3)
// row per site.
class TripleEvaluator {
 public:
  explicit TripleEvaluator(const DensityMatrix& rho) : n_(rho.n_qubits()) {
    if (n_ < 2) {
      throw ArgumentError("TripleEvaluator: state must have >= 2 qubits");
    }
    const std::size_t full = pow3(n_);
    t_full_.resize(full);
    std::vector<int> idx(static_cast<std::size_t>(n_), 1);
    for (std::size_t flat = 0; flat < full; ++flat) {
      t_full_[flat] = correlation(rho, PauliString(idx));
      for (int k = n_ - 1; k >= 0; --k) {
        auto& v = idx[static_cast<std::size_t>(k)];
        if (v < 3) { ++v; break; }
        v = 1;
      }
    }
    const std::size_t head = pow3(n_ - 1);
    t_last0_.resize(head);
    std::vector<int> hidx(static_cast<std::size_t>(n_), 1);
    hidx.back() = 0;
    for (std::size_t flat = 0; flat < head; ++flat) {
      t_last0_[flat] = correlation(rho, PauliString(hidx));
      for (int k = n_ - 2; k >= 0; --k) {
        auto& v = hidx[static_cast<std::size_t>(k)];
        if (v < 3) { ++v; break; }
        v = 1;
      }
    }
  }

  int n_qubits() const { return n_; }

  EgnTriple eval(const LocalUnitaryParams& p) const {
    if (!p.symmetric && static_cast<int>(p.angles.size()) != n_) {
      throw DimensionError("TripleEvaluator::eval: angle count mismatch");
    }
    std::vector<std::array<std::array<double, 3>, 3>> rot;
    if (p.symmetric) {
      rot.push_back(detail::so3_of(su2(p.angles.front())));
    } else {
      rot.reserve(static_cast<std::size_t>(n_));
      for (const auto& a : p.angles) rot.push_back(detail::so3_of(su2(a)));
    }
    auto row = [&](int site, int a) -> const std::array<double, 3>& {
      const auto& r = p.symmetric ? rot.front()
                                  : rot[static_cast<std::size_t>(site)];
      return r[static_cast<std::size_t>(a - 1)];
    };
    // d1: sigma1 rows on all but the last site, sigma2 row on the last.
    const double d1 = contract(t_full_, n_, [&](int s) -> const std::array<double, 3>& {
      return row(s, s == n_ - 1 ? 2 : 1);
    });
    const double d2 = contract(t_full_, n_, [&](int s) -> const std::array<double, 3>& {
      return row(s, 2);
    });
    const double d3 = contract(t_last0_, n_ - 1, [&](int s) -> const std::array<double, 3>& {
      return row(s, 3);
    });
    auto clamp = [](double v) { return std::max(-1.0, std::min(1.0, v)); };
    return EgnTriple(clamp(d1), clamp(d2), clamp(d3), n_);
  }

 private:
  static std::size_t pow3(int k) {
    std::size_t v = 1;
    for (int i = 0; i < k; ++i) v *= 3;
    return v;
  }

  template <typename RowFn>
  double contract(const std::vector<double>& block, int sites,
                  RowFn&& row_for_site) const {
    std::vector<double> cur(block);
    std::size_t len = cur.size();
    for (int site = sites - 1; site >= 0; --site) {
      const auto& r = row_for_site(site);
      len /= 3;
      for (std::size_t i = 0; i < len; ++i) {
        cur[i] = r[0] * cur[3 * i] + r[1] * cur[3 * i + 1] +
                 r[2] * cur[3 * i + 2];
      }
    }
    return cur[0];
  }

  int n_;
  std::vector<double> t_full_;
  std::vector<double> t_last0_;
};

// Readout triple after rotating every qubit, via the correlation-block
// contraction.
inline EgnTriple rotated_triple(const DensityMatrix& rho,
                                const LocalUnitaryParams& p) {
  return TripleEvaluator(rho).eval(p);
}

// The same triple through the dense route: conjugate the state and read the
// three correlations. Used to cross-check the contraction path.
inline EgnTriple rotated_triple_dense(const DensityMatrix& rho,
                                      const LocalUnitaryParams& p) {
  return triple_of(
      apply_local_unitary(rho, local_unitary_factors(p, rho.n_qubits())));
}

// Known optimal symmetric rotation angles for GHZ states, N = 3..7.
inline std::optional<AngleTriple> ghz_optimal_angles(int n_qubits) {
  const double pi = std::numbers::pi;
  switch (n_qubits) {
    case 3: return AngleTriple{0.0, pi / 12, pi / 12};
    case 4: return AngleTriple{0.0, pi / 32, pi / 32};
    case 5: return AngleTriple{0.0, pi / 20, pi / 20};
    case 6: return AngleTriple{0.0, pi / 48, pi / 48};
    case 7: return AngleTriple{0.0, pi / 28, pi / 28};
    default: return std::nullopt;
  }
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Plain Nelder-Mead ascent (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5). Stops when the simplex value spread drops below tol or the
// iteration cap is hit. Fully deterministic.
inline NelderMeadResult nelder_mead_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double step, int max_iter, double tol) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw ArgumentError("nelder_mead_maximize: empty start point");

  std::vector<std::vector<double>> pts(dim + 1, x0);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += step;
  std::vector<double> val(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) val[i] = f(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];
    if (val[best] - val[worst] < tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t k = 0; k < dim; ++k)
        x[k] = centroid[k] + coef * (centroid[k] - pts[worst][k]);
      return x;
    };

    const std::vector<double> reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr > val[best]) {
      const std::vector<double> expanded = blend(2.0);
      const double fe = f(expanded);
      if (fe > fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
      continue;
    }
    if (fr > val[second_worst]) {
      pts[worst] = reflected;
      val[worst] = fr;
      continue;
    }
    const std::vector<double> contracted = blend(-0.5);
    const double fc = f(contracted);
    if (fc > val[worst]) {
      pts[worst] = contracted;
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k)
        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      val[i] = f(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i)
    if (val[i] > val[best]) best = i;
  return NelderMeadResult{pts[best], val[best], iter};
}

// Rebuilding a fresh simplex at the converged point recovers progress when
// the previous simplex collapsed inside a degenerate valley (flat angle
// combinations do that). The iteration budget is shared across restarts.
inline NelderMeadResult nelder_mead_restarted(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double step, int max_iter, double tol) {
  NelderMeadResult best = nelder_mead_maximize(f, x0, step, max_iter, tol);
  int used = std::max(best.iterations, 1);
  double restart_step = step * 0.5;
  while (used < max_iter) {
    const NelderMeadResult r =
        nelder_mead_maximize(f, best.x, restart_step, max_iter - used, tol);
    used += std::max(r.iterations, 1);
    const bool progressed = r.value > best.value + tol;
    if (r.value > best.value) {
      best.x = r.x;
      best.value = r.value;
    }
    if (!progressed) break;
    restart_step *= 0.5;
  }
  best.iterations = used;
  return best;
}

struct OptimizeConfig {
  int grid_points = 24;
  int top_k = 5;
  int nm_max_iter = 500;
  double nm_tol = 1e-10;
  bool per_qubit_stage = false;
  bool use_builtin_seeds = true;
  std::vector<LocalUnitaryParams> extra_seeds;
  // Even qubit counts can target the Euclidean distance to the
  // cross-polytope instead of the absolute coordinate sum.
  bool even_distance_objective = false;
  int random_starts = 0;
  std::uint64_t random_starts_seed = 0;
};

struct BoundReport {
  LocalUnitaryParams params;
  EgnTriple triple{0.0, 0.0, 0.0, 2};
  double abs_sum = 0.0;
  std::map<int, MeasureResult> per_m;
};

// Deterministic search for the local frame maximizing the readout
// objective: a symmetric coarse grid, Nelder-Mead refinement from the best
// separated grid points and from the seeds, and an optional per-qubit
// refinement stage that always includes the symmetric optimum as a start.
inline BoundReport optimize(const DensityMatrix& rho,
                            const OptimizeConfig& cfg = {}) {
  if (cfg.grid_points < 2) {
    throw ArgumentError("optimize: grid_points must be at least 2");
  }
  if (cfg.top_k < 1) {
    throw ArgumentError("optimize: top_k must be at least 1");
  }
  const int n = rho.n_qubits();
  const TripleEvaluator evaluator(rho);
  const double pi = std::numbers::pi;
  const double two_pi = 2.0 * pi;

  auto objective = [&](const LocalUnitaryParams& p) {
    const EgnTriple t = evaluator.eval(p);
    if (n % 2 == 0 && cfg.even_distance_objective) {
      return distance_to_octahedron(t.coords());
    }
    return std::abs(t.d1) + std::abs(t.d2) + std::abs(t.d3);
  };

  auto lex_angles = [](const LocalUnitaryParams& p) {
    std::vector<double> v;
    for (const auto& a : p.canonicalized().angles) {
      v.push_back(a.theta);
      v.push_back(a.psi);
      v.push_back(a.phi);
    }
    return v;
  };
  LocalUnitaryParams best_params = LocalUnitaryParams::shared(AngleTriple{});
  double best_value = objective(best_params);
  auto offer = [&](const LocalUnitaryParams& p, double value) {
    if (value > best_value + 1e-12) {
      best_value = value;
      best_params = p;
      return;
    }
    if (value >= best_value - 1e-12 && lex_angles(p) < lex_angles(best_params)) {
      best_params = p;
    }
  };

  // Symmetric coarse grid.
  struct GridPoint {
    double value;
    AngleTriple a;
  };
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(cfg.grid_points) *
               static_cast<std::size_t>(cfg.grid_points) *
               static_cast<std::size_t>(cfg.grid_points));
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double theta = pi * i / (cfg.grid_points - 1);
    for (int j = 0; j < cfg.grid_points; ++j) {
      const double psi = two_pi * j / cfg.grid_points;
      for (int k = 0; k < cfg.grid_points; ++k) {
        const double phi = two_pi * k / cfg.grid_points;
        const AngleTriple a{theta, psi, phi};
        grid.push_back({objective(LocalUnitaryParams::shared(a)), a});
      }
    }
  }
  std::stable_sort(grid.begin(), grid.end(),
                   [](const GridPoint& a, const GridPoint& b) {
                     if (a.value != b.value) return a.value > b.value;
                     if (a.a.theta != b.a.theta) return a.a.theta < b.a.theta;
                     if (a.a.psi != b.a.psi) return a.a.psi < b.a.psi;
                     return a.a.phi < b.a.phi;
                   });

  // Keep the top_k grid points, requiring separation so the refinement
  // starts cover distinct basins rather than one ridge.
  const double sep = 1.5 * two_pi / cfg.grid_points;
  auto wrapped_gap = [&](double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, two_pi - d);
  };
  std::vector<AngleTriple> starts;
  for (const auto& g : grid) {
    if (static_cast<int>(starts.size()) >= cfg.top_k) break;
    bool crowded = false;
    for (const auto& s : starts) {
      const double gap = std::max({std::abs(g.a.theta - s.theta),
                                   wrapped_gap(g.a.psi, s.psi),
                                   wrapped_gap(g.a.phi, s.phi)});
      if (gap < sep) {
        crowded = true;
        break;
      }
    }
    if (!crowded) starts.push_back(g.a);
  }

  // Seeds: the identity frame, known-good GHZ angles, caller extras and
  // optional seeded random restarts.
  starts.push_back(AngleTriple{});
  if (cfg.use_builtin_seeds) {
    if (auto a = ghz_optimal_angles(n)) starts.push_back(*a);
  }
  std::vector<LocalUnitaryParams> per_qubit_seeds;
  for (const auto& s : cfg.extra_seeds) {
    if (s.symmetric) {
      starts.push_back(s.angles.front());
    } else {
      per_qubit_seeds.push_back(s);
    }
  }
  if (cfg.random_starts > 0) {
    Rng rng(cfg.random_starts_seed);
    for (int i = 0; i < cfg.random_starts; ++i) {
      starts.push_back(AngleTriple{rng.uniform(0.0, pi),
                                   rng.uniform(0.0, two_pi),
                                   rng.uniform(0.0, two_pi)});
    }
  }

  auto symmetric_objective = [&](const std::vector<double>& x) {
    return objective(
        LocalUnitaryParams::shared(AngleTriple{x[0], x[1], x[2]}));
  };
  for (const auto& s : starts) {
    offer(LocalUnitaryParams::shared(s),
          objective(LocalUnitaryParams::shared(s)));
    const auto r = nelder_mead_restarted(symmetric_objective,
                                         {s.theta, s.psi, s.phi}, 0.2,
                                         cfg.nm_max_iter, cfg.nm_tol);
    offer(LocalUnitaryParams::shared(AngleTriple{r.x[0], r.x[1], r.x[2]}),
          r.value);
  }

  // Per-qubit refinement never loses to the symmetric stage: the winning
  // symmetric frame is one of its start points.
  if (cfg.per_qubit_stage || !per_qubit_seeds.empty()) {
    auto unpack = [&](const std::vector<double>& x) {
      std::vector<AngleTriple> angles(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) {
        angles[static_cast<std::size_t>(q)] =
            AngleTriple{x[3 * static_cast<std::size_t>(q)],
                        x[3 * static_cast<std::size_t>(q) + 1],
                        x[3 * static_cast<std::size_t>(q) + 2]};
      }
      return LocalUnitaryParams::per_qubit(std::move(angles));
    };
    auto per_qubit_objective = [&](const std::vector<double>& x) {
      return objective(unpack(x));
    };
    std::vector<LocalUnitaryParams> pq_starts = per_qubit_seeds;
    if (cfg.per_qubit_stage) {
      std::vector<AngleTriple> replicated(static_cast<std::size_t>(n),
                                          best_params.qubit(0));
      if (!best_params.symmetric) replicated = best_params.angles;
      pq_starts.push_back(LocalUnitaryParams::per_qubit(replicated));
    }
    for (const auto& s : pq_starts) {
      std::vector<double> x0;
      for (int q = 0; q < n; ++q) {
        const auto& a = s.qubit(q);
        x0.push_back(a.theta);
        x0.push_back(a.psi);
        x0.push_back(a.phi);
      }
      offer(s, objective(s));
      const auto r = nelder_mead_restarted(per_qubit_objective, x0, 0.05,
                                           cfg.nm_max_iter, cfg.nm_tol);
      offer(unpack(r.x), r.value);
    }
  }

  BoundReport report;
  report.params = best_params.canonicalized();
  report.triple = evaluator.eval(report.params);
  report.abs_sum = std::abs(report.triple.d1) + std::abs(report.triple.d2) +
                   std::abs(report.triple.d3);
  for (int m = 2; m <= n; ++m) {
    report.per_m.emplace(m, evaluate_measures(report.triple, m));
  }
  return report;
}

}  // namespace egn
