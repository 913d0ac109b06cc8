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
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "egn/errors.hpp"
#include "egn/rng.hpp"
#include "egn/state.hpp"

namespace egn {

// The three readout strings whose correlations characterize a guarantor
// state: (1,...,1,2), (2,...,2) and (3,...,3,0).
inline PauliString readout_string_1(int n) {
  std::vector<int> v(static_cast<std::size_t>(n), 1);
  v.back() = 2;
  return PauliString(v);
}
inline PauliString readout_string_2(int n) {
  return PauliString(std::vector<int>(static_cast<std::size_t>(n), 2));
}
inline PauliString readout_string_3(int n) {
  std::vector<int> v(static_cast<std::size_t>(n), 3);
  v.back() = 0;
  return PauliString(v);
}

// The correlation triple (d1, d2, d3) of a guarantor state on n_qubits
// qubits. Plain data: coordinates are range checked to [-1, 1] but
// physicality (spectrum of the reconstructed state) is a separate query, so
// unphysical triples can be represented and interrogated.
struct EgnTriple {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  int n_qubits = 2;

  EgnTriple(double a, double b, double c, int n) : d1(a), d2(b), d3(c), n_qubits(n) {
    if (n < 2) {
      throw ArgumentError("EgnTriple: n_qubits must be at least 2");
    }
    for (double v : {a, b, c}) {
      if (!(std::abs(v) <= 1.0 + 1e-9)) {
        throw ArgumentError("EgnTriple: coordinate " + std::to_string(v) +
                            " outside [-1, 1]");
      }
    }
  }

  std::array<double, 3> coords() const { return {d1, d2, d3}; }
};

inline EgnTriple triple_of(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  if (n < 2) {
    throw ArgumentError("triple_of: state must have at least 2 qubits");
  }
  return EgnTriple(correlation(rho, readout_string_1(n)),
                   correlation(rho, readout_string_2(n)),
                   correlation(rho, readout_string_3(n)), n);
}

// Height above the separable octahedron, in [-1/2, 1].
inline double height(const EgnTriple& t) {
  return (std::abs(t.d1) + std::abs(t.d2) + std::abs(t.d3) - 1.0) / 2.0;
}

// Closed-form spectrum of the guarantor state with this triple, as
// (eigenvalue, multiplicity) pairs; multiplicities total 2^N. Odd N yields
// the eight sign/parity combinations at multiplicity 2^{N-3} each (pairs of
// combinations coincide, so there are at most four distinct values); even N
// yields 2^{-N} (1 +- |d|_2) at multiplicity 2^{N-1} each.
inline std::vector<std::pair<double, int>> egn_eigenvalues(const EgnTriple& t) {
  const int n = t.n_qubits;
  const double scale = 1.0 / static_cast<double>(1ull << n);
  std::vector<std::pair<double, int>> out;
  if (n % 2 == 0) {
    const double r = std::sqrt(t.d1 * t.d1 + t.d2 * t.d2 + t.d3 * t.d3);
    const int mult = 1 << (n - 1);
    out.emplace_back(scale * (1.0 - r), mult);
    out.emplace_back(scale * (1.0 + r), mult);
    return out;
  }
  const double sign2 = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  const int mult = n >= 3 ? (1 << (n - 3)) : 1;
  for (int s = 0; s < 2; ++s) {
    const double sv = s == 0 ? 1.0 : -1.0;
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        const double c1 = sv * (q == 0 ? 1.0 : -1.0);
        const double c2 = sv * sign2 * (p == 0 ? 1.0 : -1.0);
        const double c3 = (p + q) % 2 == 0 ? 1.0 : -1.0;
        out.emplace_back(scale * (1.0 + c1 * t.d1 + c2 * t.d2 + c3 * t.d3),
                         mult);
      }
    }
  }
  return out;
}

inline bool is_physical(const EgnTriple& t) {
  for (const auto& [value, mult] : egn_eigenvalues(t)) {
    if (value < kPsdTol) return false;
  }
  return true;
}

// The guarantor state carrying the given (physical) triple.
inline DensityMatrix egn_state(const EgnTriple& t) {
  const int n = t.n_qubits;
  std::map<PauliString, double> entries;
  entries.emplace(PauliString::identity(n), 1.0);
  entries.emplace(readout_string_1(n), t.d1);
  entries.emplace(readout_string_2(n), t.d2);
  entries.emplace(readout_string_3(n), t.d3);
  return from_bloch(CorrelationTensor(n, std::move(entries)));
}

// Euclidean projection of |p| onto the simplex {x >= 0, sum x = 1} (the
// positive face of the unit cross-polytope), signs restored. Ties between
// coordinates break by index order, which pins the sort and keeps the
// result deterministic.
inline std::array<double, 3> project_to_octahedron(
    const std::array<double, 3>& p) {
  std::array<double, 3> v = {std::abs(p[0]), std::abs(p[1]), std::abs(p[2])};
  const double sum = v[0] + v[1] + v[2];
  if (sum <= 1.0) return p;

  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (v[static_cast<std::size_t>(a)] != v[static_cast<std::size_t>(b)])
      return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)];
    return a < b;
  });
  double cumulative = 0.0;
  double theta = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double u = v[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    cumulative += u;
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u - candidate > 0.0) {
      theta = candidate;
    }
  }
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double clipped = std::max(v[static_cast<std::size_t>(i)] - theta, 0.0);
    out[static_cast<std::size_t>(i)] =
        p[static_cast<std::size_t>(i)] < 0.0 ? -clipped : clipped;
  }
  return out;
}

// Euclidean distance from p to the unit cross-polytope sum |x_i| <= 1.
inline double distance_to_octahedron(const std::array<double, 3>& p) {
  if (std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) <= 1.0) return 0.0;
  const auto q = project_to_octahedron(p);
  const double dx = p[0] - q[0];
  const double dy = p[1] - q[1];
  const double dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// A separability threshold below which every bound is vacuous: only
// m > floor(n/2) + 1 blocks can be certified.
inline bool nontrivial_regime(int n_qubits, int m) {
  return m > n_qubits / 2 + 1;
}

inline void check_measure_args(const EgnTriple& t, int m, const char* what) {
  if (m < 2 || m > t.n_qubits) {
    throw ArgumentError(std::string(what) + ": m = " + std::to_string(m) +
                        " outside 2..n_qubits");
  }
  if (!is_physical(t)) {
    throw DomainError(std::string(what) +
                      ": triple is not a physical guarantor state");
  }
}

// Robustness lower bound on m-inseparable entanglement for states projecting
// to this triple. Odd N: the height, when positive and in the nontrivial
// regime. Even N: the least s for which mixing with weight s/(1+s) of some
// state reaches the cross-polytope, found by bisection on
// distance_to_octahedron(d / (1+s)) <= s / (1+s) to absolute tolerance 1e-9.
inline double robustness(const EgnTriple& t, int m) {
  check_measure_args(t, m, "robustness");
  if (!nontrivial_regime(t.n_qubits, m)) return 0.0;
  if (t.n_qubits % 2 == 1) {
    return std::max(height(t), 0.0);
  }
  const std::array<double, 3> d = t.coords();
  auto feasible = [&](double s) {
    const double f = 1.0 / (1.0 + s);
    return distance_to_octahedron({d[0] * f, d[1] * f, d[2] * f}) <= s * f;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 3.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Trace-distance lower bound: half the height (odd N, clamped at zero) or
// half the Euclidean distance to the cross-polytope (even N), zero in the
// trivial regime.
inline double trace_distance_measure(const EgnTriple& t, int m) {
  check_measure_args(t, m, "trace_distance_measure");
  if (!nontrivial_regime(t.n_qubits, m)) return 0.0;
  if (t.n_qubits % 2 == 1) {
    return std::max(height(t), 0.0) / 2.0;
  }
  return distance_to_octahedron(t.coords()) / 2.0;
}

// Images of the triple under conjugation by the uniform single-qubit Pauli
// rotations, which flip pairs of coordinate signs: identity, then sigma1
// (flips d2, d3), sigma2 (flips d1, d3), sigma3 (flips d1, d2). All four
// carry identical measures.
inline std::array<EgnTriple, 4> corner_images(const EgnTriple& t) {
  return {EgnTriple(t.d1, t.d2, t.d3, t.n_qubits),
          EgnTriple(t.d1, -t.d2, -t.d3, t.n_qubits),
          EgnTriple(-t.d1, t.d2, -t.d3, t.n_qubits),
          EgnTriple(-t.d1, -t.d2, t.d3, t.n_qubits)};
}

struct MeasureResult {
  int m = 0;
  double height = 0.0;
  double robustness = 0.0;
  double trace_distance = 0.0;
  bool nontrivial = false;
  std::string warning;
};

inline MeasureResult evaluate_measures(const EgnTriple& t, int m) {
  check_measure_args(t, m, "evaluate_measures");
  MeasureResult r;
  r.m = m;
  r.height = height(t);
  r.nontrivial = nontrivial_regime(t.n_qubits, m);
  r.robustness = robustness(t, m);
  r.trace_distance = trace_distance_measure(t, m);
  if (t.n_qubits == 2) {
    r.warning = "two-qubit states admit no nontrivial m; all bounds are zero";
  }
  return r;
}

// Rejection sample of a uniformly random physical triple at the given qubit
// count.
inline EgnTriple random_physical_triple(int n_qubits, Rng& rng) {
  if (n_qubits < 2) {
    throw ArgumentError("random_physical_triple: n_qubits must be >= 2");
  }
  while (true) {
    EgnTriple t(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0), n_qubits);
    if (is_physical(t)) return t;
  }
}

}  // namespace egn
