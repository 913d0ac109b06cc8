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
#include <numeric>
#include <string>
#include <vector>

#include "egn/errors.hpp"
#include "egn/rng.hpp"

namespace egn {

// The five shapes that arise as triple-space regions of block products:
// the unit ball, the two tetrahedra with vertices of coordinate product
// +1 / -1, the diagonal segment {(t, t, 1)}, and the unit cross-polytope.
enum class RegionLabel { Ball, TetraPlus, TetraMinus, Line, Octahedron };

inline std::string to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Ball: return "ball";
    case RegionLabel::TetraPlus: return "tetra_plus";
    case RegionLabel::TetraMinus: return "tetra_minus";
    case RegionLabel::Line: return "line";
    case RegionLabel::Octahedron: return "octahedron";
  }
  throw ArgumentError("to_string: unknown region label");
}

// Vertices of the polyhedral regions; the segment contributes its
// endpoints and the ball has none.
inline std::vector<std::array<double, 3>> region_vertices(RegionLabel r) {
  switch (r) {
    case RegionLabel::TetraPlus:
      return {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    case RegionLabel::TetraMinus:
      return {{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    case RegionLabel::Line:
      return {{-1, -1, 1}, {1, 1, 1}};
    case RegionLabel::Octahedron:
      return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    case RegionLabel::Ball:
      return {};
  }
  throw ArgumentError("region_vertices: unknown region label");
}

// A tetrahedron with vertex products c is cut out by the four half-spaces
// u . x <= 1 over sign vectors u with product -c; the ball and
// cross-polytope test their norms; the segment tests its parameterization.
inline bool region_contains(RegionLabel r, const std::array<double, 3>& x,
                            double tol = 1e-9) {
  switch (r) {
    case RegionLabel::Ball:
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= 1.0 + tol;
    case RegionLabel::Octahedron:
      return std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) <= 1.0 + tol;
    case RegionLabel::Line:
      return std::abs(x[0] - x[1]) <= tol && std::abs(x[2] - 1.0) <= tol &&
             std::abs(x[0]) <= 1.0 + tol;
    case RegionLabel::TetraPlus:
    case RegionLabel::TetraMinus: {
      const double want = r == RegionLabel::TetraPlus ? -1.0 : 1.0;
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0})
          for (double s3 : {1.0, -1.0}) {
            if (s1 * s2 * s3 != want) continue;
            if (s1 * x[0] + s2 * x[1] + s3 * x[2] > 1.0 + tol) return false;
          }
      return true;
    }
  }
  throw ArgumentError("region_contains: unknown region label");
}

// Boundary points that pin each region in tests: vertices for the
// polyhedra, axis and diagonal points for the ball.
inline std::vector<std::array<double, 3>> extreme_witnesses(RegionLabel r) {
  if (r != RegionLabel::Ball) return region_vertices(r);
  const double d = 1.0 / std::sqrt(3.0);
  std::vector<std::array<double, 3>> out = region_vertices(RegionLabel::Octahedron);
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0})
      for (double s3 : {1.0, -1.0}) out.push_back({s1 * d, s2 * d, s3 * d});
  return out;
}

inline std::array<double, 3> hadamard_point(const std::array<double, 3>& a,
                                            const std::array<double, 3>& b) {
  return {a[0] * b[0], a[1] * b[1], a[2] * b[2]};
}

// Closure of the componentwise product of two regions (convex hull where
// needed). The products form a commutative monoid: the segment is the
// identity, tetrahedron signs multiply, the ball absorbs tetrahedra, two
// balls flatten to the cross-polytope, and the cross-polytope absorbs
// everything.
inline RegionLabel hadamard_product_label(RegionLabel a, RegionLabel b) {
  if (a == RegionLabel::Line) return b;
  if (b == RegionLabel::Line) return a;
  if (a == RegionLabel::Octahedron || b == RegionLabel::Octahedron)
    return RegionLabel::Octahedron;
  if (a == RegionLabel::Ball && b == RegionLabel::Ball)
    return RegionLabel::Octahedron;
  if (a == RegionLabel::Ball || b == RegionLabel::Ball)
    return RegionLabel::Ball;
  // Two tetrahedra: signs multiply.
  const bool same = a == b;
  return same ? RegionLabel::TetraPlus : RegionLabel::TetraMinus;
}

inline RegionLabel hadamard_reduce(const std::vector<RegionLabel>& labels) {
  if (labels.empty()) {
    throw ArgumentError("hadamard_reduce: factor list must be nonempty");
  }
  RegionLabel acc = labels.front();
  for (std::size_t k = 1; k < labels.size(); ++k) {
    acc = hadamard_product_label(acc, labels[k]);
  }
  return acc;
}

// Triple-space region of a single block of the given size. Blocks not
// containing the last qubit see a ball when odd and a tetrahedron of sign
// (-1)^{K/2} when even; the block holding the last qubit sees a ball when
// even, the diagonal segment when a single qubit, and a tetrahedron of
// sign (-1)^{(K-1)/2} when odd and larger.
inline RegionLabel subsystem_region(int size, bool contains_last) {
  if (size < 1) {
    throw ArgumentError("subsystem_region: block size must be positive");
  }
  auto tetra = [](int half_turns) {
    return half_turns % 2 == 0 ? RegionLabel::TetraPlus
                               : RegionLabel::TetraMinus;
  };
  if (!contains_last) {
    if (size % 2 == 1) return RegionLabel::Ball;
    return tetra(size / 2);
  }
  if (size % 2 == 0) return RegionLabel::Ball;
  if (size == 1) return RegionLabel::Line;
  return tetra((size - 1) / 2);
}

// An ordered composition of the qubit line into m >= 2 contiguous blocks;
// the final entry is the block containing the last qubit.
struct Partition {
  std::vector<int> sizes;

  explicit Partition(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.size() < 2) {
      throw ArgumentError("Partition: need at least 2 blocks");
    }
    for (int v : sizes) {
      if (v < 1) throw ArgumentError("Partition: block sizes must be positive");
    }
  }

  int m() const { return static_cast<int>(sizes.size()); }
  int n_qubits() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
  }
  int last_block() const { return sizes.back(); }
};

inline RegionLabel partition_region(const Partition& p) {
  std::vector<RegionLabel> labels;
  labels.reserve(p.sizes.size());
  for (std::size_t k = 0; k < p.sizes.size(); ++k) {
    labels.push_back(
        subsystem_region(p.sizes[k], k + 1 == p.sizes.size()));
  }
  return hadamard_reduce(labels);
}

// Hand-coded classification of a composition into the nine textual cases.
// Overlapping descriptions resolve most-specific-first: a single-qubit or
// odd last block (cases 5, 6) takes precedence over the generic
// one-odd-block case (4), and the all-odd cases (7, 8) require more than
// two blocks. Case 9 is the catch-all.
inline int classify_partition_case(const Partition& p) {
  const int m = p.m();
  const int last = p.last_block();
  int odd_before_last = 0;
  for (int k = 0; k + 1 < m; ++k) {
    if (p.sizes[static_cast<std::size_t>(k)] % 2 == 1) {
      ++odd_before_last;
    }
  }
  if (odd_before_last == 0) {
    if (last % 2 == 0) return 1;
    return last == 1 ? 2 : 3;
  }
  if (odd_before_last == 1) {
    if (last == 1) return 5;
    return last % 2 == 1 ? 6 : 4;
  }
  const bool all_odd = last % 2 == 1 && odd_before_last == m - 1;
  if (m > 2 && all_odd) {
    return last == 1 ? 7 : 8;
  }
  return 9;
}

inline RegionLabel case_region(int case_id, const Partition& p) {
  auto tetra_for = [](int n) {
    return ((n - 1) / 2) % 2 == 0 ? RegionLabel::TetraPlus
                                  : RegionLabel::TetraMinus;
  };
  switch (case_id) {
    case 1: return RegionLabel::Ball;
    case 2:
    case 3: return tetra_for(p.n_qubits());
    case 5:
    case 6: return RegionLabel::Ball;
    case 4:
    case 7:
    case 8:
    case 9: return RegionLabel::Octahedron;
    default:
      throw ArgumentError("case_region: case id outside 1..9");
  }
}

// The full triple-space region at a given qubit count: every physical
// triple lies here.
inline RegionLabel full_set_region(int n_qubits) {
  if (n_qubits % 2 == 0) return RegionLabel::Ball;
  return ((n_qubits - 1) / 2) % 2 == 0 ? RegionLabel::TetraPlus
                                       : RegionLabel::TetraMinus;
}

// All ordered compositions of n into m positive parts.
inline std::vector<Partition> compositions(int n, int m) {
  if (m < 2 || m > n) {
    throw ArgumentError("compositions: need 2 <= m <= n");
  }
  std::vector<Partition> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 1);
  // Walk the compositions in lexicographic order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == m - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int take = 1; take <= remaining - (m - 1 - pos); ++take) {
      cur[static_cast<std::size_t>(pos)] = take;
      self(self, pos + 1, remaining - take);
    }
  };
  rec(rec, 0, n);
  return out;
}

// Region of m-separable guarantor triples: the full set while
// m <= floor(n/2) + 1, and the cross-polytope beyond that threshold.
inline RegionLabel m_separable_region(int n_qubits, int m) {
  if (m < 2 || m > n_qubits) {
    throw ArgumentError("m_separable_region: need 2 <= m <= n_qubits");
  }
  if (m <= n_qubits / 2 + 1) return full_set_region(n_qubits);
  return RegionLabel::Octahedron;
}

// The same region by brute force: the convex hull of the union of
// partition regions over every composition. Each partition region is
// either the full set or the cross-polytope (which the full set contains),
// so the hull is the full set exactly when some composition produces it.
inline RegionLabel m_separable_region_enumerated(int n_qubits, int m) {
  if (m < 2 || m > n_qubits) {
    throw ArgumentError(
        "m_separable_region_enumerated: need 2 <= m <= n_qubits");
  }
  RegionLabel join = RegionLabel::Octahedron;
  bool found_full = false;
  for (const auto& p : compositions(n_qubits, m)) {
    const RegionLabel r = partition_region(p);
    if (r == RegionLabel::Octahedron) continue;
    if (found_full && r != join) {
      throw DomainError(
          "m_separable_region_enumerated: conflicting full-set labels");
    }
    join = r;
    found_full = true;
  }
  return join;
}

// Deterministic samples from a region: the extreme witnesses first, then
// seeded random fill with every fourth point pushed to the boundary.
inline std::vector<std::array<double, 3>> sample_region(RegionLabel r,
                                                        std::uint64_t seed,
                                                        int count) {
  if (count < 1) {
    throw ArgumentError("sample_region: count must be positive");
  }
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (const auto& w : extreme_witnesses(r)) {
    if (static_cast<int>(out.size()) == count) return out;
    out.push_back(w);
  }
  Rng rng(seed);
  auto mixture = [&](const std::vector<std::array<double, 3>>& verts,
                     bool boundary) {
    std::vector<double> w(verts.size());
    double total = 0.0;
    for (auto& v : w) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    if (boundary && w.size() > 1) {
      // Dropping one vertex restricts the mixture to a facet.
      const std::size_t drop = rng.uniform_int(w.size());
      total -= w[drop];
      w[drop] = 0.0;
    }
    std::array<double, 3> x{};
    for (std::size_t k = 0; k < verts.size(); ++k)
      for (int c = 0; c < 3; ++c)
        x[static_cast<std::size_t>(c)] +=
            (w[k] / total) * verts[k][static_cast<std::size_t>(c)];
    return x;
  };
  while (static_cast<int>(out.size()) < count) {
    const bool boundary = out.size() % 4 == 3;
    switch (r) {
      case RegionLabel::Line: {
        const double t = rng.uniform(-1.0, 1.0);
        out.push_back({t, t, 1.0});
        break;
      }
      case RegionLabel::Ball: {
        double x = rng.normal(), y = rng.normal(), z = rng.normal();
        double norm = std::sqrt(x * x + y * y + z * z);
        if (norm < 1e-12) continue;
        const double radius =
            boundary ? 1.0 : std::cbrt(rng.uniform());
        out.push_back({x / norm * radius, y / norm * radius,
                       z / norm * radius});
        break;
      }
      case RegionLabel::TetraPlus:
      case RegionLabel::TetraMinus:
        // Dropping a vertex restricts the mixture to a facet.
        out.push_back(mixture(region_vertices(r), boundary));
        break;
      case RegionLabel::Octahedron: {
        // Facets are triangles, not vertex-deleted hulls, so boundary
        // points come from rescaling onto the unit L1 sphere instead.
        auto x = mixture(region_vertices(r), false);
        if (boundary) {
          const double l1 = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]);
          if (l1 < 1e-12) continue;
          for (auto& v : x) v /= l1;
        }
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace egn
