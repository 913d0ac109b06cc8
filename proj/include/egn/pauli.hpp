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

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "egn/config.hpp"
#include "egn/errors.hpp"
#include "egn/matrix.hpp"

namespace egn {

// A tensor product of single-qubit Pauli operators, stored as one index per
// site: 0 = identity, 1..3 = sigma1..sigma3. Site 0 is the leftmost tensor
// factor (the most significant bit of a computational basis index).
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::vector<int> indices) {
    if (indices.empty()) {
      throw ArgumentError("PauliString: index list must be nonempty");
    }
    idx_.reserve(indices.size());
    for (int v : indices) {
      if (v < 0 || v > 3) {
        throw ArgumentError("PauliString: site index " + std::to_string(v) +
                            " outside 0..3");
      }
      idx_.push_back(static_cast<std::uint8_t>(v));
    }
  }

  static PauliString identity(int n_qubits) {
    if (n_qubits < 1) {
      throw ArgumentError("PauliString::identity: n_qubits must be positive");
    }
    PauliString p;
    p.idx_.assign(static_cast<std::size_t>(n_qubits), 0);
    return p;
  }

  int n_qubits() const { return static_cast<int>(idx_.size()); }
  int operator[](int site) const { return idx_[static_cast<std::size_t>(site)]; }
  bool is_identity() const {
    for (auto v : idx_)
      if (v != 0) return false;
    return true;
  }

  // Number of non-identity sites.
  int weight() const {
    int w = 0;
    for (auto v : idx_)
      if (v != 0) ++w;
    return w;
  }

  auto operator<=>(const PauliString&) const = default;

  std::string to_string() const {
    std::string s;
    s.reserve(idx_.size());
    for (auto v : idx_) s.push_back(static_cast<char>('0' + v));
    return s;
  }

  std::vector<int> indices() const {
    return std::vector<int>(idx_.begin(), idx_.end());
  }

 private:
  friend class PauliStringBuilder;
  std::vector<std::uint8_t> idx_;
};

// A Pauli string times a power of i: value = i^phase_exponent * string,
// phase_exponent in {0, 1, 2, 3}.
struct PhasedPauli {
  PauliString string;
  int phase_exponent = 0;

  cplx phase() const {
    static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_exponent & 3];
  }
};

namespace detail {

// Single-site product tables: sigma_a * sigma_b = i^kProdExp[a][b] *
// sigma_{kProdIdx[a][b]}.
inline constexpr int kProdIdx[4][4] = {
    {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
inline constexpr int kProdExp[4][4] = {
    {0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};

}  // namespace detail

inline void check_same_qubits(const PauliString& a, const PauliString& b,
                              const char* what) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(std::string(what) + ": operands act on " +
                         std::to_string(a.n_qubits()) + " and " +
                         std::to_string(b.n_qubits()) + " qubits");
  }
}

inline PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  check_same_qubits(a.string, b.string, "multiply");
  std::vector<int> out(static_cast<std::size_t>(a.string.n_qubits()));
  int exp = a.phase_exponent + b.phase_exponent;
  for (int k = 0; k < a.string.n_qubits(); ++k) {
    const int x = a.string[k];
    const int y = b.string[k];
    out[static_cast<std::size_t>(k)] = detail::kProdIdx[x][y];
    exp += detail::kProdExp[x][y];
  }
  return PhasedPauli{PauliString(std::move(out)), exp & 3};
}

inline PhasedPauli multiply(const PauliString& a, const PauliString& b) {
  return multiply(PhasedPauli{a, 0}, PhasedPauli{b, 0});
}

// Two Pauli strings commute iff the number of sites where both are
// non-identity and different is even; otherwise they anticommute.
inline bool commutes(const PauliString& a, const PauliString& b) {
  check_same_qubits(a, b, "commutes");
  int clashes = 0;
  for (int k = 0; k < a.n_qubits(); ++k) {
    const int x = a[k];
    const int y = b[k];
    if (x != 0 && y != 0 && x != y) ++clashes;
  }
  return (clashes & 1) == 0;
}

// Signed-permutation form of a phased Pauli string: the operator maps basis
// state |j> to i^{exponent(j)} |j ^ flip_mask|>. Site k of the string
// corresponds to bit (n - 1 - k) of a basis index.
struct PauliAction {
  int n_qubits = 0;
  std::uint64_t flip_mask = 0;  // sites holding sigma1 or sigma2
  std::uint64_t z_mask = 0;     // sites holding sigma2 or sigma3
  int base_exponent = 0;        // phase exponent plus one unit per sigma2 site

  std::uint64_t map(std::uint64_t j) const { return j ^ flip_mask; }

  int exponent(std::uint64_t j) const {
    return (base_exponent + 2 * std::popcount(j & z_mask)) & 3;
  }

  cplx coefficient(std::uint64_t j) const {
    static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[exponent(j)];
  }
};

inline PauliAction action_of(const PhasedPauli& p) {
  PauliAction act;
  act.n_qubits = p.string.n_qubits();
  act.base_exponent = p.phase_exponent & 3;
  for (int k = 0; k < act.n_qubits; ++k) {
    const std::uint64_t bit = 1ull << (act.n_qubits - 1 - k);
    const int v = p.string[k];
    if (v == 1 || v == 2) act.flip_mask |= bit;
    if (v == 2 || v == 3) act.z_mask |= bit;
    if (v == 2) act.base_exponent = (act.base_exponent + 1) & 3;
  }
  return act;
}

inline PauliAction action_of(const PauliString& p) {
  return action_of(PhasedPauli{p, 0});
}

inline Matrix dense_matrix(const PhasedPauli& p) {
  check_qubit_guard(p.string.n_qubits(), "dense_matrix");
  const PauliAction act = action_of(p);
  const std::size_t dim = 1ull << p.string.n_qubits();
  Matrix m(dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    m(act.map(j), j) = act.coefficient(j);
  }
  return m;
}

inline Matrix dense_matrix(const PauliString& p) {
  return dense_matrix(PhasedPauli{p, 0});
}

// P rho P^dagger for a phased Pauli string, as an index remap with phases:
// the (map(j), map(k)) entry of the result is i^{e(j) - e(k)} rho_{jk}.
inline Matrix conjugate_matrix(const Matrix& rho, const PhasedPauli& p) {
  const std::size_t dim = 1ull << p.string.n_qubits();
  if (rho.dim() != dim) {
    throw DimensionError("conjugate_matrix: matrix dimension " +
                         std::to_string(rho.dim()) +
                         " does not match 2^n_qubits = " + std::to_string(dim));
  }
  const PauliAction act = action_of(p);
  static constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Matrix out(dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    const int ej = act.exponent(j);
    const std::uint64_t mj = act.map(j);
    for (std::uint64_t k = 0; k < dim; ++k) {
      const cplx v = rho(j, k);
      if (v == 0.0) continue;
      out(mj, act.map(k)) = table[(ej - act.exponent(k)) & 3] * v;
    }
  }
  return out;
}

inline Matrix conjugate_matrix(const Matrix& rho, const PauliString& p) {
  return conjugate_matrix(rho, PhasedPauli{p, 0});
}

// All 2^g distinct subset products of the given generators, in layered
// order: the identity, then single generators, then ordered pairs
// P_{i2} P_{i1} with i1 < i2, and so on. Within a layer, subsets are
// enumerated in lexicographic order of their sorted index tuples.
inline std::vector<PhasedPauli> generate_group(
    const std::vector<PauliString>& generators, int n_qubits) {
  if (n_qubits < 1) {
    throw ArgumentError("generate_group: n_qubits must be positive");
  }
  if (generators.size() > 20) {
    throw ArgumentError("generate_group: more than 20 generators");
  }
  for (const auto& g : generators) {
    if (g.n_qubits() != n_qubits) {
      throw DimensionError("generate_group: generator acts on " +
                           std::to_string(g.n_qubits()) + " qubits, expected " +
                           std::to_string(n_qubits));
    }
  }
  const int g = static_cast<int>(generators.size());
  const std::uint64_t count = 1ull << g;

  // products[mask] = product over set bits, highest generator index applied
  // last (leftmost factor). Each mask reuses the product of itself minus its
  // top bit.
  std::vector<PhasedPauli> products(count);
  products[0] = PhasedPauli{PauliString::identity(n_qubits), 0};
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const int top = 63 - std::countl_zero(mask);
    const std::uint64_t rest = mask & ~(1ull << top);
    products[mask] =
        multiply(PhasedPauli{generators[static_cast<std::size_t>(top)], 0},
                 products[rest]);
  }

  // Reorder by (popcount, lexicographic subset tuple). For equal sizes, the
  // sorted index tuples compare lexicographically at the lowest bit position
  // where the two masks differ: the mask containing that position comes
  // first.
  std::vector<std::uint64_t> masks(count);
  for (std::uint64_t m = 0; m < count; ++m) masks[m] = m;
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    const std::uint64_t low = diff & (0ull - diff);
    return (a & low) != 0;
  });

  std::vector<PhasedPauli> out;
  out.reserve(count);
  for (std::uint64_t m : masks) out.push_back(std::move(products[m]));
  return out;
}

}  // namespace egn
