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
#include <string>
#include <utility>
#include <vector>

#include "egn/config.hpp"
#include "egn/errors.hpp"
#include "egn/pauli.hpp"
#include "egn/state.hpp"

namespace egn {

// An entanglement-non-increasing projection: a generator list whose subset
// products form the conjugation group, together with the set of Pauli
// strings expected to survive the averaging (the strings commuting with the
// whole group). The surviving list is kept sorted and deduplicated and must
// contain the all-zero string, which always survives.
struct EnipSpec {
  int n_qubits = 0;
  std::vector<PauliString> surviving;
  std::vector<PauliString> generators;

  EnipSpec(int n, std::vector<PauliString> surv, std::vector<PauliString> gens)
      : n_qubits(n), surviving(std::move(surv)), generators(std::move(gens)) {
    check_qubit_guard(n_qubits, "EnipSpec");
    for (const auto& s : surviving) {
      if (s.n_qubits() != n_qubits) {
        throw DimensionError("EnipSpec: surviving string " + s.to_string() +
                             " acts on the wrong number of qubits");
      }
    }
    for (const auto& g : generators) {
      if (g.n_qubits() != n_qubits) {
        throw DimensionError("EnipSpec: generator " + g.to_string() +
                             " acts on the wrong number of qubits");
      }
    }
    std::sort(surviving.begin(), surviving.end());
    surviving.erase(std::unique(surviving.begin(), surviving.end()),
                    surviving.end());
    if (surviving.empty() || !surviving.front().is_identity()) {
      throw ArgumentError(
          "EnipSpec: surviving set must contain the all-zero string");
    }
  }
};

struct VerificationReport {
  bool distinct = false;
  bool surviving_matches = false;
  std::size_t group_size = 0;
  int n_generators = 0;
  std::vector<PauliString> computed_surviving;
  // Which generator layout a standard constructor settled on, when
  // applicable ("single-site" or "pair"); empty for user-supplied specs.
  std::string variant;

  bool ok() const { return distinct && surviving_matches; }
};

// Brute-force check of the two defining conditions: the subset products are
// pairwise distinct (as strings; phases do not affect conjugation), and the
// strings commuting with every group element are exactly the declared
// surviving set. The scan walks all 4^N strings and quits a string at its
// first anticommutation, so non-survivors are cheap.
inline VerificationReport verify_spec(const EnipSpec& spec) {
  check_qubit_guard(spec.n_qubits, "verify_spec");
  VerificationReport report;
  report.n_generators = static_cast<int>(spec.generators.size());

  const auto group = generate_group(spec.generators, spec.n_qubits);
  report.group_size = group.size();

  std::vector<PauliString> strings;
  strings.reserve(group.size());
  for (const auto& e : group) strings.push_back(e.string);
  std::sort(strings.begin(), strings.end());
  report.distinct =
      std::adjacent_find(strings.begin(), strings.end()) == strings.end();

  const int n = spec.n_qubits;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    PauliString alpha(idx);
    bool survives = true;
    for (const auto& e : group) {
      if (!commutes(alpha, e.string)) {
        survives = false;
        break;
      }
    }
    if (survives) report.computed_surviving.push_back(alpha);
    int k = n - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == 3) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
  }
  // computed_surviving is generated in sorted order; spec.surviving is
  // sorted by construction.
  report.surviving_matches = report.computed_surviving == spec.surviving;
  return report;
}

namespace detail {

inline std::vector<PauliString> standard_surviving(int n) {
  std::vector<int> a(static_cast<std::size_t>(n), 1);
  a.back() = 2;
  std::vector<int> b(static_cast<std::size_t>(n), 2);
  std::vector<int> c(static_cast<std::size_t>(n), 3);
  c.back() = 0;
  return {PauliString::identity(n), PauliString(a), PauliString(b),
          PauliString(c)};
}

inline std::vector<PauliString> standard_generators(int n, bool pair_variant) {
  std::vector<PauliString> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 3;
    v[static_cast<std::size_t>(i + 1)] = 3;
    gens.emplace_back(v);
  }
  for (int i = 0; i + 2 < n; ++i) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 2;
    v[static_cast<std::size_t>(i + 1)] = 2;
    gens.emplace_back(v);
  }
  std::vector<int> last(static_cast<std::size_t>(n), 0);
  last.back() = 2;
  if (pair_variant && n >= 2) {
    last[static_cast<std::size_t>(n - 2)] = 2;
  }
  gens.emplace_back(last);
  return gens;
}

}  // namespace detail

// The standard guarantor-family projection spec: sigma3 pairs on adjacent
// sites, sigma2 pairs on adjacent sites short of the last, and a final
// sigma2 factor. The final factor is applied to qubit N alone; if that
// layout fails verification, a sigma2 (x) sigma2 pair on (N-1, N) is tried
// before giving up. The chosen layout lands in report->variant.
inline EnipSpec standard_egn_spec(int n_qubits,
                                  VerificationReport* report = nullptr) {
  if (n_qubits < 2) {
    throw ArgumentError("standard_egn_spec: n_qubits must be at least 2");
  }
  check_qubit_guard(n_qubits, "standard_egn_spec");
  const auto surviving = detail::standard_surviving(n_qubits);

  EnipSpec single(n_qubits, surviving,
                  detail::standard_generators(n_qubits, false));
  VerificationReport r = verify_spec(single);
  if (r.ok()) {
    r.variant = "single-site";
    if (report) *report = r;
    return single;
  }

  EnipSpec pair(n_qubits, surviving,
                detail::standard_generators(n_qubits, true));
  VerificationReport r2 = verify_spec(pair);
  if (r2.ok()) {
    r2.variant = "pair";
    if (report) *report = r2;
    return pair;
  }

  const VerificationReport& bad = r;
  throw InvalidSpecError(
      std::string("standard_egn_spec: no generator variant verifies; ") +
      (!bad.distinct ? "group elements are not distinct"
                     : "surviving set does not match the commutant"));
}

namespace detail {

inline void require_verified(const EnipSpec& spec, const char* what) {
  const VerificationReport r = verify_spec(spec);
  if (!r.ok()) {
    throw InvalidSpecError(
        std::string(what) + ": spec fails verification (" +
        (!r.distinct ? "group elements are not distinct"
                     : "surviving set does not match the commutant") +
        ")");
  }
}

inline void check_state_matches(const DensityMatrix& rho, const EnipSpec& spec,
                                const char* what) {
  if (rho.n_qubits() != spec.n_qubits) {
    throw DimensionError(std::string(what) + ": state has " +
                         std::to_string(rho.n_qubits()) + " qubits, spec has " +
                         std::to_string(spec.n_qubits));
  }
}

inline Matrix recursive_fold(const Matrix& rho, const EnipSpec& spec) {
  Matrix cur = rho;
  for (const auto& g : spec.generators) {
    Matrix conj = conjugate_matrix(cur, g);
    cur += conj;
    cur *= cplx(0.5, 0.0);
  }
  return cur;
}

}  // namespace detail

// Average of P rho P^dagger over every group element. For more than five
// qubits the group is large and the generator recursion (which gives the
// same operator, since each averaging step commutes with the rest of the
// group) is used internally instead of materializing all conjugations.
inline DensityMatrix project_group_average(const DensityMatrix& rho,
                                           const EnipSpec& spec) {
  detail::check_state_matches(rho, spec, "project_group_average");
  detail::require_verified(spec, "project_group_average");
  if (spec.n_qubits > 5) {
    return DensityMatrix(spec.n_qubits,
                         detail::recursive_fold(rho.matrix(), spec));
  }
  const auto group = generate_group(spec.generators, spec.n_qubits);
  Matrix acc(rho.matrix().dim());
  for (const auto& e : group) {
    acc += conjugate_matrix(rho.matrix(), e);
  }
  acc *= cplx(1.0 / static_cast<double>(group.size()), 0.0);
  return DensityMatrix(spec.n_qubits, std::move(acc));
}

// rho_i = (rho_{i-1} + P_i rho_{i-1} P_i^dagger) / 2, folded over the
// generators in order.
inline DensityMatrix project_recursive(const DensityMatrix& rho,
                                       const EnipSpec& spec) {
  detail::check_state_matches(rho, spec, "project_recursive");
  detail::require_verified(spec, "project_recursive");
  return DensityMatrix(spec.n_qubits,
                       detail::recursive_fold(rho.matrix(), spec));
}

}  // namespace egn
