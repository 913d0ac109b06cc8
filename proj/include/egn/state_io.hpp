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

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "egn/config.hpp"
#include "egn/enip.hpp"
#include "egn/errors.hpp"
#include "egn/matrix.hpp"
#include "egn/pauli.hpp"
#include "egn/state.hpp"

namespace egn {

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("invalid JSON in " + path + ": " + e.what());
  }
}

inline int parse_n_qubits(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n_qubits") ||
      !j["n_qubits"].is_number_integer()) {
    throw IoError("missing or non-integer \"n_qubits\"");
  }
  const auto n = j["n_qubits"].get<std::int64_t>();
  if (n < 1 || n > 24) {
    throw IoError("\"n_qubits\" out of range");
  }
  return static_cast<int>(n);
}

inline PauliString parse_pauli_entry(const nlohmann::json& arr, int n,
                                     const std::string& key) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(n)) {
    throw IoError("\"" + key + "\" entry must be an array of " +
                  std::to_string(n) + " site labels");
  }
  std::vector<int> sites;
  sites.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw IoError("\"" + key + "\" entry holds a non-integer site label");
    }
    const auto s = v.get<std::int64_t>();
    if (s < 0 || s > 3) {
      throw IoError("\"" + key + "\" site labels must be 0..3");
    }
    sites.push_back(static_cast<int>(s));
  }
  return PauliString(std::move(sites));
}

inline Matrix parse_matrix_part(const nlohmann::json& part, std::size_t dim,
                                const std::string& key) {
  if (!part.is_array() || part.size() != dim) {
    throw IoError("\"" + key + "\" must be a " + std::to_string(dim) + "x" +
                  std::to_string(dim) + " array");
  }
  Matrix out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto& row = part[r];
    if (!row.is_array() || row.size() != dim) {
      throw IoError("\"" + key + "\" row " + std::to_string(r) +
                    " has the wrong length");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw IoError("\"" + key + "\" holds a non-numeric entry");
      }
      out(r, c) = row[c].get<double>();
    }
  }
  return out;
}

}  // namespace detail

// State files carry either a dense matrix or a sparse correlation tensor:
//   {"n_qubits": 2, "matrix": {"re": [[...]], "im": [[...]]}}
//   {"n_qubits": 2, "tensor": [{"alpha": [3, 3], "value": 1.0}, ...]}
// "im" defaults to zero. The all-zero alpha defaults to 1 when omitted.
inline DensityMatrix parse_state(const nlohmann::json& j) {
  const int n = detail::parse_n_qubits(j);
  const bool has_matrix = j.contains("matrix");
  const bool has_tensor = j.contains("tensor");
  if (has_matrix == has_tensor) {
    throw IoError("state must carry exactly one of \"matrix\" or \"tensor\"");
  }

  if (has_matrix) {
    check_qubit_guard(n, "parse_state");
    const std::size_t dim = std::size_t{1} << n;
    const auto& m = j["matrix"];
    if (!m.is_object() || !m.contains("re")) {
      throw IoError("\"matrix\" must be an object with \"re\"");
    }
    const Matrix re = detail::parse_matrix_part(m["re"], dim, "re");
    Matrix full = re;
    if (m.contains("im")) {
      const Matrix im = detail::parse_matrix_part(m["im"], dim, "im");
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          full(r, c) = cplx(re(r, c).real(), im(r, c).real());
        }
      }
    }
    return DensityMatrix(n, std::move(full));
  }

  const auto& entries = j["tensor"];
  if (!entries.is_array()) {
    throw IoError("\"tensor\" must be an array of {alpha, value} objects");
  }
  std::map<PauliString, double> map;
  for (const auto& entry : entries) {
    if (!entry.is_object() || !entry.contains("alpha") ||
        !entry.contains("value") || !entry["value"].is_number()) {
      throw IoError("\"tensor\" entries need \"alpha\" and numeric \"value\"");
    }
    PauliString alpha = detail::parse_pauli_entry(entry["alpha"], n, "alpha");
    const double value = entry["value"].get<double>();
    if (!map.emplace(std::move(alpha), value).second) {
      throw IoError("\"tensor\" lists alpha " +
                    detail::parse_pauli_entry(entry["alpha"], n, "alpha")
                        .to_string() +
                    " twice");
    }
  }
  return from_bloch(CorrelationTensor(n, std::move(map)));
}

inline DensityMatrix load_state(const std::string& path) {
  return parse_state(detail::parse_json_file(path));
}

// Projection group files:
//   {"n_qubits": 3, "generators": [[3,3,0], ...], "surviving": [[0,0,0], ...]}
inline EnipSpec parse_enip_spec(const nlohmann::json& j) {
  const int n = detail::parse_n_qubits(j);
  if (!j.contains("generators") || !j["generators"].is_array() ||
      !j.contains("surviving") || !j["surviving"].is_array()) {
    throw IoError("spec needs array fields \"generators\" and \"surviving\"");
  }
  std::vector<PauliString> generators;
  for (const auto& g : j["generators"]) {
    generators.push_back(detail::parse_pauli_entry(g, n, "generators"));
  }
  std::vector<PauliString> surviving;
  for (const auto& s : j["surviving"]) {
    surviving.push_back(detail::parse_pauli_entry(s, n, "surviving"));
  }
  return EnipSpec(n, std::move(surviving), std::move(generators));
}

inline EnipSpec load_enip_spec(const std::string& path) {
  return parse_enip_spec(detail::parse_json_file(path));
}

}  // namespace egn
