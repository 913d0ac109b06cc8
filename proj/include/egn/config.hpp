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

#include <cstdlib>

#include "egn/errors.hpp"

namespace egn {

// Upper bound on the qubit count for dense operations. Defaults to 10 and
// can be overridden through the EGN_MAX_QUBITS environment variable (read
// once per process, clamped to a sane range).
inline int max_qubits() {
  static const int value = [] {
    if (const char* s = std::getenv("EGN_MAX_QUBITS")) {
      char* end = nullptr;
      long n = std::strtol(s, &end, 10);
      if (end != s && *end == '\0' && n >= 1 && n <= 24) {
        return static_cast<int>(n);
      }
    }
    return 10;
  }();
  return value;
}

inline void check_qubit_guard(int n_qubits, const char* what) {
  if (n_qubits < 1) {
    throw ArgumentError(std::string(what) + ": n_qubits must be at least 1");
  }
  if (n_qubits > max_qubits()) {
    throw SizeError(std::string(what) + ": n_qubits " +
                    std::to_string(n_qubits) + " exceeds the guard of " +
                    std::to_string(max_qubits()) +
                    " (set EGN_MAX_QUBITS to raise it)");
  }
}

}  // namespace egn
