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

#include <stdexcept>
#include <string>

namespace egn {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller-supplied value violates a documented precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Two operands have incompatible dimensions or qubit counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A request exceeds the configured qubit guard (see max_qubits()).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but lies outside the mathematical domain of the
// operation (e.g. an unphysical correlation triple fed to a measure).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A matrix fails the density-matrix invariants (hermiticity, unit trace,
// positive semidefiniteness) beyond the documented tolerances.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// A correlation tensor does not correspond to any physical state. Carries
// the offending minimum eigenvalue of the reconstructed matrix.
class UnphysicalTensorError : public InvalidStateError {
 public:
  UnphysicalTensorError(const std::string& msg, double min_eigenvalue)
      : InvalidStateError(msg), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// A projection spec fails verification where a verified spec is required,
// or no working generator variant exists during construction.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or does not match the documented schema.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace egn
