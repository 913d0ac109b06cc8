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
#include <complex>
#include <cstddef>
#include <vector>

#include "egn/errors.hpp"

namespace egn {

using cplx = std::complex<double>;

// Dense square complex matrix, row major. Sized for dimensions up to a few
// thousand; everything in this library lives at dim <= 2^max_qubits.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * dim_ + j];
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_dim(o, "operator+=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_dim(o, "operator-=");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }

  Matrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same_dim(b, "matrix product");
    const std::size_t n = a.dim_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == 0.0) continue;
        const cplx* brow = &b.a_[k * n];
        cplx* crow = &c.a_[i * n];
        for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  // Largest elementwise deviation from the adjoint.
  double hermiticity_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return dev;
  }

  double max_abs_diff(const Matrix& o) const {
    check_same_dim(o, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k)
      m = std::max(m, std::abs(a_[k] - o.a_[k]));
    return m;
  }

 private:
  void check_same_dim(const Matrix& o, const char* what) const {
    if (dim_ != o.dim_) {
      throw DimensionError(std::string(what) + ": dimensions " +
                           std::to_string(dim_) + " and " +
                           std::to_string(o.dim_) + " differ");
    }
  }

  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  Matrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

}  // namespace egn
