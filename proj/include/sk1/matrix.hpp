// Copyright 2026 The sk1 Authors
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

#ifndef SK1_MATRIX_HPP
#define SK1_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "sk1/ring_element.hpp"

namespace sk1 {

/// Dense row-major n x n matrix, 0-based.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T()) : n_(n), a_(n * n, fill) {}

  std::size_t n() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::vector<T>& data() { return a_; }
  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using RingMatrix = SquareMatrix<RingElement>;

RingMatrix identity_matrix(std::size_t n, const RingTag& tag);
RingMatrix multiply(const RingMatrix& a, const RingMatrix& b);
RingMatrix subtract(const RingMatrix& a, const RingMatrix& b);
/// Join of all entry tags.
RingTag tag_of(const RingMatrix& m);
RingMatrix promote(const RingMatrix& m, const RingTag& tag);

/// Symbolic determinant by cofactor expansion (intended for n <= 6).
RingElement determinant(const RingMatrix& m);
/// Symbolic adjugate; equals the inverse when det = 1.
RingMatrix adjugate(const RingMatrix& m);

/// Matrices sampled at every grid point of a domain: n*n doubles per point.
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(std::size_t n, DomainPtr domain);

  std::size_t n() const { return n_; }
  const DomainPtr& domain() const { return domain_; }
  std::span<double> at(std::size_t p) { return {data_.data() + p * n_ * n_, n_ * n_}; }
  std::span<const double> at(std::size_t p) const { return {data_.data() + p * n_ * n_, n_ * n_}; }

 private:
  std::size_t n_ = 0;
  DomainPtr domain_;
  std::vector<double> data_;
};

/// Samples every entry on `domain` (scalars broadcast).
MatrixField sample(const RingMatrix& m, const DomainPtr& domain);

/// The domain a matrix lives on: the first non-scalar entry's domain, or null.
DomainPtr matrix_domain(const RingMatrix& m);

/// Max over entries of |entry|, over active grid points for functions.
double max_norm(const RingMatrix& m);

/// Determinant-one check: exact for exact entries, pointwise within tol_det
/// otherwise. Throws ContractError naming the first failing point.
void check_determinant_one(const RingMatrix& m, double tol_det);

/// A matrix with the special-linear contract.
class SLMatrix {
 public:
  /// Verifies det = 1 (see check_determinant_one).
  static SLMatrix checked(RingMatrix m, double tol_det);
  /// Wraps without checking; det_checked() reports false.
  static SLMatrix unchecked(RingMatrix m);
  static SLMatrix identity(std::size_t n, const RingTag& tag);

  std::size_t n() const { return m_.n(); }
  const RingMatrix& entries() const { return m_; }
  const RingElement& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  bool det_checked() const { return det_checked_; }
  RingTag tag() const { return tag_of(m_); }

 private:
  SLMatrix(RingMatrix m, bool checked) : m_(std::move(m)), det_checked_(checked) {}
  RingMatrix m_;
  bool det_checked_ = false;
};

namespace dense {

/// Plain double helpers on row-major n x n spans.
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out, std::size_t n);
double determinant(std::span<const double> a, std::size_t n);
/// Returns false when singular.
bool inverse(std::span<const double> a, std::span<double> out, std::size_t n);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace dense

}  // namespace sk1

#endif  // SK1_MATRIX_HPP
