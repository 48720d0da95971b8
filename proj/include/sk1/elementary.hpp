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

#ifndef SK1_ELEMENTARY_HPP
#define SK1_ELEMENTARY_HPP

#include <cstddef>
#include <vector>

#include "sk1/matrix.hpp"
#include "sk1/ring_element.hpp"

namespace sk1 {

/// e(i, j; r): the identity with r in the (i, j) spot. Indices are 1-based.
struct ElementaryFactor {
  int i = 1;
  int j = 2;
  RingElement r;
};

/// An ordered product e_1 e_2 ... e_K of elementary factors, multiplied left
/// to right, with a declared ambient size and a common coefficient ring.
class FactorList {
 public:
  FactorList(std::size_t n, RingTag ring);
  FactorList(std::size_t n, RingTag ring, std::vector<ElementaryFactor> factors);

  std::size_t n() const { return n_; }
  const RingTag& ring() const { return ring_; }
  const std::vector<ElementaryFactor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  /// Appends e(i, j; r); r is embedded into the list's ring.
  void push(int i, int j, const RingElement& r);
  void append(const FactorList& other);

  /// The same list with every coefficient embedded into `ring`.
  FactorList promoted(const RingTag& ring) const;

 private:
  std::size_t n_;
  RingTag ring_;
  std::vector<ElementaryFactor> factors_;
};

/// The n x n matrix of e(i, j; r).
RingMatrix elem_matrix(const ElementaryFactor& f, std::size_t n);

/// [e(i,j;1), e(j,i;-1), e(i,j;1)], whose product is the signed swap c(i,j):
/// +1 at (i,j), -1 at (j,i), identity elsewhere outside rows i and j.
FactorList factor_c(int i, int j, std::size_t n, const RingTag& ring = RingTag::exact_scalar());

/// [e(i,j;r), e(j,i;-1/r), e(i,j;r)] followed by factor_c(j,i); the product is
/// diag(..., r at i, ..., 1/r at j, ...). r must be a unit.
FactorList factor_m(int i, int j, const RingElement& r, std::size_t n);
/// As above with the inverse supplied by the caller (used when r is only a
/// unit on part of its domain, e.g. a patch of a grid).
FactorList factor_m(int i, int j, const RingElement& r, const RingElement& r_inv, std::size_t n);

/// Left-to-right product; the identity for an empty list.
RingMatrix product(const FactorList& fl);

/// Reversed list with negated coefficients.
FactorList invert(const FactorList& fl);

FactorList concat(const FactorList& a, const FactorList& b);

/// product(fl) evaluated numerically at every active point of `d` (or at the
/// single point of a domain-less scalar list when d is null).
MatrixField product_field(const FactorList& fl, const DomainPtr& d);

/// Max over active points and entries of |product(fl) - target|. `worst`
/// receives the point attaining it.
double reconstruction_residual(const FactorList& fl, const RingMatrix& target, const DomainPtr& d,
                               std::size_t* worst = nullptr);

/// The signed swap matrix c(i,j) built directly from its definition.
RingMatrix signed_swap(int i, int j, std::size_t n, const RingTag& ring);

}  // namespace sk1

#endif  // SK1_ELEMENTARY_HPP
