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

#ifndef SK1_RING_HPP
#define SK1_RING_HPP

#include <vector>

#include "sk1/domain.hpp"
#include "sk1/ring_element.hpp"

namespace sk1 {

/// A ring element that is strictly positive at every active grid point.
class PositiveFunction {
 public:
  /// The constant 1.
  PositiveFunction() : inner_(RingElement::exact(1)) {}
  /// Throws ContractError naming the first non-positive point.
  explicit PositiveFunction(RingElement inner);

  const RingElement& inner() const { return inner_; }
  double value_at(const Domain& d, std::size_t p) const { return inner_.value_at(d, p); }

 private:
  RingElement inner_;
};

/// max |f| over the active points of d (|value| for scalars).
double sup_norm(const RingElement& f, const Domain& d);

struct SmoothingOptions {
  int start_degree = 2;
  int max_degree = 64;
};

/// Least-squares Chebyshev fit of f whose degree doubles from start_degree
/// until |g - f| < eps holds at every active grid point. Degrees are capped at
/// min(max_degree, resolution - 1) per dimension, and trailing coefficients
/// are pruned while the bound still holds. Polynomial inputs are returned
/// unchanged.
///
/// Throws ContractError when the cap is reached before the bound holds.
PolyFunction approximate_smooth(const RingElement& f, const PositiveFunction& eps,
                                const SmoothingOptions& opts = {});

/// f = d(., X) / (d(., X) + d(., Y)) with Euclidean distances between grid
/// points in domain coordinates: f = 0 exactly on X, 1 exactly on Y.
GridFunction separating_function(const GridSubset& x, const GridSubset& y);

/// Returns V_i subset U_i where every point of V_i has all of its grid
/// neighbours inside U_i, and the V_i still cover the active grid.
///
/// Throws ContractError when the input does not cover or the shrunk sets
/// leave a point uncovered at this resolution.
std::vector<GridSubset> shrink_cover(const std::vector<GridSubset>& cover);

}  // namespace sk1

#endif  // SK1_RING_HPP
