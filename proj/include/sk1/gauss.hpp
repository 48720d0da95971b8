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

#ifndef SK1_GAUSS_HPP
#define SK1_GAUSS_HPP

#include <optional>
#include <span>
#include <vector>

#include "sk1/domain.hpp"
#include "sk1/elementary.hpp"
#include "sk1/matrix.hpp"

namespace sk1 {

struct PatchFactorization {
  GridSubset patch;
  /// Pivot row (1-based) chosen at stages 1..n-1.
  std::vector<int> pivot_sequence;
  /// Grid coefficients; values outside the patch carry no meaning.
  FactorList factors;
  double pivot_floor = 1e-3;
};

/// Elimination with partial pivoting by maximum absolute value. Row
/// exchanges are realised by signed swaps so every step stays in SL(n).
/// Entries must be scalars; exact input gives an exact factorization.
FactorList factor_pointwise(const SLMatrix& a);

/// One pivot sequence for every point of `patch`. If `sequence` is empty the
/// stage-wise choice maximises the smallest pivot magnitude over the patch.
///
/// Throws ContractError naming the stage and point when a pivot drops below
/// the floor.
PatchFactorization factor_patch(const SLMatrix& a, const GridSubset& patch, double pivot_floor = 1e-3,
                                const std::vector<int>& sequence = {});

struct CoverOptions {
  double pivot_floor = 1e-3;
  /// Grid steps each greedy group is grown by, so neighbouring patches overlap.
  int dilation = 3;
};

/// Groups grid points by their greedy pivot sequence, grows each group while
/// the group's sequence keeps every pivot above the floor, and factors each
/// patch. Patches are ordered by their first grid point. `domain` defaults
/// to the matrix's own domain and is required when every entry is a scalar.
std::vector<PatchFactorization> build_patch_cover(const SLMatrix& h, const CoverOptions& opts = {},
                                                  DomainPtr domain = nullptr);

/// Greedy max-pivot sequence of a sampled matrix (row-major, n*n); empty
/// optional if some pivot falls below the floor.
std::optional<std::vector<int>> greedy_pivot_sequence(std::span<const double> a, std::size_t n, double pivot_floor);

/// Smallest pivot magnitude of a forced sequence on a sampled matrix.
double min_pivot_for(std::span<const double> a, std::size_t n, const std::vector<int>& sequence);

}  // namespace sk1

#endif  // SK1_GAUSS_HPP
