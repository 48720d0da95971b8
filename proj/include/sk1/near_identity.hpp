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

#ifndef SK1_NEAR_IDENTITY_HPP
#define SK1_NEAR_IDENTITY_HPP

#include <cstddef>
#include <vector>

#include "sk1/elementary.hpp"
#include "sk1/matrix.hpp"

namespace sk1 {

/// I + A with |a_ij| < 1/(n-1) everywhere on the grid.
struct NearIdentityInput {
  SLMatrix m;
  bool bound_checked = false;

  /// Checks det = 1 and the entry bound; throws ContractError otherwise.
  static NearIdentityInput make(RingMatrix m, double tol_det = 1e-9);
};

/// Throws ContractError naming the entry and grid point where
/// |m_ij - delta_ij| >= 1/(n-1). Equality is rejected.
void check_near_identity_bound(const RingMatrix& m);

struct StageRecord {
  std::size_t stage = 0;  // 1-based
  RingElement pivot;
  double min_pivot = 0.0;
  /// max |X_ij - delta_ij| over the trailing block after this stage.
  double residual = 0.0;
  /// 1/(n-1-stage); infinity for the last stage.
  double residual_limit = 0.0;
};

struct EliminationTrace {
  std::vector<StageRecord> stages;

  bool bounds_hold() const;
  bool pivots_positive() const;
};

struct NearIdentityResult {
  FactorList factors;
  EliminationTrace trace;
};

/// Row-then-column elimination followed by m(k,k+1;u_1...u_k) diagonal fixes.
NearIdentityResult factor_near_identity(const NearIdentityInput& in);

/// (n-1)(n+6).
std::size_t factor_count_bound(std::size_t n);

}  // namespace sk1

#endif  // SK1_NEAR_IDENTITY_HPP
