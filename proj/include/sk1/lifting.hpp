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

#ifndef SK1_LIFTING_HPP
#define SK1_LIFTING_HPP

#include <cstddef>

#include "sk1/elementary.hpp"
#include "sk1/matrix.hpp"
#include "sk1/near_identity.hpp"
#include "sk1/ring.hpp"

namespace sk1 {

/// delta and epsilon for refactoring a K-factor list of n x n matrices.
struct ApproxBudget {
  std::size_t n = 0;
  std::size_t k = 0;
  PositiveFunction delta;
  PositiveFunction epsilon;
};

/// The largest value of 2^(K-1) n^K K delta^K eps * (n-1) over the grid;
/// the budget is sound when this is < 1.
double budget_slack(const ApproxBudget& b);

/// epsilon = 1 / ((n-1) 2^(K-1) n^K K delta^K) / 2 pointwise.
ApproxBudget budget_from_delta(std::size_t n, std::size_t k, const PositiveFunction& delta);

/// delta = (1 + margin) max(1, |entries of A^-1|, |coefficients of F|) pointwise.
/// Rejects K = 0.
ApproxBudget make_budget(const SLMatrix& a, const FactorList& f, double margin = 1e-6);

struct LiftOptions {
  double tol_recon = 1e-9;
  double tol_det = 1e-9;
  double margin = 1e-6;
  SmoothingOptions smoothing;
};

struct LiftResult {
  /// e'_1 ... e'_K followed by the inverted near-identity factorization of E.
  FactorList factors;
  FactorList smoothed;
  FactorList correction;
  ApproxBudget budget;
  /// max |I - E| over the grid.
  double e_distance = 0.0;
  /// max |product(F) - A| for the input list.
  double input_residual = 0.0;
  double residual = 0.0;
};

/// Replaces every grid coefficient of F by a polynomial within the budget's
/// epsilon and corrects the error with a near-identity factorization of
/// E = A^-1 prod(e'). Every returned coefficient is smooth-class.
///
/// F only has to be close enough to A for |I - E| < 1/(n-1); a looser F is
/// reported as a ContractError naming the worst grid point.
LiftResult smooth_lift(const SLMatrix& a, const FactorList& f, const LiftOptions& opts = {});

struct RepresentativeResult {
  /// Smooth-class, det(B) = 1.
  RingMatrix b;
  /// B = A product(E) on the grid.
  FactorList e;
  PositiveFunction epsilon;
  double distance = 0.0;       // max |B - A|
  double scale_distance = 0.0; // max |1/det(B~) - 1|
  double residual = 0.0;       // max |A product(E) - B|
  int attempts = 0;
};

/// A smooth determinant-one B close to A together with E = A^-1 B factored
/// by the near-identity algorithm.
RepresentativeResult smooth_representative(const SLMatrix& a, const LiftOptions& opts = {});

}  // namespace sk1

#endif  // SK1_LIFTING_HPP
