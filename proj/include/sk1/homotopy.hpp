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

#ifndef SK1_HOMOTOPY_HPP
#define SK1_HOMOTOPY_HPP

#include <cstddef>
#include <vector>

#include "sk1/domain.hpp"
#include "sk1/elementary.hpp"
#include "sk1/gauss.hpp"
#include "sk1/matrix.hpp"

namespace sk1 {

/// H over base x [0,1], the time axis being the last grid dimension.
class HomotopyMatrix {
 public:
  /// Entries are scalars or functions on base->with_time(t_res). Checks
  /// det = 1 at every product-grid point.
  static HomotopyMatrix make(RingMatrix h, DomainPtr base, int t_res, double tol_det = 1e-9);

  const SLMatrix& h() const { return h_; }
  std::size_t n() const { return h_.n(); }
  const DomainPtr& base() const { return base_; }
  const DomainPtr& product() const { return product_; }
  int t_res() const { return t_res_; }
  const MatrixField& field() const { return field_; }

  /// Product-grid index of base point x at time index k.
  std::size_t index(std::size_t x, int k) const { return x * static_cast<std::size_t>(t_res_) + static_cast<std::size_t>(k); }
  /// H(., t_k) as grid functions on the base (scalar entries stay scalars).
  RingMatrix slice(int k) const;

 private:
  HomotopyMatrix(SLMatrix h, DomainPtr base, DomainPtr product, int t_res, MatrixField field)
      : h_(std::move(h)), base_(std::move(base)), product_(std::move(product)), t_res_(t_res), field_(std::move(field)) {}

  SLMatrix h_;
  DomainPtr base_;
  DomainPtr product_;
  int t_res_;
  MatrixField field_;
};

/// One set U of the base cover together with its slabs in t.
struct SlicedPatch {
  GridSubset u;
  /// Index of the cover set holding slab k (k = 0..r-1).
  std::vector<std::size_t> cover_sets;
  /// r+1 time functions on the base, 0 = phi_0 <= ... <= phi_r = 1 on u.
  std::vector<GridFunction> breakpoints;
  /// The same breakpoints as t-grid indices, [k][x].
  std::vector<std::vector<int>> breakpoint_index;

  std::size_t slabs() const { return cover_sets.size(); }
};

struct SlicedCover {
  DomainPtr base;
  DomainPtr product;
  int t_res = 0;
  std::vector<SlicedPatch> patches;
};

/// Per base column, a greedy sweep in t picks a chain of cover sets and puts
/// each breakpoint at the middle of the overlap of consecutive sets. U_i
/// collects the columns on which chain i is valid.
///
/// Throws ContractError if the cover misses a point or consecutive sets do
/// not overlap in some column.
SlicedCover slice_cover(const std::vector<GridSubset>& cover);

/// b(x,t) = a(x, clamp(t, lo(x), hi(x))), with a read between t-grid points
/// by linear interpolation. a lives on the product grid, lo and hi on its base.
RingElement clamp_coefficients(const RingElement& a, const RingElement& lo, const RingElement& hi);

/// Telescopes per-slab factor lists (slab k uses slab_lists[k]) into one list
/// valid on u x [0,1]:
///   H'_1 ++ invert(H'_2 at phi_1) ++ H'_2 ++ ... ++ invert(H'_r at phi_{r-1}) ++ H'_r
/// where H'_k has its coefficients clamped to [phi_{k-1}, phi_k].
///
/// Throws VerificationError naming the point where a slab list disagrees
/// with H at one of its slab's boundaries by more than tol.
FactorList glue_patch(const HomotopyMatrix& h, const SlicedPatch& patch, const std::vector<FactorList>& slab_lists,
                      double tol = 1e-9);

/// x -> max(eta(x), phi(x)); both must take values in [0,1].
RingElement retraction(const RingElement& phi, const RingElement& eta);

struct CommutatorStep {
  FactorList g;
  RingElement eta_next;
  double residual = 0.0;
};

/// G = invert(L(., eta) extended off W) ++ L(., max(eta, phi)) on W, where L
/// is the glued list of one patch and phi is snapped to the t-grid.
/// product(G)(x) = H(x,eta(x))^-1 H(x,eta_next(x)) is asserted at every base
/// point (VerificationError on failure).
CommutatorStep commutator_step(const HomotopyMatrix& h, const FactorList& glued, const RingElement& eta,
                               const GridSubset& w, const RingElement& phi, double tol = 1e-9);

/// B = A prod(G_1) ... prod(G_p) pointwise on the base grid.
struct Certificate {
  DomainPtr domain;
  RingMatrix a;
  RingMatrix b;
  std::vector<FactorList> steps;
  double tol_cert = 1e-9;
};

/// max |A prod(G) - B| over the grid; `worst` receives the point.
double certificate_residual(const Certificate& c, std::size_t* worst = nullptr);

struct CertifyOptions {
  CoverOptions cover;
  double tol_recon = 1e-9;
  double tol_cert = 1e-9;
};

struct CertifyResult {
  Certificate certificate;
  std::size_t cover_sets = 0;
  /// Patch dilation actually used (doubled from the requested one until slicing succeeds).
  int dilation = 0;
  std::vector<std::size_t> slabs;       // per sliced patch
  std::vector<double> glue_residuals;   // per sliced patch, over u x [0,1]
  std::vector<double> step_residuals;   // per commutator step
  double residual = 0.0;
};

/// patch cover -> slicing -> gluing -> W' in W in U -> separating functions
/// -> commutator steps from eta = 0 to eta = 1.
CertifyResult homotopy_certificate(const HomotopyMatrix& h, const CertifyOptions& opts = {});

struct ContractibleResult {
  FactorList factors;
  CertifyResult certify;
  double residual = 0.0;
};

/// Contracts the box to x0 through H(x,t) = A((1-t)x + t x0), factors A(x0)
/// pointwise and appends the inverted certificate steps. Rejects masked domains.
ContractibleResult contractible_factorization(const SLMatrix& a, const DomainPtr& domain, const std::vector<double>& x0,
                                              int t_res = 64, const CertifyOptions& opts = {});

}  // namespace sk1

#endif  // SK1_HOMOTOPY_HPP
