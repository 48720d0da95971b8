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

#ifndef SK1_SERIALIZE_HPP
#define SK1_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sk1/elementary.hpp"
#include "sk1/homotopy.hpp"

namespace sk1 {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Entries: "11/10" is an exact scalar, 0.5 a float scalar,
// {"poly": [{"c": "3/2", "e": [1, 0]}, ...]} a polynomial in monomials,
// {"cheb": {"degree": [...], "coeffs": [...]}, "den": [...]} a polynomial
// (or fraction) in the Chebyshev basis, {"grid": [...]} grid values in
// row-major order. Exactness follows the coefficient type: strings are exact.

DomainPtr domain_from_json(const json& j);
json domain_to_json(const DomainPtr& d);

RingElement element_from_json(const json& j, const DomainPtr& d);
json element_to_json(const RingElement& e);

/// Rows of entries, or {"factors": [...]} expanded by multiplication.
RingMatrix matrix_from_json(const json& j, const DomainPtr& d, std::size_t n);
json matrix_to_json(const RingMatrix& m);

/// [{"i": 1, "j": 2, "r": entry}, ...]
FactorList factors_from_json(const json& j, const DomainPtr& d, std::size_t n);
json factors_to_json(const FactorList& fl);

struct Params {
  double tol_recon = 1e-9;
  double tol_det = 1e-9;
  double tol_cert = 1e-9;
  double pivot_floor = 1e-3;
  double margin = 1e-6;
  int max_degree = 64;
  int t_res = 64;
  int dilation = 3;
  std::optional<std::uint64_t> seed;
};

/// Overwrites fields present in j ("tol_recon", "pivot_floor", ...).
void merge_params(Params& p, const json& j);
json params_to_json(const Params& p);

struct Problem {
  int version = kFormatVersion;
  std::string mode;
  DomainPtr domain;
  std::size_t n = 0;
  std::optional<RingMatrix> matrix;
  /// Input factorization F for smooth lifting.
  std::optional<FactorList> factors;
  /// Entries on domain x [0,1]; the last variable is time.
  std::optional<RingMatrix> homotopy;
  std::vector<double> basepoint;
  Params params;
};

Problem problem_from_json(const json& j);

Certificate certificate_from_json(const json& j);
json certificate_to_json(const Certificate& c);

}  // namespace sk1

#endif  // SK1_SERIALIZE_HPP
