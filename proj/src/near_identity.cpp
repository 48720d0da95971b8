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

#include "sk1/near_identity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

struct Op {
  std::size_t i;
  std::size_t j;
  RingElement r;
};

std::string entry_name(std::size_t i, std::size_t j) {
  return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// Largest |e| and smallest e over the element's grid (or its single value).
std::pair<double, double> extremes(const RingElement& e) {
  if (e.kind() == Kind::Scalar) {
    const double v = e.scalar().to_double();
    return {std::fabs(v), v};
  }
  const auto d = e.domain();
  const auto vals = e.sample(*d);
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (auto p : d->active_points()) {
    hi = std::max(hi, std::fabs(vals[p]));
    lo = std::min(lo, vals[p]);
  }
  return {hi, lo};
}

}  // namespace

void check_near_identity_bound(const RingMatrix& m) {
  const std::size_t n = m.n();
  if (n <= 1) return;
  const Rational limit(1, static_cast<long>(n - 1));
  const double limit_d = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement a = i == j ? m(i, j) - one(tag_of(m(i, j))) : m(i, j);
      auto fail = [&](const std::string& value, const std::string& where) {
        std::ostringstream os;
        os << "near-identity bound violated: |a| = " << value << " >= 1/" << (n - 1) << " at " << entry_name(i, j)
           << where;
        throw ContractError(os.str());
      };
      if (a.kind() == Kind::Scalar) {
        const Scalar& s = a.scalar();
        if (s.is_exact()) {
          if (abs(s.rational()) >= limit) fail(format_rational(abs(s.rational())), "");
        } else if (!(std::fabs(s.to_double()) < limit_d)) {
          fail(s.abs().to_string(), "");
        }
        continue;
      }
      const auto d = a.domain();
      const bool exact_poly = a.kind() == Kind::Poly && a.backend() == Backend::Exact;
      const auto vals = a.sample(*d);
      for (auto p : d->active_points()) {
        if (exact_poly) {
          const Rational v = abs(a.poly().exact_value_at(p));
          if (v >= limit) fail(format_rational(v), ", " + d->describe_point(p));
        } else if (!(std::fabs(vals[p]) < limit_d)) {
          std::ostringstream v;
          v.precision(17);
          v << std::fabs(vals[p]);
          fail(v.str(), ", " + d->describe_point(p));
        }
      }
    }
}

NearIdentityInput NearIdentityInput::make(RingMatrix m, double tol_det) {
  check_near_identity_bound(m);
  return {SLMatrix::checked(std::move(m), tol_det), true};
}

bool EliminationTrace::bounds_hold() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageRecord& s) { return s.residual < s.residual_limit; });
}

bool EliminationTrace::pivots_positive() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageRecord& s) { return s.min_pivot > 0.0; });
}

std::size_t factor_count_bound(std::size_t n) { return n == 0 ? 0 : (n - 1) * (n + 6); }

NearIdentityResult factor_near_identity(const NearIdentityInput& in) {
  const std::size_t n = in.m.n();
  const RingTag tag = in.m.tag();
  NearIdentityResult out{FactorList(n, tag), {}};
  if (n <= 1) return out;
  if (!in.bound_checked) check_near_identity_bound(in.m.entries());

  RingMatrix x = promote(in.m.entries(), tag);
  std::vector<Op> rows, cols;
  std::vector<RingElement> pivots;
  for (std::size_t k = 0; k < n; ++k) {
    const RingElement u = x(k, k);
    pivots.push_back(u);
    StageRecord rec;
    rec.stage = k + 1;
    rec.pivot = u;
    rec.min_pivot = extremes(u).second;
    if (k + 1 == n) {
      rec.residual_limit = std::numeric_limits<double>::infinity();
      rec.residual = extremes(u - one(tag)).first;
      out.trace.stages.push_back(std::move(rec));
      break;
    }
    RingElement v;
    try {
      v = u.inverse();
    } catch (const ContractError& e) {
      throw ContractError("pivot at stage " + std::to_string(k + 1) + " is not a unit: " + e.what());
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (x(k, j).is_exact_zero()) continue;
      RingElement c = -(v * x(k, j));
      for (std::size_t i = k + 1; i < n; ++i)
        if (!x(i, k).is_exact_zero()) x(i, j) = x(i, j) + c * x(i, k);
      x(k, j) = zero(tag);
      cols.push_back({k, j, std::move(c)});
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (x(i, k).is_exact_zero()) continue;
      rows.push_back({i, k, -(v * x(i, k))});
      x(i, k) = zero(tag);
    }
    double residual = 0.0;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        residual = std::max(residual, extremes(i == j ? x(i, j) - one(tag) : x(i, j)).first);
    rec.residual = residual;
    const std::size_t left = n - 2 - k;
    rec.residual_limit = left == 0 ? std::numeric_limits<double>::infinity() : 1.0 / static_cast<double>(left);
    out.trace.stages.push_back(std::move(rec));
  }

  // Rows * X * Cols = D, so X = Rows^-1 D Cols^-1.
  for (const auto& op : rows)
    out.factors.push(static_cast<int>(op.i + 1), static_cast<int>(op.j + 1), -op.r);
  RingElement acc = one(tag);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    acc = acc * pivots[k];
    out.factors.append(factor_m(static_cast<int>(k + 1), static_cast<int>(k + 2), acc, n).promoted(tag));
  }
  FactorList col_list(n, tag);
  for (const auto& op : cols) col_list.push(static_cast<int>(op.i + 1), static_cast<int>(op.j + 1), op.r);
  out.factors.append(invert(col_list));
  return out;
}

}  // namespace sk1
