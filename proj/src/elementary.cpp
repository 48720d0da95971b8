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

#include "sk1/elementary.hpp"

#include <string>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

void check_indices(int i, int j, std::size_t n) {
  if (i == j) throw ContractError("elementary factor needs i != j (got " + std::to_string(i) + ")");
  if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
    throw ContractError("elementary factor index (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for n = " + std::to_string(n));
}

}  // namespace

FactorList::FactorList(std::size_t n, RingTag ring) : n_(n), ring_(std::move(ring)) {}

FactorList::FactorList(std::size_t n, RingTag ring, std::vector<ElementaryFactor> factors)
    : n_(n), ring_(std::move(ring)) {
  factors_.reserve(factors.size());
  for (auto& f : factors) push(f.i, f.j, f.r);
}

void FactorList::push(int i, int j, const RingElement& r) {
  check_indices(i, j, n_);
  factors_.push_back({i, j, promote(r, ring_)});
}

void FactorList::append(const FactorList& other) {
  if (other.n_ != n_) throw ContractError("factor lists of different ambient sizes");
  if (!(other.ring_ == ring_)) throw ContractError("factor lists over different coefficient rings");
  factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
}

FactorList FactorList::promoted(const RingTag& ring) const {
  FactorList r(n_, ring);
  for (const auto& f : factors_) r.push(f.i, f.j, f.r);
  return r;
}

RingMatrix elem_matrix(const ElementaryFactor& f, std::size_t n) {
  check_indices(f.i, f.j, n);
  RingMatrix m = identity_matrix(n, tag_of(f.r));
  m(static_cast<std::size_t>(f.i - 1), static_cast<std::size_t>(f.j - 1)) = f.r;
  return m;
}

FactorList factor_c(int i, int j, std::size_t n, const RingTag& ring) {
  FactorList fl(n, ring);
  fl.push(i, j, one(ring));
  fl.push(j, i, -one(ring));
  fl.push(i, j, one(ring));
  return fl;
}

FactorList factor_m(int i, int j, const RingElement& r, std::size_t n) { return factor_m(i, j, r, r.inverse(), n); }

FactorList factor_m(int i, int j, const RingElement& r, const RingElement& r_inv, std::size_t n) {
  const RingTag ring = join(tag_of(r), tag_of(r_inv));
  FactorList fl(n, ring);
  fl.push(i, j, r);
  fl.push(j, i, -r_inv);
  fl.push(i, j, r);
  fl.append(factor_c(j, i, n, ring));
  return fl;
}

RingMatrix product(const FactorList& fl) {
  RingMatrix m = identity_matrix(fl.n(), fl.ring());
  const std::size_t n = fl.n();
  // Right-multiplying by e(i,j;r) adds r times column i to column j.
  for (const auto& f : fl.factors()) {
    const auto ci = static_cast<std::size_t>(f.i - 1);
    const auto cj = static_cast<std::size_t>(f.j - 1);
    if (f.r.is_exact_zero()) continue;
    for (std::size_t row = 0; row < n; ++row) {
      if (m(row, ci).is_exact_zero()) continue;
      m(row, cj) = m(row, cj) + m(row, ci) * f.r;
    }
  }
  return m;
}

FactorList invert(const FactorList& fl) {
  FactorList r(fl.n(), fl.ring());
  const auto& fs = fl.factors();
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) r.push(it->i, it->j, -it->r);
  return r;
}

FactorList concat(const FactorList& a, const FactorList& b) {
  FactorList r = a;
  r.append(b);
  return r;
}

MatrixField product_field(const FactorList& fl, const DomainPtr& d) {
  const std::size_t n = fl.n();
  MatrixField out(n, d);
  std::vector<std::vector<double>> coef;
  coef.reserve(fl.size());
  for (const auto& f : fl.factors()) {
    if (d) {
      coef.push_back(f.r.sample(*d));
    } else {
      if (f.r.kind() != Kind::Scalar) throw ContractError("product_field: function coefficient without a domain");
      coef.push_back({f.r.scalar().to_double()});
    }
  }
  const std::vector<std::size_t> pts = d ? d->active_points() : std::vector<std::size_t>{0};
  for (auto p : pts) {
    auto m = out.at(p);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    for (std::size_t k = 0; k < fl.size(); ++k) {
      const auto& f = fl.factors()[k];
      const double r = coef[k][p];
      if (r == 0.0) continue;
      const auto ci = static_cast<std::size_t>(f.i - 1), cj = static_cast<std::size_t>(f.j - 1);
      for (std::size_t row = 0; row < n; ++row) m[row * n + cj] += m[row * n + ci] * r;
    }
  }
  return out;
}

double reconstruction_residual(const FactorList& fl, const RingMatrix& target, const DomainPtr& d, std::size_t* worst) {
  if (target.n() != fl.n()) throw ContractError("reconstruction_residual: size mismatch");
  const MatrixField got = product_field(fl, d);
  const MatrixField want = sample(target, d);
  const std::vector<std::size_t> pts = d ? d->active_points() : std::vector<std::size_t>{0};
  double res = 0.0;
  for (auto p : pts) {
    const double r = dense::max_abs_diff(got.at(p), want.at(p));
    if (!(r <= res)) {
      res = r;
      if (worst) *worst = p;
    }
  }
  return res;
}

RingMatrix signed_swap(int i, int j, std::size_t n, const RingTag& ring) {
  check_indices(i, j, n);
  RingMatrix m = identity_matrix(n, ring);
  const auto a = static_cast<std::size_t>(i - 1);
  const auto b = static_cast<std::size_t>(j - 1);
  m(a, a) = zero(ring);
  m(b, b) = zero(ring);
  m(a, b) = one(ring);
  m(b, a) = -one(ring);
  return m;
}

}  // namespace sk1
