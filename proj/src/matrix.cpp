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

#include "sk1/matrix.hpp"

#include <cmath>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

RingMatrix identity_matrix(std::size_t n, const RingTag& tag) {
  RingMatrix m(n, zero(tag));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one(tag);
  return m;
}

RingMatrix multiply(const RingMatrix& a, const RingMatrix& b) {
  if (a.n() != b.n()) throw ContractError("matrix size mismatch in product");
  const std::size_t n = a.n();
  RingMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RingElement acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < n; ++k) acc = acc + a(i, k) * b(k, j);
      c(i, j) = std::move(acc);
    }
  return c;
}

RingMatrix subtract(const RingMatrix& a, const RingMatrix& b) {
  if (a.n() != b.n()) throw ContractError("matrix size mismatch in difference");
  RingMatrix c(a.n());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k] - b.data()[k];
  return c;
}

RingTag tag_of(const RingMatrix& m) {
  if (m.data().empty()) return RingTag::exact_scalar();
  RingTag t = tag_of(m.data()[0]);
  for (const auto& e : m.data()) t = widen(t, tag_of(e));
  return t;
}

RingMatrix promote(const RingMatrix& m, const RingTag& tag) {
  RingMatrix r(m.n());
  for (std::size_t k = 0; k < m.data().size(); ++k) r.data()[k] = promote(m.data()[k], tag);
  return r;
}

namespace {

RingElement minor_det(const RingMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  const std::size_t r = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  RingElement acc;
  bool first = true;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const RingElement& e = m(r, cols[c]);
    if (e.is_exact_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    RingElement term = e * minor_det(m, sub_rows, sub_cols);
    if (c % 2 == 1) term = -term;
    acc = first ? term : acc + term;
    first = false;
  }
  if (first) return zero(tag_of(m));
  return acc;
}

}  // namespace

RingElement determinant(const RingMatrix& m) {
  if (m.n() == 0) return one(RingTag::exact_scalar());
  std::vector<std::size_t> rows(m.n()), cols(m.n());
  for (std::size_t k = 0; k < m.n(); ++k) rows[k] = cols[k] = k;
  return minor_det(m, rows, cols);
}

RingMatrix adjugate(const RingMatrix& m) {
  const std::size_t n = m.n();
  const RingTag tag = tag_of(m);
  RingMatrix adj(n, zero(tag));
  if (n == 1) {
    adj(0, 0) = one(tag);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      RingElement c = minor_det(m, rows, cols);
      adj(i, j) = (i + j) % 2 ? -c : c;
    }
  return adj;
}

MatrixField::MatrixField(std::size_t n, DomainPtr domain)
    : n_(n), domain_(std::move(domain)), data_(n * n * (domain_ ? domain_->size() : 1), 0.0) {}

MatrixField sample(const RingMatrix& m, const DomainPtr& domain) {
  const std::size_t n = m.n();
  MatrixField f(n, domain);
  const Domain* d = domain.get();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = m(i, j);
      if (!d) {
        if (e.kind() != Kind::Scalar) throw ContractError("sampling a function matrix without a domain");
        f.at(0)[i * n + j] = e.scalar().to_double();
        continue;
      }
      auto vals = e.sample(*d);
      for (auto p : d->active_points()) f.at(p)[i * n + j] = vals[p];
    }
  return f;
}

DomainPtr matrix_domain(const RingMatrix& m) {
  for (const auto& e : m.data())
    if (e.kind() != Kind::Scalar) return e.domain();
  return nullptr;
}

double max_norm(const RingMatrix& m) {
  double best = 0.0;
  for (const auto& e : m.data()) {
    if (e.kind() == Kind::Scalar) {
      best = std::max(best, std::fabs(e.scalar().to_double()));
      continue;
    }
    auto d = e.domain();
    auto vals = e.sample(*d);
    for (auto p : d->active_points()) best = std::max(best, std::fabs(vals[p]));
  }
  return best;
}

void check_determinant_one(const RingMatrix& m, double tol_det) {
  const RingTag tag = tag_of(m);
  if (tag.backend == Backend::Exact) {
    RingElement det = determinant(m);
    if (!det.is_exact_one()) {
      std::string where;
      if (det.kind() == Kind::Scalar) where = " (determinant " + det.scalar().to_string() + ")";
      throw ContractError("determinant is not exactly 1" + where);
    }
    return;
  }
  auto domain = matrix_domain(m);
  auto field = sample(m, domain);
  const std::size_t n = m.n();
  std::vector<std::size_t> pts = domain ? domain->active_points() : std::vector<std::size_t>{0};
  for (auto p : pts) {
    double det = dense::determinant(field.at(p), n);
    if (!(std::fabs(det - 1.0) <= tol_det)) {
      std::ostringstream os;
      os << "determinant " << det << " differs from 1 by more than " << tol_det;
      if (domain) os << " at " << domain->describe_point(p);
      throw ContractError(os.str());
    }
  }
}

SLMatrix SLMatrix::checked(RingMatrix m, double tol_det) {
  check_determinant_one(m, tol_det);
  return SLMatrix(std::move(m), true);
}

SLMatrix SLMatrix::unchecked(RingMatrix m) { return SLMatrix(std::move(m), false); }

SLMatrix SLMatrix::identity(std::size_t n, const RingTag& tag) { return SLMatrix(identity_matrix(n, tag), true); }

namespace dense {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
      out[i * n + j] = s;
    }
}

double determinant(std::span<const double> a, std::size_t n) {
  std::vector<double> m(a.begin(), a.end());
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i * n + k]) > std::fabs(m[piv * n + k])) piv = i;
    if (m[piv * n + k] == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return det;
}

bool inverse(std::span<const double> a, std::span<double> out, std::size_t n) {
  std::vector<double> m(a.begin(), a.end());
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i * n + k]) > std::fabs(m[piv * n + k])) piv = i;
    if (m[piv * n + k] == 0.0) return false;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m[k * n + j], m[piv * n + j]);
      std::swap(inv[k * n + j], inv[piv * n + j]);
    }
    const double d = m[k * n + k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k * n + j] /= d;
      inv[k * n + j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = m[i * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m[i * n + j] -= f * m[k * n + j];
        inv[i * n + j] -= f * inv[k * n + j];
      }
    }
  }
  std::copy(inv.begin(), inv.end(), out.begin());
  return true;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

}  // namespace dense

}  // namespace sk1
