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

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sk1/errors.hpp"
#include "sk1/near_identity.hpp"

using namespace sk1;

namespace {

std::vector<mpq_class> exact_entries(const RingMatrix& m) {
  std::vector<mpq_class> v;
  for (const auto& e : m.data()) v.push_back(e.scalar().rational());
  return v;
}

// Entries of I + A with |a_ij| < bound, determinant forced to exactly 1 by
// rescaling the first row; retried until the bound still holds.
std::vector<mpq_class> random_near_identity_q(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20);
  const long den = 100 * static_cast<long>(n);
  for (;;) {
    auto a = oracle::eye_q(n);
    for (auto& v : a) {
      v += mpq_class(num(rng), den);
      v.canonicalize();
    }
    const mpq_class det = oracle::leibniz_det(a, n);
    for (std::size_t j = 0; j < n; ++j) a[j] /= det;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class off = a[i * n + j] - (i == j ? 1 : 0);
        if (abs(off) >= mpq_class(1, static_cast<long>(n - 1))) ok = false;
      }
    if (ok) return a;
  }
}

}  // namespace

TEST_CASE("factor_count_bound") {
  CHECK(factor_count_bound(1) == 0);
  CHECK(factor_count_bound(2) == 8);
  CHECK(factor_count_bound(4) == 30);
}

TEST_CASE("n = 1 gives the empty list") {
  RingMatrix m(1, RingElement::exact(1));
  auto r = factor_near_identity(NearIdentityInput::make(m));
  CHECK(r.factors.empty());
}

TEST_CASE("identity input emits only diagonal fixes with r = 1") {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto r = factor_near_identity(NearIdentityInput::make(identity_matrix(n, RingTag::exact_scalar())));
    CHECK(r.factors.size() == 6 * (n - 1));
    CHECK(oracle::product_q(r.factors) == oracle::eye_q(n));
    CHECK(r.trace.bounds_hold());
  }
}

TEST_CASE("rational 2x2 example reconstructs exactly") {
  // [[11/10, 1/5], [1/2, 10/11]] has determinant 9/10 and must be refused.
  std::vector<mpq_class> off{mpq_class(11, 10), mpq_class(1, 5), mpq_class(1, 2), mpq_class(10, 11)};
  CHECK_THROWS_AS(NearIdentityInput::make(oracle::to_ring_q(off, 2)), ContractError);
  std::vector<mpq_class> a{mpq_class(11, 10), mpq_class(1, 5), mpq_class(1, 2), mpq_class(1)};
  REQUIRE(oracle::leibniz_det(a, 2) == 1);
  auto r = factor_near_identity(NearIdentityInput::make(oracle::to_ring_q(a, 2)));
  CHECK(oracle::product_q(r.factors) == a);
  CHECK(r.factors.size() <= factor_count_bound(2));
  CHECK(r.trace.pivots_positive());
}

TEST_CASE("random rational near-identity matrices reconstruct exactly") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    auto a = random_near_identity_q(n, rng);
    auto r = factor_near_identity(NearIdentityInput::make(oracle::to_ring_q(a, n)));
    CHECK(oracle::product_q(r.factors) == a);
    CHECK(r.factors.size() <= factor_count_bound(n));
    CHECK(r.trace.bounds_hold());
    CHECK(r.trace.pivots_positive());
  }
}

TEST_CASE("random float 3x3 with |a| < 0.4 reconstructs within 1e-9") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  int accepted = 0;
  while (accepted < 50) {
    auto a = oracle::eye(3);
    for (auto& v : a) v += u(rng);
    const double det = oracle::leibniz_det(a, 3);
    if (det <= 0) continue;
    for (auto& v : a) v /= std::cbrt(det);
    RingMatrix m = oracle::to_ring(a, 3);
    try {
      check_near_identity_bound(m);
    } catch (const ContractError&) {
      continue;
    }
    ++accepted;
    auto r = factor_near_identity(NearIdentityInput::make(m));
    CHECK(oracle::max_abs_diff(oracle::product_scalar(r.factors), a) < 1e-9);
    REQUIRE(r.trace.stages.size() == 3);
    CHECK(r.trace.stages[0].residual < 1.0);
    CHECK(r.trace.bounds_hold());
  }
}

TEST_CASE("bound violations are rejected with the entry and point") {
  std::vector<mpq_class> at_bound{1, 1, 0, 1};
  try {
    NearIdentityInput::make(oracle::to_ring_q(at_bound, 2));
    FAIL("expected rejection");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("entry (1,2)") != std::string::npos);
  }
  // 3x3 with an off-diagonal entry of exactly 1/2 = 1/(n-1).
  auto m = identity_matrix(3, RingTag::exact_scalar());
  m(2, 0) = RingElement::exact(1, 2);
  CHECK_THROWS_AS(NearIdentityInput::make(m), ContractError);

  auto d = make_domain({{Rational(0), Rational(1)}}, {11});
  std::vector<double> v(11, 0.1);
  v[7] = 1.0;
  RingMatrix g = identity_matrix(2, RingTag::grid(d));
  g(0, 1) = GridFunction(d, v);
  try {
    NearIdentityInput::make(g);
    FAIL("expected rejection");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("grid index (7)") != std::string::npos);
  }
}

TEST_CASE("polynomial input gives flagged fraction coefficients and reconstructs exactly") {
  auto d = make_domain({{Rational(0), Rational(1)}}, {9});
  RingElement p = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1, 5), {1}}});
  RingElement q = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(-1, 4), {2}}});
  // e(1,2;p) e(2,1;q) = [[1+pq, p],[q, 1]]
  RingMatrix m(2);
  m(0, 0) = one(tag_of(p)) + p * q;
  m(0, 1) = p;
  m(1, 0) = q;
  m(1, 1) = one(tag_of(p));
  auto r = factor_near_identity(NearIdentityInput::make(m));
  auto prod = product(r.factors);
  for (std::size_t k = 0; k < 4; ++k) CHECK((prod.data()[k] - m.data()[k]).is_exact_zero());
  bool any_fraction = false;
  for (const auto& f : r.factors.factors()) any_fraction = any_fraction || f.r.fraction_field();
  CHECK(any_fraction);
}

TEST_CASE("grid input reconstructs pointwise") {
  auto d = make_domain({{Rational(-1), Rational(1)}}, {21});
  std::vector<double> p(21), q(21);
  for (std::size_t k = 0; k < 21; ++k) {
    p[k] = 0.3 * d->coord(k, 0);
    q[k] = 0.2 - 0.1 * d->coord(k, 0);
  }
  RingElement gp = GridFunction(d, p), gq = GridFunction(d, q);
  RingMatrix m(2);
  m(0, 0) = one(tag_of(gp)) + gp * gq;
  m(0, 1) = gp;
  m(1, 0) = gq;
  m(1, 1) = one(tag_of(gp));
  auto r = factor_near_identity(NearIdentityInput::make(m));
  auto field = sample(m, d);
  for (auto pt : d->active_points()) {
    auto got = oracle::product_at(r.factors, *d, pt);
    std::vector<double> want(field.at(pt).begin(), field.at(pt).end());
    CHECK(oracle::max_abs_diff(got, want) < 1e-12);
  }
}
