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
#include "sk1/elementary.hpp"
#include "sk1/errors.hpp"

using namespace sk1;

namespace {

const RingTag kQ = RingTag::exact_scalar();

std::vector<mpq_class> q(std::initializer_list<long> v) {
  std::vector<mpq_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

FactorList random_list(std::size_t n, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(1, static_cast<int>(n));
  std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
  FactorList fl(n, kQ);
  while (fl.size() < len) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    fl.push(i, j, RingElement::exact(num(rng), den(rng)));
  }
  return fl;
}

}  // namespace

TEST_CASE("elem_matrix") {
  auto m = elem_matrix({1, 2, RingElement::exact(1)}, 2);
  CHECK(m(0, 1).is_exact_one());
  CHECK(m(1, 0).is_exact_zero());
  auto z = elem_matrix({2, 1, RingElement::exact(0)}, 2);
  CHECK(z(1, 0).is_exact_zero());
  auto e = elem_matrix({1, 3, RingElement::exact(-5)}, 3);
  CHECK(e(0, 2).scalar() == Scalar::exact(-5));
  CHECK(determinant(e).is_exact_one());
  CHECK_THROWS_AS(elem_matrix({1, 4, RingElement::exact(1)}, 3), ContractError);
  CHECK_THROWS_AS(FactorList(2, kQ).push(2, 2, RingElement::exact(1)), ContractError);
}

TEST_CASE("factor_c realises signed swaps") {
  CHECK(oracle::product_q(factor_c(1, 2, 2)) == q({0, 1, -1, 0}));
  CHECK(oracle::product_q(factor_c(2, 1, 2)) == q({0, -1, 1, 0}));
  CHECK(oracle::product_q(factor_c(1, 3, 3)) == q({0, 0, 1, 0, 1, 0, -1, 0, 0}));
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      auto expect = signed_swap(i, j, 4, kQ);
      CHECK(oracle::product_q(factor_c(i, j, 4)) ==
            std::vector<mpq_class>([&] {
              std::vector<mpq_class> v;
              for (const auto& e : expect.data()) v.push_back(e.scalar().rational());
              return v;
            }()));
    }
}

TEST_CASE("factor_m realises diagonal units") {
  auto m = factor_m(1, 2, RingElement::exact(2), 2);
  CHECK(m.size() == 6);
  CHECK(oracle::product_q(m) == std::vector<mpq_class>{2, 0, 0, mpq_class(1, 2)});
  CHECK(oracle::product_q(factor_m(1, 2, RingElement::exact(1), 2)) == oracle::eye_q(2));
  auto m3 = oracle::product_q(factor_m(3, 1, RingElement::exact(-7, 3), 3));
  CHECK(m3 == std::vector<mpq_class>{mpq_class(-3, 7), 0, 0, 0, 1, 0, 0, 0, mpq_class(-7, 3)});
  CHECK_THROWS_AS(factor_m(1, 2, RingElement::exact(0), 2), ContractError);

  // Symbolic r: a unit polynomial on the grid.
  auto d = make_domain({{Rational(0), Rational(1)}}, {9});
  RingElement r = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {1}}, {Scalar::exact(2), {0}}});
  auto pm = product(factor_m(1, 2, r, 2));
  CHECK((pm(0, 0) - r).is_exact_zero());
  CHECK((pm(1, 1) * r).is_exact_one());
  CHECK(pm(0, 1).is_exact_zero());
  CHECK(pm(1, 0).is_exact_zero());
}

TEST_CASE("product agrees with naive multiplication and has determinant one") {
  std::mt19937_64 rng(3);
  CHECK(oracle::product_q(FactorList(3, kQ)) == oracle::eye_q(3));
  CHECK(product(FactorList(3, kQ))(2, 2).is_exact_one());
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    auto fl = random_list(n, 5 + trial % 7, rng);
    auto p = product(fl);
    auto expect = oracle::product_q(fl);
    for (std::size_t k = 0; k < n * n; ++k) CHECK(p.data()[k].scalar().rational() == expect[k]);
    CHECK(oracle::leibniz_det(expect, n) == 1);
    CHECK(determinant(p).is_exact_one());
  }
}

TEST_CASE("invert") {
  FactorList one(2, kQ);
  one.push(1, 2, RingElement::exact(3, 4));
  auto inv = invert(one);
  REQUIRE(inv.size() == 1);
  CHECK(inv.factors()[0].r.scalar() == Scalar::exact(-3, 4));
  CHECK(invert(FactorList(2, kQ)).empty());

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto fl = random_list(3, 1 + trial, rng);
    CHECK(oracle::product_q(concat(invert(fl), fl)) == oracle::eye_q(3));
  }
  // Float backend: coefficients in [-2, 2], up to 20 factors.
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    FactorList fl(4, RingTag::float_scalar());
    while (fl.size() < 20) {
      int i = 1 + static_cast<int>(rng() % 4), j = 1 + static_cast<int>(rng() % 4);
      if (i != j) fl.push(i, j, RingElement::real(u(rng)));
    }
    auto prod = oracle::product_scalar(concat(invert(fl), fl));
    CHECK(oracle::max_abs_diff(prod, oracle::eye(4)) < 1e-12);
  }
}

TEST_CASE("lists over different rings do not mix") {
  FactorList a(2, kQ), b(2, RingTag::float_scalar()), c(3, kQ);
  CHECK_THROWS_AS(concat(a, b), ContractError);
  CHECK_THROWS_AS(concat(a, c), ContractError);
  CHECK_NOTHROW(concat(a, b.promoted(kQ)));
}

TEST_CASE("max_norm") {
  CHECK(max_norm(identity_matrix(4, kQ)) == 1.0);
  RingMatrix m(2);
  m(0, 0) = RingElement::exact(0);
  m(0, 1) = RingElement::exact(2);
  m(1, 0) = RingElement::exact(-1, 2);
  m(1, 1) = RingElement::exact(0);
  CHECK(max_norm(m) == 2.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<double> c(n * n), dd(n * n);
    for (auto& v : c) v = u(rng);
    for (auto& v : dd) v = u(rng);
    auto cm = oracle::to_ring(c, n), dm = oracle::to_ring(dd, n);
    CHECK(max_norm(multiply(cm, dm)) <= static_cast<double>(n) * max_norm(cm) * max_norm(dm));
  }
}
