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

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "sk1/errors.hpp"
#include "sk1/gauss.hpp"

using namespace sk1;

namespace {

void check_patch(const PatchFactorization& pf, const RingMatrix& a, const DomainPtr& d, double tol) {
  auto field = sample(a, d);
  for (auto p : pf.patch.points()) {
    auto got = oracle::product_at(pf.factors, *d, p);
    std::vector<double> want(field.at(p).begin(), field.at(p).end());
    CHECK(oracle::max_abs_diff(got, want) < tol);
  }
}

// Rotation by theta, with cos/sin built from truncated series and then
// renormalised so c^2 + s^2 = 1 at every grid point.
RingMatrix rotation(const DomainPtr& d, double (*angle)(const Domain&, std::size_t)) {
  std::vector<double> c(d->size()), s(d->size());
  for (auto p : d->active_points()) {
    const double th = angle(*d, p);
    double cs = 0, sn = 0, term = 1;
    for (int k = 0; k < 30; ++k) {
      if (k > 0) term *= th / k;
      if (k % 4 == 0) cs += term;
      if (k % 4 == 1) sn += term;
      if (k % 4 == 2) cs -= term;
      if (k % 4 == 3) sn -= term;
    }
    const double r = std::sqrt(cs * cs + sn * sn);
    c[p] = cs / r;
    s[p] = sn / r;
  }
  RingElement ce = GridFunction(d, c), se = GridFunction(d, s);
  RingMatrix m(2);
  m(0, 0) = ce;
  m(0, 1) = se;
  m(1, 0) = -se;
  m(1, 1) = ce;
  return m;
}

}  // namespace

TEST_CASE("factor_pointwise on small fixed inputs") {
  CHECK(factor_pointwise(SLMatrix::identity(3, RingTag::exact_scalar())).empty());
  std::vector<mpq_class> j{0, 1, -1, 0};
  auto fl = factor_pointwise(SLMatrix::checked(oracle::to_ring_q(j, 2), 0));
  auto c = factor_c(1, 2, 2);
  REQUIRE(fl.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(fl.factors()[k].i == c.factors()[k].i);
    CHECK(fl.factors()[k].j == c.factors()[k].j);
    CHECK(fl.factors()[k].r.scalar() == c.factors()[k].r.scalar());
  }
  std::vector<mpq_class> sing{1, 2, 2, 4};
  CHECK_THROWS_AS(SLMatrix::checked(oracle::to_ring_q(sing, 2), 1e-9), ContractError);
}

TEST_CASE("factor_pointwise on random float SL(n)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    auto a = oracle::random_sl(n, rng);
    auto fl = factor_pointwise(SLMatrix::checked(oracle::to_ring(a, n), 1e-9));
    CHECK(oracle::max_abs_diff(oracle::product_scalar(fl), a) < 1e-9);
  }
}

TEST_CASE("factor_pointwise is exact on rational SL(n), including row-permuted inputs") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    FactorList gen(n, RingTag::exact_scalar());
    for (int k = 0; k < 12; ++k) {
      int i = 1 + static_cast<int>(rng() % n), j = 1 + static_cast<int>(rng() % n);
      if (i != j) gen.push(i, j, RingElement::exact(num(rng), den(rng)));
    }
    // Signed swaps permute rows while staying in SL(n).
    if (trial % 2) gen = concat(factor_c(1, static_cast<int>(n), n), gen);
    auto a = oracle::product_q(gen);
    auto fl = factor_pointwise(SLMatrix::checked(oracle::to_ring_q(a, n), 0));
    CHECK(oracle::product_q(fl) == a);
  }
}

TEST_CASE("factor_patch: constant identity and a single transvection") {
  auto d = make_domain({{Rational(0), Rational(1)}}, {11});
  auto id = factor_patch(SLMatrix::identity(2, RingTag::grid(d)), GridSubset::all(d));
  CHECK(id.factors.empty());

  RingElement x = PolyFunction::from_monomials(d, Backend::Float, {{Scalar(1.0), {1}}});
  RingMatrix m = identity_matrix(2, RingTag::poly(d, Backend::Float));
  m(0, 1) = x;
  auto pf = factor_patch(SLMatrix::checked(m, 1e-9), GridSubset::all(d));
  REQUIRE(pf.factors.size() == 1);
  CHECK(pf.factors.factors()[0].i == 1);
  CHECK(pf.factors.factors()[0].j == 2);
  for (auto p : d->active_points()) CHECK(pf.factors.factors()[0].r.value_at(*d, p) == doctest::Approx(d->coord(p, 0)));
}

TEST_CASE("factor_patch on a rotation patch") {
  auto d = make_domain({{Rational(0), Rational(1)}}, {201});
  auto m = rotation(d, [](const Domain& dd, std::size_t p) { return 2 * std::numbers::pi * dd.coord(p, 0); });
  auto field = sample(m, d);
  GridSubset patch(d);
  for (auto p : d->active_points())
    if (std::fabs(field.at(p)[0]) >= 0.5) patch.insert(p);
  auto pf = factor_patch(SLMatrix::checked(m, 1e-9), patch, 0.5);
  CHECK(pf.pivot_sequence == std::vector<int>{1});
  check_patch(pf, m, d, 1e-9);

  try {
    factor_patch(SLMatrix::checked(m, 1e-9), GridSubset::all(d), 0.5);
    FAIL("expected the floor to be violated");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
  }
}

TEST_CASE("build_patch_cover") {
  auto base = make_domain({{Rational(0), Rational(1)}}, {9});
  auto d = base->with_time(17);

  SUBCASE("constant identity") {
    auto cover = build_patch_cover(SLMatrix::identity(2, RingTag::exact_scalar()), {}, d);
    REQUIRE(cover.size() == 1);
    CHECK(cover[0].factors.empty());
    CHECK(cover[0].patch.count() == d->size());
  }
  SUBCASE("transvection t*x") {
    RingElement tx = PolyFunction::from_monomials(d, Backend::Float, {{Scalar(1.0), {1, 1}}});
    RingMatrix m = identity_matrix(2, RingTag::poly(d, Backend::Float));
    m(0, 1) = tx;
    auto cover = build_patch_cover(SLMatrix::checked(m, 1e-9));
    REQUIRE(cover.size() == 1);
    CHECK(cover[0].factors.size() == 1);
    check_patch(cover[0], m, d, 1e-12);
  }
  SUBCASE("rotation by pi t") {
    auto m = rotation(d, [](const Domain& dd, std::size_t p) { return std::numbers::pi * dd.coord(p, 1); });
    auto cover = build_patch_cover(SLMatrix::checked(m, 1e-9));
    CHECK(cover.size() >= 2);
    std::set<std::vector<int>> seqs;
    GridSubset uni(d);
    for (const auto& pf : cover) {
      seqs.insert(pf.pivot_sequence);
      uni = uni.unite(pf.patch);
      check_patch(pf, m, d, 1e-9);
    }
    CHECK(seqs.size() == cover.size());
    CHECK(uni.count() == d->size());
    // Dilation makes neighbouring patches overlap.
    CHECK(!cover[0].patch.intersect(cover[1].patch).empty());
  }
}
