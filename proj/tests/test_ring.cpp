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
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "sk1/errors.hpp"
#include "sk1/ring.hpp"

using namespace sk1;

namespace {

DomainPtr interval(long lo, long hi, int res) { return make_domain({{Rational(lo), Rational(hi)}}, {res}); }

GridFunction from_fn(const DomainPtr& d, double (*f)(double)) {
  std::vector<double> v(d->size());
  for (auto p : d->active_points()) v[p] = f(d->coord(p, 0));
  return GridFunction(d, v);
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("11/10") == Rational(11, 10));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("3") == Rational(3));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
}

TEST_CASE("scalar backends do not mix") {
  CHECK_THROWS_AS(Scalar::exact(1) + Scalar(1.0), ContractError);
  CHECK_THROWS_AS(Scalar::exact(0).inverse(), ContractError);
  CHECK(Scalar::exact(2, 3) * Scalar::exact(3, 2) == Scalar::exact(1));
  CHECK(Scalar::exact(1, 3) < Scalar(0.5));
}

TEST_CASE("sup_norm") {
  auto d = interval(-1, 2, 31);
  CHECK(sup_norm(GridFunction::constant(d, 0.0), *d) == 0.0);
  CHECK(sup_norm(RingElement::exact(-3), *d) == 3.0);
  auto x = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {1}}});
  CHECK(sup_norm(x, *d) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(sup_norm(x, *interval(0, 1, 5)), ContractError);
}

TEST_CASE("polynomials evaluate exactly in domain coordinates") {
  auto d = interval(0, 1, 11);
  // x^2 - 1
  auto p = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {2}}, {Scalar::exact(-1), {0}}});
  for (auto q : d->active_points()) {
    const Rational x = d->exact_coord(q, 0);
    CHECK(p.exact_value_at(q) == x * x - 1);
  }
  auto sq = p * p;
  for (auto q : d->active_points()) CHECK(sq.exact_value_at(q) == p.exact_value_at(q) * p.exact_value_at(q));
  // x + 1 has no zero on [0,1]; its inverse is a flagged fraction.
  auto u = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {1}}, {Scalar::exact(1), {0}}});
  auto inv = u.inverse();
  CHECK(inv.is_fraction());
  CHECK((u * inv).is_one());
  CHECK_THROWS_AS(p.inverse(), ContractError);  // vanishes at x = 1
}

TEST_CASE("two-dimensional chebyshev products match pointwise products") {
  auto d = make_domain({{Rational(-1), Rational(2)}, {Rational(0), Rational(3, 2)}}, {7, 5});
  auto f = PolyFunction::from_monomials(d, Backend::Exact,
                                        {{Scalar::exact(2), {1, 0}}, {Scalar::exact(-1, 3), {0, 2}}, {Scalar::exact(5), {1, 1}}});
  auto g = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {2, 1}}, {Scalar::exact(7), {0, 0}}});
  auto h = f * g - g + f;
  for (auto p : d->active_points()) {
    const Rational x = d->exact_coord(p, 0), y = d->exact_coord(p, 1);
    const Rational fv = 2 * x - y * y / 3 + 5 * x * y;
    const Rational gv = x * x * y + 7;
    CHECK(h.exact_value_at(p) == fv * gv - gv + fv);
  }
}

TEST_CASE("ring axioms hold pointwise for random grid functions") {
  auto d = interval(0, 1, 17);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(d->size()), b(d->size());
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    RingElement f = GridFunction(d, a), g = GridFunction(d, b);
    auto sum = (f + g).sample(*d);
    auto prod = (f * g).sample(*d);
    for (auto p : d->active_points()) {
      CHECK(sum[p] == a[p] + b[p]);
      CHECK(prod[p] == a[p] * b[p]);
    }
    CHECK(sup_norm(f + g, *d) <= sup_norm(f, *d) + sup_norm(g, *d));
  }
}

TEST_CASE("grid and polynomial elements join to the grid") {
  auto d = interval(0, 1, 5);
  RingElement x = PolyFunction::from_monomials(d, Backend::Float, {{Scalar(1.0), {1}}});
  RingElement g = GridFunction::constant(d, 2.0);
  RingElement s = x + g;
  CHECK(s.kind() == Kind::Grid);
  CHECK(s.value_at(*d, 4) == doctest::Approx(3.0));
  RingElement exact_x = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {1}}});
  CHECK_THROWS_AS(exact_x + g, ContractError);
  CHECK_THROWS_AS(x + RingElement(GridFunction::constant(interval(0, 1, 6), 1.0)), ContractError);
}

TEST_CASE("symbolic determinant agrees with the Leibniz formula") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<mpq_class> a(n * n);
    for (auto& v : a) {
      v = mpq_class(num(rng), den(rng));
      v.canonicalize();
    }
    const auto det = determinant(oracle::to_ring_q(a, n));
    CHECK(det.scalar().rational() == oracle::leibniz_det(a, n));
  }
}

TEST_CASE("approximate_smooth meets the tolerance on every grid point") {
  SUBCASE("polynomial samples") {
    auto d = interval(-1, 1, 41);
    auto f = from_fn(d, [](double x) { return x * x - 1.0; });
    auto g = approximate_smooth(f, PositiveFunction(RingElement::real(1e-9)));
    for (auto p : d->active_points()) CHECK(std::fabs(g.value_at(p) - f[p]) < 1e-9);
  }
  SUBCASE("absolute value") {
    auto d = interval(-1, 1, 101);
    auto f = from_fn(d, [](double x) { return std::fabs(x); });
    auto g = approximate_smooth(f, PositiveFunction(RingElement::real(0.05)));
    for (auto p : d->active_points()) CHECK(std::fabs(g.value_at(p) - f[p]) < 0.05);
  }
  SUBCASE("constant") {
    auto d = interval(0, 1, 9);
    auto g = approximate_smooth(GridFunction::constant(d, 7.0), PositiveFunction(RingElement::real(1e-9)));
    for (auto p : d->active_points()) CHECK(std::fabs(g.value_at(p) - 7.0) < 1e-9);
    CHECK(g.flt().num.is_constant());
  }
  SUBCASE("noise below the tolerance keeps the degree low") {
    auto d = interval(-1, 1, 33);
    auto f = from_fn(d, [](double x) { return x * x + 0.6e-3 * std::sin(40.0 * x); });
    auto g = approximate_smooth(f, PositiveFunction(RingElement::real(1e-3)));
    for (auto p : d->active_points()) CHECK(std::fabs(g.value_at(p) - f[p]) < 1e-3);
    CHECK(g.flt().num.total_degree() <= 2);
  }
  SUBCASE("degree cap") {
    auto d = interval(-1, 1, 201);
    auto f = from_fn(d, [](double x) { return x > 0 ? 1.0 : 0.0; });
    SmoothingOptions opts;
    opts.max_degree = 8;
    CHECK_THROWS_AS(approximate_smooth(f, PositiveFunction(RingElement::real(1e-3)), opts), ContractError);
  }
}

TEST_CASE("positive functions reject non-positive values") {
  auto d = interval(0, 1, 5);
  CHECK_THROWS_AS(PositiveFunction(RingElement::exact(0)), ContractError);
  std::vector<double> v{1, 1, -1, 1, 1};
  CHECK_THROWS_AS(PositiveFunction(GridFunction(d, v)), ContractError);
}

TEST_CASE("separating_function") {
  auto d = interval(0, 1, 21);
  GridSubset left(d), right(d);
  left.insert(0);
  right.insert(20);
  auto f = separating_function(left, right);
  CHECK(f[0] == 0.0);
  CHECK(f[20] == 1.0);
  for (std::size_t p = 1; p < 21; ++p) {
    CHECK(f[p] >= f[p - 1]);
    CHECK(f[p] <= 1.0);
    CHECK(f[p] == doctest::Approx(d->coord(p, 0)));
  }
  GridSubset overlap = right;
  overlap.insert(0);
  CHECK_THROWS_AS(separating_function(left, overlap), ContractError);
  CHECK_THROWS_AS(separating_function(left, GridSubset(d)), ContractError);
}

TEST_CASE("shrink_cover") {
  auto d = interval(0, 1, 21);
  auto whole = GridSubset::all(d);
  auto one = shrink_cover({whole});
  CHECK(one[0] == whole);

  GridSubset a(d), b(d);
  for (std::size_t p = 0; p <= 12; ++p) a.insert(p);
  for (std::size_t p = 8; p <= 20; ++p) b.insert(p);
  auto v = shrink_cover({a, b});
  for (auto p : d->active_points()) {
    CHECK((v[0].contains(p) || v[1].contains(p)));
    if (v[0].contains(p)) CHECK(a.contains(p));
    if (v[1].contains(p)) CHECK(b.contains(p));
  }
  // V_i is at least one grid step away from the complement of U_i.
  for (auto p : v[0].points())
    for (auto q : grid_neighbours(*d, p)) CHECK(a.contains(q));

  GridSubset c(d), e(d);
  c.insert(0);
  e.insert(20);
  CHECK_THROWS_AS(shrink_cover({c, e}), ContractError);
  GridSubset f(d), g(d);
  for (std::size_t p = 0; p <= 10; ++p) f.insert(p);
  for (std::size_t p = 11; p <= 20; ++p) g.insert(p);
  CHECK_THROWS_AS(shrink_cover({f, g}), ContractError);
}

TEST_CASE("grid subsets on masked domains") {
  std::vector<bool> mask(25, true);
  mask[12] = false;
  auto d = make_domain({{Rational(0), Rational(1)}, {Rational(0), Rational(1)}}, {5, 5}, mask);
  auto all = GridSubset::all(d);
  CHECK(all.count() == 24);
  CHECK(!all.contains(12));
  GridSubset one(d);
  one.insert(0);
  auto grown = one.dilate(1);
  CHECK(grown.count() == 4);
  CHECK(grown.dilate(1).count() == 8);  // the masked centre stays out
  CHECK(d->describe_point(7) == "grid index (1,2) at (0.25,0.5)");
}
