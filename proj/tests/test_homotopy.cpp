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

#include "doctest.h"
#include "oracle.hpp"
#include "sk1/errors.hpp"
#include "sk1/homotopy.hpp"
#include "sk1/ring.hpp"

using namespace sk1;

namespace {

DomainPtr unit_line(int res) { return make_domain({{Rational(0), Rational(1)}}, {res}); }

// Grid function on base x time with values f(x, t).
template <class F>
RingElement on_product(const DomainPtr& prod, F f) {
  std::vector<double> v(prod->size(), 0.0);
  const std::size_t last = prod->dims() - 1;
  for (auto p : prod->active_points()) {
    std::vector<double> x;
    for (std::size_t k = 0; k < last; ++k) x.push_back(prod->coord(p, k));
    v[p] = f(x, prod->coord(p, last));
  }
  return GridFunction(prod, std::move(v));
}

// Subset of the product grid where pred(x, t) holds.
template <class F>
GridSubset band(const DomainPtr& prod, F pred) {
  GridSubset s(prod);
  const std::size_t last = prod->dims() - 1;
  for (auto p : prod->active_points())
    if (pred(prod->coord(p, 0), prod->coord(p, last))) s.insert(p);
  return s;
}

RingMatrix shear(const DomainPtr& prod, double (*q)(double)) {
  RingMatrix m = identity_matrix(2, RingTag::exact_scalar());
  m(0, 1) = on_product(prod, [q](const std::vector<double>& x, double t) { return t * q(x[0]); });
  return m;
}

// Rotation by 2 pi turns t^(1+x): a loop at I whose speed varies with x.
RingMatrix rotation_loop(const DomainPtr& prod, int turns) {
  auto angle = [turns](const std::vector<double>& x, double t) { return 2 * std::numbers::pi * turns * std::pow(t, 1 + x[0]); };
  RingMatrix m(2);
  auto c = on_product(prod, [angle](const std::vector<double>& x, double t) { return std::cos(angle(x, t)); });
  auto s = on_product(prod, [angle](const std::vector<double>& x, double t) { return std::sin(angle(x, t)); });
  m(0, 0) = c;
  m(0, 1) = s;
  m(1, 0) = -s;
  m(1, 1) = c;
  return m;
}

// Oracle: B = A * prod(G_1) * ... at every point, multiplied with the test's own routine.
double certificate_gap(const Certificate& c) {
  const std::size_t n = c.a.n();
  const auto af = sample(c.a, c.domain), bf = sample(c.b, c.domain);
  double worst = 0.0;
  for (auto p : c.domain->active_points()) {
    std::vector<double> acc(af.at(p).begin(), af.at(p).end());
    for (const auto& g : c.steps) acc = oracle::matmul(acc, oracle::product_at(g, *c.domain, p), n);
    worst = std::max(worst, oracle::max_abs_diff(acc, std::vector<double>(bf.at(p).begin(), bf.at(p).end())));
  }
  return worst;
}

double product_gap(const FactorList& fl, const RingMatrix& target, const DomainPtr& d) {
  const auto tf = sample(target, d);
  double worst = 0.0;
  for (auto p : d->active_points())
    worst = std::max(worst, oracle::max_abs_diff(oracle::product_at(fl, *d, p),
                                                 std::vector<double>(tf.at(p).begin(), tf.at(p).end())));
  return worst;
}

}  // namespace

TEST_CASE("slice_cover") {
  auto base = unit_line(5);
  auto prod = base->with_time(11);

  SUBCASE("one set covering everything") {
    auto sc = slice_cover({GridSubset::all(prod)});
    REQUIRE(sc.patches.size() == 1);
    const auto& sp = sc.patches[0];
    CHECK(sp.slabs() == 1);
    CHECK(sp.u.count() == base->size());
    for (auto x : base->active_points()) {
      CHECK(sp.breakpoints[0].values()[x] == 0.0);
      CHECK(sp.breakpoints[1].values()[x] == 1.0);
    }
  }
  SUBCASE("two overlapping bands split at the midpoint") {
    auto lo = band(prod, [](double, double t) { return t < 0.6; });
    auto hi = band(prod, [](double, double t) { return t > 0.4; });
    auto sc = slice_cover({lo, hi});
    REQUIRE(sc.patches.size() == 1);
    const auto& sp = sc.patches[0];
    CHECK(sp.cover_sets == std::vector<std::size_t>{0, 1});
    for (auto x : base->active_points()) CHECK(sp.breakpoints[1].values()[x] == doctest::Approx(0.5));
  }
  SUBCASE("three staggered bands, slabs inside their sets") {
    std::vector<GridSubset> cover{band(prod, [](double x, double t) { return t < 0.4 + 0.1 * x; }),
                                  band(prod, [](double x, double t) { return t > 0.2 + 0.1 * x && t < 0.8; }),
                                  band(prod, [](double, double t) { return t > 0.6; })};
    auto sc = slice_cover(cover);
    GridSubset seen(base);
    for (const auto& sp : sc.patches) {
      seen = seen.unite(sp.u);
      CHECK(sp.slabs() == 3);
      for (auto x : sp.u.points())
        for (std::size_t k = 0; k < sp.slabs(); ++k) {
          CHECK(sp.breakpoint_index[k][x] <= sp.breakpoint_index[k + 1][x]);
          for (int t = sp.breakpoint_index[k][x]; t <= sp.breakpoint_index[k + 1][x]; ++t)
            CHECK(cover[sp.cover_sets[k]].contains(x * 11 + static_cast<std::size_t>(t)));
        }
    }
    CHECK(seen.count() == base->size());
  }
  SUBCASE("gaps are rejected") {
    auto lo = band(prod, [](double, double t) { return t < 0.3; });
    auto hi = band(prod, [](double, double t) { return t > 0.5; });
    CHECK_THROWS_AS(slice_cover({lo, hi}), ContractError);
    auto touching = band(prod, [](double, double t) { return t >= 0.3; });
    auto below = band(prod, [](double, double t) { return t < 0.3; });
    CHECK_THROWS_AS(slice_cover({below, touching}), ContractError);
  }
}

TEST_CASE("clamp_coefficients") {
  auto base = unit_line(9);
  auto prod = base->with_time(17);
  auto id_t = on_product(prod, [](const std::vector<double>&, double t) { return t; });

  auto same = clamp_coefficients(id_t, RingElement::real(0.0), RingElement::real(1.0));
  CHECK(same.grid().values() == id_t.grid().values());

  auto mid = clamp_coefficients(id_t, RingElement::real(0.25), RingElement::real(0.75));
  for (auto p : prod->active_points()) CHECK(mid.value_at(*prod, p) == doctest::Approx(std::clamp(prod->coord(p, 1), 0.25, 0.75)));

  // x * t clamped below at x / 2; x/2 falls between t-samples, read by interpolation
  // which is exact for data linear in t.
  auto xt = on_product(prod, [](const std::vector<double>& x, double t) { return x[0] * t; });
  std::vector<double> half(base->size());
  for (auto x : base->active_points()) half[x] = base->coord(x, 0) / 2;
  auto b = clamp_coefficients(xt, GridFunction(base, half), RingElement::real(1.0));
  for (auto p : prod->active_points()) {
    const double x = prod->coord(p, 0), t = prod->coord(p, 1);
    CHECK(b.value_at(*prod, p) == doctest::Approx(x * std::max(t, x / 2)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(clamp_coefficients(xt, RingElement::real(0.8), RingElement::real(0.2)), ContractError);
}

TEST_CASE("glue_patch telescopes slab factorizations") {
  auto base = unit_line(9);
  auto prod = base->with_time(17);
  const auto h = HomotopyMatrix::make(shear(prod, [](double) { return 1.0; }), base, 17);
  auto t_fn = on_product(prod, [](const std::vector<double>&, double t) { return t; });

  auto lo = band(prod, [](double, double t) { return t <= 0.5; });
  auto hi = band(prod, [](double, double t) { return t >= 0.5; });
  const auto sc = slice_cover({lo, hi});
  REQUIRE(sc.patches.size() == 1);
  const auto& sp = sc.patches[0];
  REQUIRE(sp.slabs() == 2);

  FactorList one(2, RingTag::grid(prod));
  one.push(1, 2, t_fn);

  SUBCASE("single slab") {
    const auto whole = slice_cover({GridSubset::all(prod)});
    auto glued = glue_patch(h, whole.patches[0], {one});
    CHECK(glued.size() == 1);
    CHECK(product_gap(glued, h.h().entries(), prod) < 1e-15);
  }
  SUBCASE("two slabs split at one half") {
    auto glued = glue_patch(h, sp, {one, one});
    CHECK(glued.size() == 3);
    CHECK(product_gap(glued, h.h().entries(), prod) < 1e-12);
  }
  SUBCASE("slab 2 disagrees with H at the split") {
    auto v = t_fn.sample(*prod);
    v[4 * 17 + 8] += 1e-3;
    FactorList bent(2, RingTag::grid(prod));
    bent.push(1, 2, GridFunction(prod, v));
    try {
      glue_patch(h, sp, {one, bent});
      FAIL("expected a boundary mismatch");
    } catch (const VerificationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("slab 2") != std::string::npos);
      CHECK(msg.find(prod->describe_point(4 * 17 + 8)) != std::string::npos);
    }
  }
}

TEST_CASE("retraction") {
  auto d = unit_line(11);
  CHECK(retraction(RingElement::real(1.0), RingElement::real(0.0)).scalar().to_double() == 1.0);
  std::vector<double> x(d->size()), y(d->size());
  for (auto p : d->active_points()) {
    x[p] = d->coord(p, 0);
    y[p] = 1.0 - x[p];
  }
  auto r = retraction(GridFunction(d, y), GridFunction(d, x));
  for (auto p : d->active_points()) CHECK(r.value_at(*d, p) == std::max(x[p], y[p]));

  auto phi = separating_function(GridSubset::of_points(d, std::vector<std::size_t>{0, 1}),
                                 GridSubset::of_points(d, std::vector<std::size_t>{9, 10}));
  auto r0 = retraction(phi, GridFunction::constant(d, 0.0));
  CHECK(r0.grid().values() == phi.values());

  std::vector<double> bad(d->size(), 0.5);
  bad[3] = 1.5;
  CHECK_THROWS_AS(retraction(GridFunction(d, bad), GridFunction(d, x)), ContractError);
}

TEST_CASE("commutator_step") {
  auto base = unit_line(9);
  auto prod = base->with_time(17);
  const auto h = HomotopyMatrix::make(shear(prod, [](double x) { return x; }), base, 17);
  FactorList glued(2, RingTag::grid(prod));
  glued.push(1, 2, h.h().entries()(0, 1));

  std::vector<double> eta(base->size());
  for (auto x : base->active_points()) eta[x] = std::round(base->coord(x, 0) * 8) / 16;  // on the t-grid
  const RingElement eta_fn = GridFunction(base, eta);

  auto pointwise_gap = [&](const CommutatorStep& s) {
    double worst = 0.0;
    for (auto x : base->active_points()) {
      const double xv = base->coord(x, 0);
      const double en = s.eta_next.value_at(*base, x);
      // H(x,e)^-1 H(x,e') for the shear is [[1, x (e' - e)], [0, 1]].
      std::vector<double> want{1, xv * (en - eta[x]), 0, 1};
      worst = std::max(worst, oracle::max_abs_diff(oracle::product_at(s.g, *base, x), want));
    }
    return worst;
  };

  SUBCASE("phi = 0 leaves time alone") {
    auto s = commutator_step(h, glued, eta_fn, GridSubset::all(base), GridFunction::constant(base, 0.0));
    for (auto x : base->active_points()) CHECK(s.eta_next.value_at(*base, x) == eta[x]);
    CHECK(pointwise_gap(s) < 1e-15);
  }
  SUBCASE("phi = 1 moves every point to t = 1") {
    auto s = commutator_step(h, glued, eta_fn, GridSubset::all(base), GridFunction::constant(base, 1.0));
    for (auto x : base->active_points()) CHECK(s.eta_next.value_at(*base, x) == 1.0);
    CHECK(pointwise_gap(s) < 1e-14);
  }
  SUBCASE("points outside W cancel to the identity") {
    GridSubset w(base);
    for (std::size_t x = 3; x < 9; ++x) w.insert(x);
    auto w2 = GridSubset::of_points(base, std::vector<std::size_t>{6, 7, 8});
    auto phi = separating_function(w.complement(), w2);
    auto s = commutator_step(h, glued, eta_fn, w, phi);
    CHECK(pointwise_gap(s) < 1e-14);
    for (std::size_t x = 0; x < 3; ++x) {
      CHECK(s.eta_next.value_at(*base, x) == eta[x]);
      CHECK(oracle::max_abs_diff(oracle::product_at(s.g, *base, x), oracle::eye(2)) == 0.0);
    }
    CHECK(s.eta_next.value_at(*base, 7) == 1.0);
  }
  SUBCASE("time outside [0,1] is rejected") {
    CHECK_THROWS_AS(commutator_step(h, glued, RingElement::real(-0.5), GridSubset::all(base), RingElement::real(1.0)),
                    ContractError);
  }
}

TEST_CASE("homotopy_certificate") {
  auto base = unit_line(9);
  auto prod = base->with_time(17);

  SUBCASE("constant homotopy gives identity steps") {
    RingMatrix a = identity_matrix(2, RingTag::exact_scalar());
    a(1, 0) = on_product(prod, [](const std::vector<double>& x, double) { return x[0] * x[0] - 2; });
    const auto h = HomotopyMatrix::make(a, base, 17);
    auto res = homotopy_certificate(h);
    CHECK(res.residual <= 1e-9);
    CHECK(certificate_gap(res.certificate) <= 1e-9);
    for (const auto& g : res.certificate.steps)
      for (auto x : base->active_points())
        CHECK(oracle::max_abs_diff(oracle::product_at(g, *base, x), oracle::eye(2)) < 1e-12);
  }
  SUBCASE("shear t q(x)") {
    const auto h = HomotopyMatrix::make(shear(prod, [](double x) { return 3 * x * x - x + 2; }), base, 17);
    auto res = homotopy_certificate(h);
    CHECK(certificate_gap(res.certificate) <= 1e-9);
    CHECK(res.certificate.b(0, 1).value_at(*base, 8) == doctest::Approx(4.0));
  }
  SUBCASE("rotation loop from I to I") {
    const auto h = HomotopyMatrix::make(rotation_loop(prod, 1), base, 17);
    auto res = homotopy_certificate(h);
    CHECK(res.cover_sets >= 2);
    CHECK(certificate_gap(res.certificate) <= 1e-9);
    // The product of each step is I, but the factors themselves are not.
    bool nontrivial = false;
    for (const auto& g : res.certificate.steps)
      for (const auto& f : g.factors())
        for (auto x : base->active_points())
          if (std::fabs(f.r.value_at(*base, x)) > 1e-3) nontrivial = true;
    CHECK(nontrivial);
  }
}

TEST_CASE("contractible_factorization") {
  auto d = unit_line(17);

  SUBCASE("constant matrix") {
    std::vector<mpq_class> a{2, 3, 1, 2};
    auto res = contractible_factorization(SLMatrix::checked(oracle::to_ring_q(a, 2), 0), d, {0.0});
    CHECK(res.residual == 0.0);
  }
  SUBCASE("[[1, x], [0, 1]]") {
    RingMatrix a = identity_matrix(2, RingTag::poly(d, Backend::Exact));
    a(0, 1) = PolyFunction::from_monomials(d, Backend::Exact, {{Scalar::exact(1), {1}}});
    auto res = contractible_factorization(SLMatrix::checked(a, 0), d, {0.0}, 16);
    CHECK(product_gap(res.factors, a, d) <= 1e-9);
  }
  SUBCASE("product of four random polynomial factors") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t n : {2u, 3u}) {
      FactorList known(n, RingTag::poly(d, Backend::Exact));
      for (int k = 0; k < 4; ++k) {
        std::uniform_int_distribution<int> idx(1, static_cast<int>(n));
        int i = idx(rng), j = idx(rng);
        while (j == i) j = idx(rng);
        known.push(i, j, PolyFunction::from_monomials(d, Backend::Exact,
                                                      {{Scalar::exact(coef(rng)), {0}}, {Scalar::exact(coef(rng), 2), {1}},
                                                       {Scalar::exact(coef(rng), 3), {2}}}));
      }
      const RingMatrix a = product(known);
      auto res = contractible_factorization(SLMatrix::checked(a, 0), d, {0.0}, 32);
      CHECK(product_gap(res.factors, a, d) <= 1e-9);
      CHECK(res.certify.residual <= 1e-9);
    }
  }
  SUBCASE("masked domains are rejected") {
    std::vector<bool> mask(17, true);
    mask[5] = false;
    auto md = make_domain({{Rational(0), Rational(1)}}, {17}, mask);
    CHECK_THROWS_AS(contractible_factorization(SLMatrix::identity(2, RingTag::exact_scalar()), md, {0.0}), ContractError);
  }
}
