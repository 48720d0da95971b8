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

#include "sk1/ring_element.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "sk1/errors.hpp"

namespace sk1 {

namespace {

// ---- fraction arithmetic ---------------------------------------------------

template <class T>
ChebPoly<T> product_of(const std::vector<ChebPoly<T>>& fs, std::size_t dims) {
  ChebPoly<T> r = ChebPoly<T>::constant(dims, T(1));
  for (const auto& f : fs) r = r * f;
  return r;
}

template <class T>
PolyFrac<T> normalize(PolyFrac<T> f) {
  std::vector<ChebPoly<T>> kept;
  for (auto& d : f.den) {
    if (d.is_constant()) {
      if (detail::is_zero_coeff(d.constant_term())) throw ContractError("polynomial fraction with zero denominator");
      f.num = f.num.scaled(T(1) / d.constant_term());
    } else if (!f.num.is_constant() && d == f.num) {
      f.num = ChebPoly<T>::constant(f.num.dims(), T(1));
    } else {
      kept.push_back(std::move(d));
    }
  }
  f.den = std::move(kept);
  if (f.num.is_zero()) f.den.clear();
  return f;
}

template <class T>
bool cancel_one(ChebPoly<T>& num, std::vector<ChebPoly<T>>& den) {
  if (num.is_constant()) return false;
  for (std::size_t k = 0; k < den.size(); ++k)
    if (den[k] == num) {
      num = ChebPoly<T>::constant(num.dims(), T(1));
      den.erase(den.begin() + static_cast<std::ptrdiff_t>(k));
      return true;
    }
  return false;
}

template <class T>
PolyFrac<T> frac_mul(const PolyFrac<T>& a, const PolyFrac<T>& b) {
  ChebPoly<T> na = a.num, nb = b.num;
  std::vector<ChebPoly<T>> da = a.den, db = b.den;
  cancel_one(na, db);
  cancel_one(nb, da);
  PolyFrac<T> r{na * nb, std::move(da)};
  for (auto& d : db) r.den.push_back(std::move(d));
  return normalize(std::move(r));
}

template <class T>
PolyFrac<T> frac_add(const PolyFrac<T>& a, const PolyFrac<T>& b, bool subtract) {
  const std::size_t dims = a.num.dims();
  std::vector<bool> used(a.den.size(), false);
  std::vector<ChebPoly<T>> only_b;
  for (const auto& f : b.den) {
    bool matched = false;
    for (std::size_t k = 0; k < a.den.size(); ++k)
      if (!used[k] && a.den[k] == f) {
        used[k] = matched = true;
        break;
      }
    if (!matched) only_b.push_back(f);
  }
  std::vector<ChebPoly<T>> only_a;
  for (std::size_t k = 0; k < a.den.size(); ++k)
    if (!used[k]) only_a.push_back(a.den[k]);

  ChebPoly<T> left = only_b.empty() ? a.num : a.num * product_of(only_b, dims);
  ChebPoly<T> right = only_a.empty() ? b.num : b.num * product_of(only_a, dims);
  PolyFrac<T> r{subtract ? left - right : left + right, a.den};
  for (auto& f : only_b) r.den.push_back(std::move(f));
  return normalize(std::move(r));
}

template <class T>
PolyFrac<T> frac_inverse(const PolyFrac<T>& a) {
  PolyFrac<T> r{product_of(a.den, a.num.dims()), {a.num}};
  return normalize(std::move(r));
}

template <class T>
std::vector<T> unit_point(const Domain& d, std::size_t p);

template <>
std::vector<double> unit_point<double>(const Domain& d, std::size_t p) {
  std::vector<double> s(d.dims());
  for (std::size_t k = 0; k < d.dims(); ++k) s[k] = d.unit_coord(p, k);
  return s;
}

template <>
std::vector<Rational> unit_point<Rational>(const Domain& d, std::size_t p) {
  std::vector<Rational> s(d.dims());
  auto idx = d.multi_index(p);
  for (std::size_t k = 0; k < d.dims(); ++k) {
    s[k] = Rational(-1) + Rational(2 * idx[k], d.resolution()[k] - 1);
    s[k].canonicalize();
  }
  return s;
}

template <class T>
double frac_value(const PolyFrac<T>& f, std::span<const double> s) {
  double v = f.num.eval_double(s);
  for (const auto& d : f.den) v /= d.eval_double(s);
  return v;
}

template <class T>
bool frac_is_one(const PolyFrac<T>& f) {
  if (f.den.empty()) return f.num.is_constant() && f.num.constant_term() == T(1);
  return f.num == product_of(f.den, f.num.dims());
}

void require_same_domain(const DomainPtr& a, const DomainPtr& b) {
  if (!same_domain(a, b)) throw ContractError("ring arithmetic between functions on different domains");
}

void require_same_backend(Backend a, Backend b) {
  if (a != b) throw ContractError("mixed-backend ring arithmetic (exact with float)");
}

}  // namespace

// ---- GridFunction ------------------------------------------------------------

GridFunction::GridFunction(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_) throw ContractError("grid function needs a domain");
  if (values_.size() != domain_->size()) throw ContractError("grid function table does not cover its grid");
  if (domain_->has_mask())
    for (std::size_t p = 0; p < values_.size(); ++p)
      if (!domain_->active(p)) values_[p] = 0.0;
}

GridFunction GridFunction::constant(DomainPtr domain, double v) {
  std::vector<double> vals(domain->size(), v);
  return GridFunction(std::move(domain), std::move(vals));
}

// ---- PolyFunction ------------------------------------------------------------

PolyFunction::PolyFunction(DomainPtr domain, ChebPoly<Rational> p)
    : PolyFunction(std::move(domain), Exact{std::move(p), {}}) {}

PolyFunction::PolyFunction(DomainPtr domain, ChebPoly<double> p)
    : PolyFunction(std::move(domain), Float{std::move(p), {}}) {}

PolyFunction::PolyFunction(DomainPtr domain, Exact f) : domain_(std::move(domain)), rep_(normalize(std::move(f))) {
  if (!domain_) throw ContractError("polynomial function needs a domain");
  if (exact().num.dims() != domain_->dims()) throw ContractError("polynomial dimension does not match its domain");
}

PolyFunction::PolyFunction(DomainPtr domain, Float f) : domain_(std::move(domain)), rep_(normalize(std::move(f))) {
  if (!domain_) throw ContractError("polynomial function needs a domain");
  if (flt().num.dims() != domain_->dims()) throw ContractError("polynomial dimension does not match its domain");
}

PolyFunction PolyFunction::from_monomials(DomainPtr domain, Backend backend,
                                          const std::vector<std::pair<Scalar, std::vector<int>>>& terms) {
  const std::size_t D = domain->dims();
  auto build = [&]<class T>(auto conv) {
    // x_d = centre_d + half_d * s_d
    std::vector<ChebPoly<T>> coord;
    for (std::size_t d = 0; d < D; ++d) {
      Rational centre = (domain->box()[d].lo + domain->box()[d].hi) / 2;
      Rational half = (domain->box()[d].hi - domain->box()[d].lo) / 2;
      coord.push_back(ChebPoly<T>::constant(D, conv(centre)) + ChebPoly<T>::unit_variable(D, d).scaled(conv(half)));
    }
    std::map<std::pair<std::size_t, int>, ChebPoly<T>> powers;
    auto power = [&](std::size_t d, int e) -> const ChebPoly<T>& {
      auto key = std::make_pair(d, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      ChebPoly<T> r = ChebPoly<T>::constant(D, T(1));
      for (int k = 0; k < e; ++k) r = r * coord[d];
      return powers.emplace(key, std::move(r)).first->second;
    };
    ChebPoly<T> sum(D);
    for (const auto& [coef, exps] : terms) {
      if (exps.size() != D) throw ParseError("monomial exponent list has wrong dimension");
      ChebPoly<T> term = ChebPoly<T>::constant(D, T(1));
      for (std::size_t d = 0; d < D; ++d) {
        if (exps[d] < 0) throw ParseError("negative monomial exponent");
        if (exps[d] > 0) term = term * power(d, exps[d]);
      }
      sum = sum + term.scaled(conv(coef));
    }
    return sum;
  };
  if (backend == Backend::Exact) {
    auto conv = [](const auto& v) -> Rational {
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Scalar>) return v.rational();
      else return v;
    };
    return PolyFunction(domain, build.template operator()<Rational>(conv));
  }
  auto conv = [](const auto& v) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Scalar>) return v.to_double();
    else return v.get_d();
  };
  return PolyFunction(domain, build.template operator()<double>(conv));
}

PolyFunction PolyFunction::constant(DomainPtr domain, const Scalar& v) {
  const std::size_t D = domain->dims();
  if (v.is_exact()) return PolyFunction(std::move(domain), ChebPoly<Rational>::constant(D, v.rational()));
  return PolyFunction(std::move(domain), ChebPoly<double>::constant(D, v.to_double()));
}

bool PolyFunction::is_fraction() const {
  return std::visit([](const auto& f) { return !f.den.empty(); }, rep_);
}

double PolyFunction::value_at(std::size_t p) const {
  auto s = unit_point<double>(*domain_, p);
  return std::visit([&](const auto& f) { return frac_value(f, s); }, rep_);
}

double PolyFunction::value_at_coords(std::span<const double> x) const {
  std::vector<double> s(domain_->dims());
  for (std::size_t d = 0; d < s.size(); ++d) s[d] = domain_->to_unit(x[d], d);
  return std::visit([&](const auto& f) { return frac_value(f, s); }, rep_);
}

Rational PolyFunction::exact_value_at(std::size_t p) const {
  if (backend() != Backend::Exact) throw ContractError("exact evaluation of a float polynomial");
  auto s = unit_point<Rational>(*domain_, p);
  const auto& f = exact();
  Rational v = f.num.eval(s);
  for (const auto& d : f.den) {
    Rational dv = d.eval(s);
    if (sgn(dv) == 0) throw ContractError("fraction denominator vanishes at " + domain_->describe_point(p));
    v /= dv;
  }
  return v;
}

std::vector<double> PolyFunction::sample() const {
  std::vector<double> out(domain_->size(), 0.0);
  for (auto p : domain_->active_points()) out[p] = value_at(p);
  return out;
}

PolyFunction PolyFunction::to_float() const {
  if (backend() == Backend::Float) return *this;
  auto conv = [](const Rational& q) { return q.get_d(); };
  Float f{exact().num.convert<double>(conv), {}};
  for (const auto& d : exact().den) f.den.push_back(d.convert<double>(conv));
  return PolyFunction(domain_, std::move(f));
}

bool PolyFunction::is_zero() const {
  return std::visit([](const auto& f) { return f.num.is_zero(); }, rep_);
}

bool PolyFunction::is_one() const {
  return std::visit([](const auto& f) { return frac_is_one(f); }, rep_);
}

PolyFunction PolyFunction::operator-() const {
  return std::visit(
      [&](const auto& f) {
        auto g = f;
        g.num = -g.num;
        return PolyFunction(domain_, std::move(g));
      },
      rep_);
}

namespace {

template <class Op>
PolyFunction poly_binary(const PolyFunction& a, const PolyFunction& b, Op op) {
  require_same_domain(a.domain(), b.domain());
  require_same_backend(a.backend(), b.backend());
  if (a.backend() == Backend::Exact) return PolyFunction(a.domain(), op(a.exact(), b.exact()));
  return PolyFunction(a.domain(), op(a.flt(), b.flt()));
}

}  // namespace

PolyFunction operator+(const PolyFunction& a, const PolyFunction& b) {
  return poly_binary(a, b, [](const auto& x, const auto& y) { return frac_add(x, y, false); });
}

PolyFunction operator-(const PolyFunction& a, const PolyFunction& b) {
  return poly_binary(a, b, [](const auto& x, const auto& y) { return frac_add(x, y, true); });
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b) {
  return poly_binary(a, b, [](const auto& x, const auto& y) { return frac_mul(x, y); });
}

PolyFunction PolyFunction::inverse() const {
  if (is_zero()) throw ContractError("zero polynomial is not a unit");
  for (auto p : domain_->active_points()) {
    bool vanishes = backend() == Backend::Exact ? sgn(exact_value_at(p)) == 0 : value_at(p) == 0.0;
    if (vanishes) throw ContractError("polynomial is not a unit: it vanishes at " + domain_->describe_point(p));
  }
  return std::visit([&](const auto& f) { return PolyFunction(domain_, frac_inverse(f)); }, rep_);
}

// ---- RingElement -------------------------------------------------------------

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Scalar: return "scalar";
    case Kind::Grid: return "grid";
    case Kind::Poly: return "poly";
  }
  return "?";
}

Backend RingElement::backend() const {
  switch (kind()) {
    case Kind::Scalar: return scalar().backend();
    case Kind::Grid: return Backend::Float;
    case Kind::Poly: return poly().backend();
  }
  return Backend::Float;
}

DomainPtr RingElement::domain() const {
  switch (kind()) {
    case Kind::Scalar: return nullptr;
    case Kind::Grid: return grid().domain();
    case Kind::Poly: return poly().domain();
  }
  return nullptr;
}

double RingElement::value_at(const Domain& d, std::size_t p) const {
  switch (kind()) {
    case Kind::Scalar: return scalar().to_double();
    case Kind::Grid:
      if (!(*grid().domain() == d)) throw ContractError("grid function evaluated on a foreign domain");
      return grid()[p];
    case Kind::Poly:
      if (!(*poly().domain() == d)) throw ContractError("polynomial evaluated on a foreign domain");
      return poly().value_at(p);
  }
  return 0.0;
}

std::vector<double> RingElement::sample(const Domain& d) const {
  switch (kind()) {
    case Kind::Scalar: {
      std::vector<double> out(d.size(), 0.0);
      for (auto p : d.active_points()) out[p] = scalar().to_double();
      return out;
    }
    case Kind::Grid:
      if (!(*grid().domain() == d)) throw ContractError("grid function sampled on a foreign domain");
      return grid().values();
    case Kind::Poly:
      if (!(*poly().domain() == d)) throw ContractError("polynomial sampled on a foreign domain");
      return poly().sample();
  }
  return {};
}

bool RingElement::is_exact_zero() const {
  switch (kind()) {
    case Kind::Scalar: return scalar().is_zero();
    case Kind::Grid: {
      const auto& g = grid();
      for (auto p : g.domain()->active_points())
        if (g[p] != 0.0) return false;
      return true;
    }
    case Kind::Poly: return poly().is_zero();
  }
  return false;
}

bool RingElement::is_exact_one() const {
  switch (kind()) {
    case Kind::Scalar: return scalar().is_one();
    case Kind::Grid: {
      const auto& g = grid();
      for (auto p : g.domain()->active_points())
        if (g[p] != 1.0) return false;
      return true;
    }
    case Kind::Poly: return poly().is_one();
  }
  return false;
}

RingElement RingElement::to_float() const {
  switch (kind()) {
    case Kind::Scalar: return scalar().to_float();
    case Kind::Grid: return *this;
    case Kind::Poly: return poly().to_float();
  }
  return *this;
}

RingElement RingElement::operator-() const {
  switch (kind()) {
    case Kind::Scalar: return -scalar();
    case Kind::Grid: {
      auto vals = grid().values();
      for (auto& v : vals) v = -v;
      return GridFunction(grid().domain(), std::move(vals));
    }
    case Kind::Poly: return -poly();
  }
  return *this;
}

namespace {

template <class ScalarOp, class PolyOp, class PointOp>
RingElement ring_binary(const RingElement& a, const RingElement& b, ScalarOp sop, PolyOp pop, PointOp op) {
  require_same_backend(a.backend(), b.backend());
  if (a.kind() == Kind::Scalar && b.kind() == Kind::Scalar) return sop(a.scalar(), b.scalar());
  if (a.kind() == Kind::Grid || b.kind() == Kind::Grid) {
    DomainPtr d = a.kind() == Kind::Grid ? a.grid().domain() : b.grid().domain();
    if (a.kind() != Kind::Scalar) require_same_domain(a.domain(), d);
    if (b.kind() != Kind::Scalar) require_same_domain(b.domain(), d);
    auto x = a.sample(*d);
    auto y = b.sample(*d);
    for (auto p : d->active_points()) x[p] = op(x[p], y[p]);
    return GridFunction(d, std::move(x));
  }
  DomainPtr d = a.kind() == Kind::Poly ? a.poly().domain() : b.poly().domain();
  auto as_poly = [&](const RingElement& e) {
    return e.kind() == Kind::Poly ? e.poly() : PolyFunction::constant(d, e.scalar());
  };
  return pop(as_poly(a), as_poly(b));
}

}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  return ring_binary(
      a, b, [](const Scalar& x, const Scalar& y) { return x + y; },
      [](const PolyFunction& x, const PolyFunction& y) { return x + y; }, [](double x, double y) { return x + y; });
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  return ring_binary(
      a, b, [](const Scalar& x, const Scalar& y) { return x - y; },
      [](const PolyFunction& x, const PolyFunction& y) { return x - y; }, [](double x, double y) { return x - y; });
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  return ring_binary(
      a, b, [](const Scalar& x, const Scalar& y) { return x * y; },
      [](const PolyFunction& x, const PolyFunction& y) { return x * y; }, [](double x, double y) { return x * y; });
}

RingElement RingElement::inverse() const {
  switch (kind()) {
    case Kind::Scalar: return scalar().inverse();
    case Kind::Grid: {
      const auto& g = grid();
      std::vector<double> vals(g.values().size(), 0.0);
      for (auto p : g.domain()->active_points()) {
        if (g[p] == 0.0)
          throw ContractError("grid function is not a unit: it vanishes at " + g.domain()->describe_point(p));
        vals[p] = 1.0 / g[p];
      }
      return GridFunction(g.domain(), std::move(vals));
    }
    case Kind::Poly: return poly().inverse();
  }
  return *this;
}

std::string RingElement::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Scalar: os << scalar().to_string(); break;
    case Kind::Grid: os << "grid function on " << grid().domain()->size() << " points"; break;
    case Kind::Poly: os << (poly().is_fraction() ? "polynomial fraction" : "polynomial") << " (" << to_string(backend()) << ")"; break;
  }
  return os.str();
}

// ---- tags --------------------------------------------------------------------

RingTag tag_of(const RingElement& e) { return {e.kind(), e.backend(), e.domain()}; }

RingTag join(const RingTag& a, const RingTag& b) {
  if (a.backend != b.backend) throw ContractError("mixed-backend coefficient rings");
  if (a.kind == Kind::Scalar) return b;
  if (b.kind == Kind::Scalar) return a;
  require_same_domain(a.domain, b.domain);
  if (a.kind == Kind::Grid || b.kind == Kind::Grid) return RingTag::grid(a.domain);
  return a;
}

RingTag widen(const RingTag& a, const RingTag& b) {
  RingTag x = a, y = b;
  if (x.backend != y.backend) x.backend = y.backend = Backend::Float;
  return join(x, y);
}

RingElement constant(const RingTag& tag, const Scalar& v) {
  Scalar value = tag.backend == Backend::Float ? v.to_float() : v;
  if (tag.backend == Backend::Exact && !v.is_exact()) throw ContractError("float constant in an exact ring");
  switch (tag.kind) {
    case Kind::Scalar: return value;
    case Kind::Grid: return GridFunction::constant(tag.domain, value.to_double());
    case Kind::Poly: return PolyFunction::constant(tag.domain, value);
  }
  return value;
}

RingElement promote(const RingElement& e, const RingTag& tag) {
  if (e.backend() == Backend::Float && tag.backend == Backend::Exact)
    throw ContractError("cannot embed a float value into an exact ring");
  RingElement x = tag.backend == Backend::Float ? e.to_float() : e;
  switch (tag.kind) {
    case Kind::Scalar:
      if (x.kind() != Kind::Scalar) throw ContractError("cannot embed a function into the scalar ring");
      return x;
    case Kind::Poly:
      if (x.kind() == Kind::Scalar) return PolyFunction::constant(tag.domain, x.scalar());
      if (x.kind() == Kind::Grid) throw ContractError("a grid function is not a polynomial");
      require_same_domain(x.domain(), tag.domain);
      return x;
    case Kind::Grid:
      if (x.kind() == Kind::Scalar) return GridFunction::constant(tag.domain, x.scalar().to_double());
      require_same_domain(x.domain(), tag.domain);
      if (x.kind() == Kind::Poly) return GridFunction(tag.domain, x.poly().sample());
      return x;
  }
  return x;
}

}  // namespace sk1
