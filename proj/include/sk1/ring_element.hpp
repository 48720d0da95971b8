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

#ifndef SK1_RING_ELEMENT_HPP
#define SK1_RING_ELEMENT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sk1/chebyshev.hpp"
#include "sk1/domain.hpp"
#include "sk1/scalar.hpp"

namespace sk1 {

/// Continuous-class function: one double per grid point of its domain.
/// Values at masked-out points are kept at zero and never read.
class GridFunction {
 public:
  GridFunction(DomainPtr domain, std::vector<double> values);
  static GridFunction constant(DomainPtr domain, double v);

  const DomainPtr& domain() const { return domain_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t p) const { return values_[p]; }

 private:
  DomainPtr domain_;
  std::vector<double> values_;
};

/// A numerator polynomial over a product of denominator polynomials.
/// An empty denominator list means an honest polynomial; anything else is a
/// fraction-field element. Denominators stay factored so that repeated
/// pivots share factors instead of multiplying out.
template <class T>
struct PolyFrac {
  ChebPoly<T> num;
  std::vector<ChebPoly<T>> den;
};

/// Smooth-class function: a Chebyshev-basis polynomial (or a flagged fraction
/// of polynomials) in coordinates rescaled from the domain box to [-1, 1].
class PolyFunction {
 public:
  using Exact = PolyFrac<Rational>;
  using Float = PolyFrac<double>;

  PolyFunction(DomainPtr domain, ChebPoly<Rational> p);
  PolyFunction(DomainPtr domain, ChebPoly<double> p);
  PolyFunction(DomainPtr domain, Exact f);
  PolyFunction(DomainPtr domain, Float f);

  /// Builds sum_k coef_k * x^{exponents_k} in the domain's own coordinates.
  static PolyFunction from_monomials(DomainPtr domain, Backend backend,
                                     const std::vector<std::pair<Scalar, std::vector<int>>>& terms);
  static PolyFunction constant(DomainPtr domain, const Scalar& v);

  const DomainPtr& domain() const { return domain_; }
  Backend backend() const { return rep_.index() == 0 ? Backend::Exact : Backend::Float; }
  bool is_fraction() const;
  const Exact& exact() const { return std::get<0>(rep_); }
  const Float& flt() const { return std::get<1>(rep_); }

  /// Value at grid point p of the own domain.
  double value_at(std::size_t p) const;
  /// Value at an arbitrary point given in domain coordinates.
  double value_at_coords(std::span<const double> x) const;
  /// Exact value at grid point p (exact backend only).
  Rational exact_value_at(std::size_t p) const;
  std::vector<double> sample() const;

  PolyFunction to_float() const;
  bool is_zero() const;
  bool is_one() const;

  PolyFunction operator-() const;
  friend PolyFunction operator+(const PolyFunction& a, const PolyFunction& b);
  friend PolyFunction operator-(const PolyFunction& a, const PolyFunction& b);
  friend PolyFunction operator*(const PolyFunction& a, const PolyFunction& b);
  /// Reciprocal as a fraction-field element; throws if zero at an active grid point.
  PolyFunction inverse() const;

 private:
  DomainPtr domain_;
  std::variant<Exact, Float> rep_;
};

enum class Kind { Scalar, Grid, Poly };

const char* to_string(Kind k);

/// An element of one of the coefficient rings: scalars, grid-sampled
/// functions, or polynomial functions over a box domain.
class RingElement {
 public:
  RingElement() : v_(Scalar()) {}
  RingElement(Scalar s) : v_(std::move(s)) {}              // NOLINT(google-explicit-constructor)
  RingElement(GridFunction g) : v_(std::move(g)) {}        // NOLINT(google-explicit-constructor)
  RingElement(PolyFunction p) : v_(std::move(p)) {}        // NOLINT(google-explicit-constructor)

  static RingElement exact(long num, long den = 1) { return Scalar::exact(num, den); }
  static RingElement real(double v) { return Scalar(v); }

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  Backend backend() const;
  /// Null for scalars.
  DomainPtr domain() const;

  const Scalar& scalar() const { return std::get<Scalar>(v_); }
  const GridFunction& grid() const { return std::get<GridFunction>(v_); }
  const PolyFunction& poly() const { return std::get<PolyFunction>(v_); }

  bool fraction_field() const { return kind() == Kind::Poly && poly().is_fraction(); }
  /// Scalars and polynomials (including flagged fractions) are smooth.
  bool smooth_class() const { return kind() != Kind::Grid; }

  /// Value at grid point p of `d`. Scalars ignore the point; functions require
  /// d to be their own domain.
  double value_at(const Domain& d, std::size_t p) const;
  /// Values at every point of `d` (zeros at masked-out points).
  std::vector<double> sample(const Domain& d) const;

  bool is_exact_zero() const;
  bool is_exact_one() const;

  RingElement to_float() const;

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  /// Throws ContractError unless the element is a unit (nonzero at every active grid point).
  RingElement inverse() const;

  std::string describe() const;

 private:
  std::variant<Scalar, GridFunction, PolyFunction> v_;
};

/// The common coefficient ring of a factor list or matrix.
struct RingTag {
  Kind kind = Kind::Scalar;
  Backend backend = Backend::Exact;
  DomainPtr domain;

  static RingTag exact_scalar() { return {}; }
  static RingTag float_scalar() { return {Kind::Scalar, Backend::Float, nullptr}; }
  static RingTag grid(DomainPtr d) { return {Kind::Grid, Backend::Float, std::move(d)}; }
  static RingTag poly(DomainPtr d, Backend b) { return {Kind::Poly, b, std::move(d)}; }

  friend bool operator==(const RingTag& a, const RingTag& b) {
    return a.kind == b.kind && a.backend == b.backend && same_domain(a.domain, b.domain);
  }
};

RingTag tag_of(const RingElement& e);

/// Smallest ring containing both (Scalar < Poly < Grid); throws on mixed backends or domains.
RingTag join(const RingTag& a, const RingTag& b);
/// As join, but an exact side is first embedded into the float backend.
RingTag widen(const RingTag& a, const RingTag& b);

RingElement constant(const RingTag& tag, const Scalar& v);
inline RingElement zero(const RingTag& tag) { return constant(tag, Scalar::exact(0)); }
inline RingElement one(const RingTag& tag) { return constant(tag, Scalar::exact(1)); }

/// Embeds e into the ring `tag`: scalars become constants, exact values become
/// floats, polynomials are sampled onto grids. Throws when no embedding exists.
RingElement promote(const RingElement& e, const RingTag& tag);

}  // namespace sk1

#endif  // SK1_RING_ELEMENT_HPP
