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

#ifndef SK1_CHEBYSHEV_HPP
#define SK1_CHEBYSHEV_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sk1/scalar.hpp"

namespace sk1 {

namespace detail {

inline bool is_zero_coeff(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero_coeff(double d) { return d == 0.0; }
inline double coeff_to_double(const Rational& q) { return q.get_d(); }
inline double coeff_to_double(double d) { return d; }

}  // namespace detail

/// Multivariate polynomial in the tensor Chebyshev basis T_a(s_1)...T_z(s_D),
/// with every s_d ranging over [-1, 1].
///
/// Coefficients are stored densely, row-major over the per-dimension degrees.
/// Products use T_a T_b = (T_{a+b} + T_{|a-b|}) / 2, which stays exact over
/// the rationals and well conditioned over doubles at high degree.
template <class T>
class ChebPoly {
 public:
  ChebPoly() = default;
  explicit ChebPoly(std::size_t dims) : deg_(dims, 0), c_(1, T(0)) {}

  ChebPoly(std::vector<int> degree, std::vector<T> coeffs) : deg_(std::move(degree)), c_(std::move(coeffs)) {
    if (c_.size() != slots(deg_)) throw std::invalid_argument("ChebPoly: coefficient count does not match degrees");
  }

  static ChebPoly constant(std::size_t dims, const T& v) {
    ChebPoly p(dims);
    p.c_[0] = v;
    return p;
  }

  /// The polynomial s_d, i.e. T_1 along dimension d.
  static ChebPoly unit_variable(std::size_t dims, std::size_t d) {
    std::vector<int> deg(dims, 0);
    deg[d] = 1;
    std::vector<T> c(2, T(0));
    c[1] = T(1);
    return ChebPoly(std::move(deg), std::move(c));
  }

  std::size_t dims() const { return deg_.size(); }
  const std::vector<int>& degree() const { return deg_; }
  const std::vector<T>& coeffs() const { return c_; }
  int total_degree() const {
    int s = 0;
    for (int d : deg_) s += d;
    return s;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& v) { return detail::is_zero_coeff(v); });
  }

  bool is_constant() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (!detail::is_zero_coeff(c_[k])) return false;
    return true;
  }

  const T& constant_term() const { return c_[0]; }

  ChebPoly operator-() const {
    ChebPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend ChebPoly operator+(const ChebPoly& a, const ChebPoly& b) { return combine(a, b, false); }
  friend ChebPoly operator-(const ChebPoly& a, const ChebPoly& b) { return combine(a, b, true); }

  friend ChebPoly operator*(const ChebPoly& a, const ChebPoly& b) {
    check_dims(a, b);
    const std::size_t D = a.dims();
    std::vector<int> deg(D);
    for (std::size_t d = 0; d < D; ++d) deg[d] = a.deg_[d] + b.deg_[d];
    ChebPoly r(deg, std::vector<T>(slots(deg), T(0)));
    const auto rs = strides(deg);
    const std::size_t combos = std::size_t{1} << D;
    T weight = T(1);
    for (std::size_t d = 0; d < D; ++d) weight = weight / T(2);

    std::vector<int> ia(D), ib(D);
    for (std::size_t pa = 0; pa < a.c_.size(); ++pa) {
      if (detail::is_zero_coeff(a.c_[pa])) continue;
      a.decode(pa, ia);
      for (std::size_t pb = 0; pb < b.c_.size(); ++pb) {
        if (detail::is_zero_coeff(b.c_[pb])) continue;
        b.decode(pb, ib);
        T prod = a.c_[pa] * b.c_[pb] * weight;
        for (std::size_t m = 0; m < combos; ++m) {
          std::size_t flat = 0;
          for (std::size_t d = 0; d < D; ++d) {
            int k = (m >> d) & 1 ? std::abs(ia[d] - ib[d]) : ia[d] + ib[d];
            flat += rs[d] * static_cast<std::size_t>(k);
          }
          r.c_[flat] += prod;
        }
      }
    }
    r.trim();
    return r;
  }

  ChebPoly scaled(const T& s) const {
    ChebPoly r = *this;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }

  /// Evaluates at unit coordinates s (each in [-1, 1]) in the coefficient type.
  T eval(std::span<const T> s) const {
    auto table = basis_table<T>(s);
    return accumulate<T>(table, [](const T& v) { return v; });
  }

  /// Evaluates at unit coordinates in double precision.
  double eval_double(std::span<const double> s) const {
    auto table = basis_table<double>(s);
    return accumulate<double>(table, [](const T& v) { return detail::coeff_to_double(v); });
  }

  /// Drops trailing all-zero coefficient slices along every dimension.
  void trim() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t d = 0; d < dims(); ++d) {
        if (deg_[d] == 0) continue;
        bool zero = true;
        std::vector<int> idx(dims());
        for (std::size_t p = 0; p < c_.size() && zero; ++p) {
          decode(p, idx);
          if (idx[d] == deg_[d] && !detail::is_zero_coeff(c_[p])) zero = false;
        }
        if (zero) {
          reshape_degree(d, deg_[d] - 1);
          changed = true;
        }
      }
    }
  }

  /// Structural equality after trimming.
  friend bool operator==(const ChebPoly& a, const ChebPoly& b) {
    ChebPoly x = a, y = b;
    x.trim();
    y.trim();
    return x.deg_ == y.deg_ && x.c_ == y.c_;
  }

  template <class U, class Convert>
  ChebPoly<U> convert(Convert f) const {
    std::vector<U> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(f(v));
    return ChebPoly<U>(deg_, std::move(c));
  }

  void decode(std::size_t p, std::vector<int>& idx) const {
    for (std::size_t d = dims(); d-- > 0;) {
      const auto w = static_cast<std::size_t>(deg_[d] + 1);
      idx[d] = static_cast<int>(p % w);
      p /= w;
    }
  }

 private:
  static std::size_t slots(const std::vector<int>& deg) {
    std::size_t n = 1;
    for (int d : deg) n *= static_cast<std::size_t>(d + 1);
    return n;
  }

  static std::vector<std::size_t> strides(const std::vector<int>& deg) {
    std::vector<std::size_t> s(deg.size(), 1);
    std::size_t acc = 1;
    for (std::size_t d = deg.size(); d-- > 0;) {
      s[d] = acc;
      acc *= static_cast<std::size_t>(deg[d] + 1);
    }
    return s;
  }

  static void check_dims(const ChebPoly& a, const ChebPoly& b) {
    if (a.dims() != b.dims()) throw std::invalid_argument("ChebPoly: dimension mismatch");
  }

  static ChebPoly combine(const ChebPoly& a, const ChebPoly& b, bool subtract) {
    check_dims(a, b);
    std::vector<int> deg(a.dims());
    for (std::size_t d = 0; d < a.dims(); ++d) deg[d] = std::max(a.deg_[d], b.deg_[d]);
    ChebPoly r(deg, std::vector<T>(slots(deg), T(0)));
    const auto rs = strides(deg);
    std::vector<int> idx(a.dims());
    auto scatter = [&](const ChebPoly& src, bool negate) {
      for (std::size_t p = 0; p < src.c_.size(); ++p) {
        src.decode(p, idx);
        std::size_t flat = 0;
        for (std::size_t d = 0; d < idx.size(); ++d) flat += rs[d] * static_cast<std::size_t>(idx[d]);
        if (negate)
          r.c_[flat] -= src.c_[p];
        else
          r.c_[flat] += src.c_[p];
      }
    };
    scatter(a, false);
    scatter(b, subtract);
    r.trim();
    return r;
  }

  void reshape_degree(std::size_t dim, int new_deg) {
    std::vector<int> deg = deg_;
    deg[dim] = new_deg;
    std::vector<T> c(slots(deg), T(0));
    const auto rs = strides(deg);
    std::vector<int> idx(dims());
    for (std::size_t p = 0; p < c_.size(); ++p) {
      decode(p, idx);
      if (idx[dim] > new_deg) continue;
      std::size_t flat = 0;
      for (std::size_t d = 0; d < idx.size(); ++d) flat += rs[d] * static_cast<std::size_t>(idx[d]);
      c[flat] = c_[p];
    }
    deg_ = std::move(deg);
    c_ = std::move(c);
  }

  template <class V>
  std::vector<std::vector<V>> basis_table(std::span<const V> s) const {
    if (s.size() != dims()) throw std::invalid_argument("ChebPoly: evaluation point has wrong dimension");
    std::vector<std::vector<V>> table(dims());
    for (std::size_t d = 0; d < dims(); ++d) {
      auto& row = table[d];
      row.resize(static_cast<std::size_t>(deg_[d] + 1));
      row[0] = V(1);
      if (deg_[d] >= 1) row[1] = s[d];
      for (int k = 2; k <= deg_[d]; ++k) row[k] = V(2) * s[d] * row[k - 1] - row[k - 2];
    }
    return table;
  }

  template <class V, class Convert>
  V accumulate(const std::vector<std::vector<V>>& table, Convert conv) const {
    V sum = V(0);
    std::vector<int> idx(dims());
    for (std::size_t p = 0; p < c_.size(); ++p) {
      if (detail::is_zero_coeff(c_[p])) continue;
      decode(p, idx);
      V term = conv(c_[p]);
      for (std::size_t d = 0; d < dims(); ++d) term *= table[d][static_cast<std::size_t>(idx[d])];
      sum += term;
    }
    return sum;
  }

  std::vector<int> deg_;
  std::vector<T> c_;
};

}  // namespace sk1

#endif  // SK1_CHEBYSHEV_HPP
