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

#ifndef SK1_SCALAR_HPP
#define SK1_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace sk1 {

using Rational = mpq_class;

enum class Backend { Exact, Float };

const char* to_string(Backend b);

/// Parses "3", "-11/10" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// A coefficient-ring scalar: either an exact rational or a binary double.
///
/// Arithmetic between an exact and a float scalar throws ContractError; use
/// to_float() to cross backends explicitly.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational q) : value_(std::move(q)) { std::get<0>(value_).canonicalize(); }
  explicit Scalar(double d) : value_(d) {}

  static Scalar exact(long num, long den = 1);
  static Scalar zero(Backend b);
  static Scalar one(Backend b);

  Backend backend() const { return value_.index() == 0 ? Backend::Exact : Backend::Float; }
  bool is_exact() const { return value_.index() == 0; }

  const Rational& rational() const;
  double to_double() const;
  Scalar to_float() const { return Scalar(to_double()); }

  bool is_zero() const;
  bool is_one() const;

  Scalar abs() const;
  /// Throws ContractError when zero.
  Scalar inverse() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  /// Same backend and same value.
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Value comparison across backends (through doubles when mixed).
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

}  // namespace sk1

#endif  // SK1_SCALAR_HPP
