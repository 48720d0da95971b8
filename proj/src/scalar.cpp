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

#include "sk1/scalar.hpp"

#include <cmath>
#include <cstdio>

#include "sk1/errors.hpp"

namespace sk1 {

const char* to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  auto dot = s.find('.');
  auto exp = s.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
      q.canonicalize();
      return q;
    }
    // Decimal literal: read it exactly as mantissa * 10^exponent.
    std::string mant = exp == std::string::npos ? s : s.substr(0, exp);
    long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    auto d = mant.find('.');
    if (d != std::string::npos) {
      e10 -= static_cast<long>(mant.size() - d - 1);
      mant.erase(d, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw ParseError("bad decimal literal '" + s + "'");
    if (mant[0] == '+') mant.erase(0, 1);
    mpz_class num(mant, 10);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    Rational q = e10 < 0 ? Rational(num, pow10) : Rational(num * pow10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("rational literal out of range '" + s + "'");
  }
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

Scalar Scalar::exact(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::zero(Backend b) { return b == Backend::Exact ? Scalar(Rational(0)) : Scalar(0.0); }
Scalar Scalar::one(Backend b) { return b == Backend::Exact ? Scalar(Rational(1)) : Scalar(1.0); }

const Rational& Scalar::rational() const {
  if (!is_exact()) throw ContractError("float scalar has no exact rational value");
  return std::get<0>(value_);
}

double Scalar::to_double() const {
  return is_exact() ? std::get<0>(value_).get_d() : std::get<1>(value_);
}

bool Scalar::is_zero() const { return is_exact() ? sgn(std::get<0>(value_)) == 0 : std::get<1>(value_) == 0.0; }

bool Scalar::is_one() const { return is_exact() ? std::get<0>(value_) == 1 : std::get<1>(value_) == 1.0; }

Scalar Scalar::abs() const {
  if (is_exact()) return Scalar(Rational(::abs(std::get<0>(value_))));
  return Scalar(std::fabs(std::get<1>(value_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ContractError("scalar 0 is not a unit");
  if (is_exact()) return Scalar(Rational(1 / std::get<0>(value_)));
  return Scalar(1.0 / std::get<1>(value_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<0>(value_)));
  return Scalar(-std::get<1>(value_));
}

namespace {

void require_same_backend(const Scalar& a, const Scalar& b, const char* op) {
  if (a.backend() != b.backend())
    throw ContractError(std::string("mixed-backend scalar arithmetic in '") + op + "'");
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b, "+");
  if (a.is_exact()) return Scalar(Rational(std::get<0>(a.value_) + std::get<0>(b.value_)));
  return Scalar(std::get<1>(a.value_) + std::get<1>(b.value_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b, "-");
  if (a.is_exact()) return Scalar(Rational(std::get<0>(a.value_) - std::get<0>(b.value_)));
  return Scalar(std::get<1>(a.value_) - std::get<1>(b.value_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b, "*");
  if (a.is_exact()) return Scalar(Rational(std::get<0>(a.value_) * std::get<0>(b.value_)));
  return Scalar(std::get<1>(a.value_) * std::get<1>(b.value_));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.backend() != b.backend()) return false;
  if (a.is_exact()) return std::get<0>(a.value_) == std::get<0>(b.value_);
  return std::get<1>(a.value_) == std::get<1>(b.value_);
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return std::get<0>(a.value_) < std::get<0>(b.value_);
  return a.to_double() < b.to_double();
}

std::string Scalar::to_string() const {
  if (is_exact()) return format_rational(std::get<0>(value_));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<1>(value_));
  return buf;
}

}  // namespace sk1
