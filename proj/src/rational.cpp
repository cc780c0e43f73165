// Copyright 2026 The privfl-lab Authors
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

#include "privfl/rational.hpp"

#include <algorithm>

#include "privfl/error.hpp"

namespace privfl {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(Int numerator, Int denominator) : num_(numerator), den_(denominator) {
  if (den_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "rational with zero denominator");
  }
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = gcd128(num_, den_);
  num_ /= g;
  den_ /= g;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

long double Rational::to_long_double() const {
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

std::string Rational::to_string() const {
  std::string s = int128_to_string(num_);
  if (den_ != 1) {
    s += "/";
    s += int128_to_string(den_);
  }
  return s;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& other) {
  // Reduce across the diagonal first to keep intermediates small.
  Int g = gcd128(den_, other.den_);
  Int lhs_scale = other.den_ / g;
  Int rhs_scale = den_ / g;
  num_ = num_ * lhs_scale + other.num_ * rhs_scale;
  den_ = den_ * lhs_scale;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& other) { return *this += -other; }

Rational& Rational::operator*=(const Rational& other) {
  Int g1 = gcd128(num_, other.den_);
  Int g2 = gcd128(other.num_, den_);
  num_ = (num_ / g1) * (other.num_ / g2);
  den_ = (den_ / g2) * (other.den_ / g1);
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "rational division by zero");
  }
  return *this *= Rational(other.den_, other.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross-multiplication preserves order.
  return a.num_ * b.den_ < b.num_ * a.den_;
}

std::string uint128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string int128_to_string(__int128 value) {
  if (value >= 0) return uint128_to_string(static_cast<unsigned __int128>(value));
  unsigned __int128 magnitude = static_cast<unsigned __int128>(-(value + 1)) + 1;
  return "-" + uint128_to_string(magnitude);
}

}  // namespace privfl
