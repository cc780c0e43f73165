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

#ifndef PRIVFL_RATIONAL_HPP
#define PRIVFL_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace privfl {

// Exact rational over 128-bit integers. Costs are sums of small integer
// distances and facility costs, and probabilities have denominators of at
// most n * d^m at the scales this library runs at, so 128 bits leave ample
// headroom. Always stored normalized: gcd(num, den) == 1, den > 0.
class Rational {
 public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit
  Rational(Int numerator, Int denominator);

  static Rational from_int64(std::int64_t numerator, std::int64_t denominator = 1) {
    return Rational(static_cast<Int>(numerator), static_cast<Int>(denominator));
  }

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const;
  long double to_long_double() const;

  // Rendered as "p" for integers and "p/q" otherwise.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  void normalize();

  Int num_;
  Int den_;
};

std::string int128_to_string(__int128 value);
std::string uint128_to_string(unsigned __int128 value);

}  // namespace privfl

#endif  // PRIVFL_RATIONAL_HPP
