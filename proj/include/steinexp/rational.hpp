// Copyright 2026 The steinexp Authors.
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

#ifndef STEINEXP_RATIONAL_HPP_
#define STEINEXP_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace steinexp {

using Integer = mpz_class;
using Rational = mpq_class;

// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
Integer binomial(long n, long k);

// Row C(n, 0..n) built by the multiplicative recurrence.
std::vector<Integer> binomial_row(long n);

// Canonical rational p/q.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

// Exact value of a binary double.
inline Rational exact(double x) { return Rational(x); }

// Nearest double below or at |q| in magnitude (GMP truncation).
inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& base, unsigned exponent);

// Always "p/q", also for integers ("3/1"), so the column format never
// depends on the value.
std::string to_string(const Rational& q);

// Accepts "p/q", integers, and decimals with optional exponent ("0.1",
// "2.5e-3"). Decimals are read exactly: "0.1" is 1/10. Throws
// std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// Rising factorial (x)_m = x (x+1) ... (x+m-1), (x)_0 = 1.
Rational rising_factorial(const Rational& x, unsigned m);

}  // namespace steinexp

#endif  // STEINEXP_RATIONAL_HPP_
