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

#include "steinexp/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace steinexp {

SpectralMeasure::SpectralMeasure(long n) : n_(n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("spectral measure needs an even n >= 2, got " +
                                std::to_string(n));
  const long half = n / 2;
  const std::vector<Integer> row = binomial_row(n);
  const Integer& total = row[half];
  const Rational half_sq = make_rational(half * half);

  pi_.reserve(half + 1);
  w_.reserve(half + 1);
  tau_.reserve(half + 1);
  for (long i = 0; i <= half; ++i) {
    Integer mult = i == 0 ? Integer(1) : Integer(row[i] - row[i - 1]);
    pi_.push_back(make_rational(mult, total));
    w_.push_back(make_rational((n - 2 * i) * (n + 2 - 2 * i), 2 * n));
    tau_.push_back(Rational(1) - make_rational(i * (n - i + 1)) / half_sq);
  }
  upper_tail_.resize(pi_.size());
  Rational acc(0);
  for (std::size_t i = 0; i < pi_.size(); ++i) {
    acc += pi_[i];
    upper_tail_[i] = acc;
  }
}

const char* to_string(Side side) {
  return side == Side::kLeft ? "left" : "right";
}

Rational cdf_w(const SpectralMeasure& m, const Rational& t, Side side) {
  if (t < 0) throw std::invalid_argument("cdf_w: negative t");
  // States with w(i) <= t (or < t) form a suffix i >= first.
  std::size_t first = m.size();
  while (first > 0) {
    const Rational& w = m.w(first - 1);
    bool inside = side == Side::kRight ? w <= t : w < t;
    if (!inside) break;
    --first;
  }
  if (first == m.size()) return Rational(0);
  if (first == 0) return Rational(1);
  return Rational(1) - m.upper_tail(first - 1);
}

Rational cdf_w(const SpectralMeasure& m, double t, Side side) {
  if (!(t >= 0)) throw std::invalid_argument("cdf_w: negative t");
  return cdf_w(m, exact(t), side);
}

double exp_cdf(double t) {
  if (!(t >= 0)) throw std::invalid_argument("exp_cdf: negative t");
  return -std::expm1(-t);
}

double discrepancy(const SpectralMeasure& m, const Rational& t) {
  return std::fabs(to_double(cdf_w(m, t, Side::kRight)) -
                   exp_cdf(to_double(t)));
}

KolmogorovReport kolmogorov_distance(const SpectralMeasure& m) {
  KolmogorovReport out;
  out.n = m.n();
  out.distance = -1.0;
  // Ascending atoms: i = n/2 (w = 0) down to i = 0.
  for (std::size_t k = m.size(); k-- > 0;) {
    const double fz = exp_cdf(to_double(m.w(k)));
    const Rational right_exact =
        k == 0 ? Rational(1) : Rational(Rational(1) - m.upper_tail(k - 1));
    const Rational left_exact = right_exact - m.pi(k);
    const double left = std::fabs(to_double(left_exact) - fz);
    const double right = std::fabs(to_double(right_exact) - fz);
    if (left > out.distance) {
      out.distance = left;
      out.witness_state = k;
      out.witness_side = Side::kLeft;
    }
    if (right > out.distance) {
      out.distance = right;
      out.witness_state = k;
      out.witness_side = Side::kRight;
    }
  }
  out.scaled = out.distance * std::sqrt(static_cast<double>(m.n()));
  return out;
}

namespace {

long exact_sqrt(long n) {
  if (n < 0) return -1;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

}  // namespace

SharpnessPoint sharpness_point(const SpectralMeasure& m) {
  const long n = m.n();
  const long root = exact_sqrt(n);
  if (root < 0)
    throw std::invalid_argument("sharpness_point needs an even perfect square, got " +
                                std::to_string(n));
  SharpnessPoint out;
  out.n = n;
  out.a = n / 2 - root;
  out.t_n = m.w(static_cast<std::size_t>(out.a));
  out.tail = m.upper_tail(static_cast<std::size_t>(out.a));
  out.delta = std::fabs(to_double(out.tail) - std::exp(-to_double(out.t_n)));
  out.scaled = out.delta * static_cast<double>(root);
  return out;
}

SharpnessPoint sharpness_point(long n) {
  if (n < 2 || n % 2 != 0 || exact_sqrt(n) < 0)
    throw std::invalid_argument("sharpness_point needs an even perfect square, got " +
                                std::to_string(n));
  return sharpness_point(SpectralMeasure(n));
}

BinomialTailCheck binomial_tail_bound_check(long n, long a,
                                            const std::vector<Integer>& row,
                                            double guard) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("binomial tail check needs an even n >= 2");
  if (a < 0 || a > n / 2)
    throw std::invalid_argument("binomial tail check needs 0 <= a <= n/2, got a=" +
                                std::to_string(a));
  if (row.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("binomial row has the wrong length");
  BinomialTailCheck out;
  out.ratio = make_rational(row[n / 2 - a], row[n / 2]);
  out.bound = std::exp(-static_cast<double>(a) * static_cast<double>(a - 1) /
                       static_cast<double>(n));
  out.holds = out.ratio <= exact(out.bound + guard);
  return out;
}

BinomialTailCheck binomial_tail_bound_check(long n, long a, double guard) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("binomial tail check needs an even n >= 2");
  return binomial_tail_bound_check(n, a, binomial_row(n), guard);
}

}  // namespace steinexp
