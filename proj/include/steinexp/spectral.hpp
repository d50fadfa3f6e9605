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

// Spectral measure of the Bernoulli-Laplace chain on n/2 + n/2 balls.
//
// Eigenvalue tau(i) = 1 - i(n-i+1)/(n/2)^2 occurs with multiplicity
// C(n,i) - C(n,i-1) (1 for i = 0), i = 0..n/2. Drawing an eigenvalue
// uniformly gives state i with probability pi(i) and the recentred,
// rescaled statistic W(i) = (n/2) tau(i) + 1 = (n-2i)(n+2-2i)/(2n), which
// is close to Exp(1) in Kolmogorov distance at rate n^{-1/2}.

#ifndef STEINEXP_SPECTRAL_HPP_
#define STEINEXP_SPECTRAL_HPP_

#include <cstddef>
#include <vector>

#include "steinexp/rational.hpp"

namespace steinexp {

class SpectralMeasure {
 public:
  // Throws std::invalid_argument unless n is even and >= 2.
  explicit SpectralMeasure(long n);

  long n() const { return n_; }
  std::size_t size() const { return pi_.size(); }
  std::size_t last_state() const { return pi_.size() - 1; }

  const Rational& pi(std::size_t i) const { return pi_.at(i); }
  const Rational& w(std::size_t i) const { return w_.at(i); }
  const Rational& tau(std::size_t i) const { return tau_.at(i); }

  const std::vector<Rational>& pi() const { return pi_; }
  const std::vector<Rational>& w() const { return w_; }

  // P[W >= w(i)] = sum_{j <= i} pi(j), since w is decreasing in i.
  const Rational& upper_tail(std::size_t i) const { return upper_tail_.at(i); }

 private:
  long n_;
  std::vector<Rational> pi_;
  std::vector<Rational> w_;
  std::vector<Rational> tau_;
  std::vector<Rational> upper_tail_;
};

inline SpectralMeasure build_measure(long n) { return SpectralMeasure(n); }

enum class Side { kLeft, kRight };

const char* to_string(Side side);

// Right: P[W <= t]. Left: P[W < t]. Throws on t < 0.
Rational cdf_w(const SpectralMeasure& m, const Rational& t, Side side);
Rational cdf_w(const SpectralMeasure& m, double t, Side side);

// 1 - e^{-t}. Throws on t < 0.
double exp_cdf(double t);

// |P[W <= t] - P[Z <= t]| with the CDF of W taken exactly.
double discrepancy(const SpectralMeasure& m, const Rational& t);

struct KolmogorovReport {
  long n = 0;
  double distance = 0.0;
  std::size_t witness_state = 0;
  Side witness_side = Side::kRight;
  double scaled = 0.0;
};

// sup_{t>0} |F_W(t) - F_Z(t)|, attained (possibly as a one-sided limit) at an
// atom of W, from the left or from the right.
KolmogorovReport kolmogorov_distance(const SpectralMeasure& m);

struct SharpnessPoint {
  long n = 0;
  long a = 0;  // state n/2 - sqrt(n)
  Rational t_n;
  Rational tail;  // P[W >= t_n] = C(n,a) / C(n,n/2)
  double delta = 0.0;
  double scaled = 0.0;
};

// Throws unless n is an even perfect square.
SharpnessPoint sharpness_point(long n);
SharpnessPoint sharpness_point(const SpectralMeasure& m);

struct BinomialTailCheck {
  Rational ratio;  // C(n, n/2 - a) / C(n, n/2)
  double bound = 0.0;  // e^{-a(a-1)/n}
  bool holds = false;
};

// Throws unless 0 <= a <= n/2. `guard` is added to the float bound before the
// exact comparison.
BinomialTailCheck binomial_tail_bound_check(long n, long a, double guard = 0.0);

// Same check using a caller-supplied row C(n, 0..n).
BinomialTailCheck binomial_tail_bound_check(long n, long a,
                                            const std::vector<Integer>& row,
                                            double guard = 0.0);

}  // namespace steinexp

#endif  // STEINEXP_SPECTRAL_HPP_
