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

// Birth-death kernels on {0..n/2} reversible for the spectral measure, and
// the exchangeable pairs (W, W') = (w(i), w(j)) they induce when i ~ pi and
// j is one step of the kernel from i.
//
//   kV1:  constant drift E(D|W) = -2/n^2 away from W = 0 (small-t pair).
//   kV2:  linear drift E(D|W) = -(4/n)(W - 1), no holding (large-t pair).
//   kGelfandL:  the spherical-function chain of (S_n, S_k x S_{n-k}); see
//               gelfand.hpp. Equal to kV2 at k = n/2.

#ifndef STEINEXP_KERNELS_HPP_
#define STEINEXP_KERNELS_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "steinexp/check.hpp"
#include "steinexp/rational.hpp"
#include "steinexp/spectral.hpp"

namespace steinexp {

enum class Variant { kV1, kV2, kGelfandL };

const char* to_string(Variant v);

struct BirthDeathKernel {
  Variant variant = Variant::kV1;
  long n = 0;
  long k = 0;  // subset size; n/2 except for kGelfandL
  std::vector<Rational> up;
  std::vector<Rational> down;
  std::vector<Rational> stay;

  std::size_t size() const { return up.size(); }

  // K(i, j); zero unless |i - j| <= 1.
  Rational operator()(std::size_t i, std::size_t j) const;
};

BirthDeathKernel kernel_v1(long n);
BirthDeathKernel kernel_v2(long n);

// Rows summing to one with non-negative entries; up(last) = down(0) = 0.
CheckReport stochasticity_check(const BirthDeathKernel& k);

// pi(i) up(i) = pi(i+1) down(i+1), exactly, for every i.
CheckReport detailed_balance_check(const std::vector<Rational>& pi,
                                   const BirthDeathKernel& k);
CheckReport detailed_balance_check(const SpectralMeasure& m,
                                   const BirthDeathKernel& k);

struct PairAtom {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational probability;  // pi(from) K(from, to)
  Rational d;            // w(to) - w(from)
};

// Joint law of (W, W'). Holding atoms (d = 0) are kept so the marginals can
// be checked.
class PairDistribution {
 public:
  PairDistribution(SpectralMeasure measure, BirthDeathKernel kernel);

  const SpectralMeasure& measure() const { return measure_; }
  const BirthDeathKernel& kernel() const { return kernel_; }
  const std::vector<PairAtom>& atoms() const { return atoms_; }
  long n() const { return measure_.n(); }

 private:
  SpectralMeasure measure_;
  BirthDeathKernel kernel_;
  std::vector<PairAtom> atoms_;
};

// Total mass one, both marginals equal pi.
CheckReport marginal_check(const PairDistribution& p);

struct ConditionalMoments {
  int m_max = 4;
  // by_state[i][m] = E(D^m | i), m = 0..m_max.
  std::vector<std::vector<Rational>> by_state;
  std::vector<Rational> abs3_by_state;  // E(|D|^3 | i)

  std::vector<Rational> raw;  // E(D^m), m = 0..m_max
  Rational abs3;              // E|D|^3
  Rational abs_drift;         // E|E(D|W)|
  Rational abs_w_minus_1;     // E|W - 1|

  const Rational& at(std::size_t i, int m) const { return by_state.at(i).at(m); }
};

// Direct enumeration over the (at most three) transitions out of each state.
ConditionalMoments conditional_moments(const PairDistribution& p, int m_max = 4);

// A pair together with its moments; what the bound engine consumes.
struct PairModel {
  PairDistribution pair;
  ConditionalMoments moments;

  explicit PairModel(PairDistribution p);
  long n() const { return pair.n(); }
  const SpectralMeasure& measure() const { return pair.measure(); }
};

PairModel make_pair_model(long n, Variant v);

// Every V1 moment identity (drift, mean, E(D^2|W), E(D^4|W), E(D^4),
// E(D^3|W) = -(16/n^3)(W-1)) as an exact equality.
CheckReport verify_momcom(long n);
CheckReport verify_momcom(const PairModel& v1);

// Every V2 moment identity, including the per-state fourth-moment
// inequality E(D^4|W) <= (256/n^2) W^2 + (256/n^4) 1{W=0}.
CheckReport verify_momcom2(long n);
CheckReport verify_momcom2(const PairModel& v2);

// K~(i,j) = (4/n^2) K(i,j) / (W(i) - W(j))^2 for i != j, and
// E[D~^r | i] = (4/n^2) E[D^{r-2} | i] for r = 2, 3, 4.
CheckReport kernel_relation_check(long n);

// E(D^2 1{|W - t| <= |D|}).
Rational tail_term(const PairDistribution& p, const Rational& t);

// P(|D| > c).
Rational exceed_prob(const PairDistribution& p, const Rational& c);

// E(D^2 1{|D| > c}).
Rational truncated_d2(const PairDistribution& p, const Rational& c);

// c = (4/n)(ceil(sqrt(2.5 n ln n)) + 1).
Rational concentration_radius(long n);

struct ConcentrationReport {
  long n = 0;
  Rational c;
  Rational probability;  // P(|D| > c) for the V1 pair
  double bound = 0.0;    // n^{-5/2}
  bool holds = false;
};

ConcentrationReport concentration_check(long n);
ConcentrationReport concentration_check(const PairDistribution& v1);

}  // namespace steinexp

#endif  // STEINEXP_KERNELS_HPP_
