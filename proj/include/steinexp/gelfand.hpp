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

// Spherical functions of the Gelfand pair (S_n, S_k x S_{n-k}), i.e. the
// Johnson graph J(n, k) with 0 <= k <= n/2.
//
// omega_i(r) is the value of the i-th spherical function on the double coset
// of permutations moving r points of {1..k} out of {1..k}; equivalently on a
// pair of k-subsets at Johnson distance r. It is the terminating
// hypergeometric sum
//
//   omega_i(r) = sum_{m=0}^{i} (-i)_m (i-n-1)_m (-r)_m / ((k-n)_m (-k)_m m!)
//
// with rising factorials, a Hahn polynomial in r. The random walk on J(n,k)
// has eigenvalues omega_i(1) with multiplicity d_i = C(n,i) - C(n,i-1).

#ifndef STEINEXP_GELFAND_HPP_
#define STEINEXP_GELFAND_HPP_

#include <cstddef>
#include <vector>

#include "steinexp/check.hpp"
#include "steinexp/kernels.hpp"
#include "steinexp/rational.hpp"

namespace steinexp {

// Throws std::invalid_argument unless 0 <= i, r <= k <= n/2.
Rational spherical_value(long n, long k, long i, long r);

struct SphericalTable {
  long n = 0;
  long k = 0;
  std::vector<std::vector<Rational>> omega;  // omega[i][r]
  std::vector<Integer> dims;                 // d_i
  std::vector<Integer> dist_count;           // C(k,r) C(n-k,r)
  Integer vertices;                          // C(n,k)

  std::size_t size() const { return omega.size(); }
};

SphericalTable spherical_table(long n, long k);

// Normalization, trivial function, omega_1 closed form, dimension and
// distance-count sums.
CheckReport spherical_table_check(const SphericalTable& t);

// pi_k(i) = d_i / C(n, k).
std::vector<Rational> spherical_measure(long n, long k);

// Birth-death form of the spherical-function chain; requires 1 <= k <= n/2.
// At k = n/2 the top row has vanishing n - 2i factors and is closed by
// up(k) = 0, stay(k) = 1 - down(k).
BirthDeathKernel gelfand_kernel(long n, long k);

// Three-term recurrence coefficients; A_k is 0.
Rational hahn_a(long n, long k, long i);
Rational hahn_b(long n, long k, long i);

// -r omega_i(r) = A_i omega_{i+1}(r) - (A_i + B_i) omega_i(r) + B_i omega_{i-1}(r)
// for every 0 <= i <= k and 0 <= r <= k.
CheckReport hahn_recurrence_check(long n, long k);
CheckReport hahn_recurrence_check(const SphericalTable& t);

// sum_r (cnt_r / C(n,k)) omega_i(r) omega_j(r) = delta_ij / d_i.
CheckReport orthogonality_check(long n, long k);
CheckReport orthogonality_check(const SphericalTable& t);

struct DistanceWalkTable {
  long n = 0;
  long k = 0;
  std::vector<std::vector<Rational>> p;  // p[l][r], l = 0..L

  long max_steps() const { return static_cast<long>(p.size()) - 1; }
};

// Law of the Johnson distance from the start after l steps of simple random
// walk on J(n, k), projected to distance classes. Requires 1 <= k <= n/2.
DistanceWalkTable distance_walk(long n, long k, long max_steps);

// coefficient * sqrt(radicand) when has_root, else coefficient. Odd moments
// at general k carry a sqrt(k(n-k)) factor; perfect-square radicands fold in.
struct SurdValue {
  Rational coefficient;
  Integer radicand = 1;
  bool has_root = false;

  double value() const;
  bool operator==(const SurdValue& other) const;
};

// E(W' - W)^m and E[(W' - W)^m | i] for W = sqrt(k(n-k)) omega_i(1), from
// spherical-function values and distance-walk probabilities alone.
SurdValue algebraic_moment(long n, long k, int m);
SurdValue algebraic_conditional_moment(long n, long k, long i, int m);

// Precomputed inputs to the two formulas above.
struct AlgebraicMomentEngine {
  SphericalTable table;
  DistanceWalkTable walk;

  AlgebraicMomentEngine(long n, long k, int m_max);
  SurdValue moment(int m) const;
  SurdValue conditional(long i, int m) const;
};

// The same moments by enumerating transitions of gelfand_kernel(n, k).
SurdValue kernel_conditional_moment(const BirthDeathKernel& l,
                                    const SphericalTable& t, long i, int m);
SurdValue kernel_moment(const BirthDeathKernel& l, const SphericalTable& t, int m);

// Algebraic and kernel routes agree for 1 <= k <= k_max, m <= m_max, every
// state. At k = n/2 also against the kV2 pair's exact moments.
CheckReport moment_agreement_check(long n, long k_max, int m_max);

}  // namespace steinexp

#endif  // STEINEXP_GELFAND_HPP_
