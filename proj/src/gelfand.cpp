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

#include "steinexp/gelfand.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace steinexp {

namespace {

void require_pair(long n, long k, const char* who) {
  if (n < 1 || k < 0 || 2 * k > n)
    throw std::invalid_argument(std::string(who) + ": need 0 <= k <= n/2, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
}

void require_walk(long n, long k, const char* who) {
  require_pair(n, k, who);
  if (k < 1) throw std::invalid_argument(std::string(who) + ": need k >= 1");
}

std::string ij(long i, long j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Rational spherical_value(long n, long k, long i, long r) {
  require_pair(n, k, "spherical_value");
  if (i < 0 || i > k || r < 0 || r > k)
    throw std::invalid_argument("spherical_value: index out of range " + ij(i, r));
  // Consecutive terms differ by the factor
  // (m-i)(m+i-n-1)(m-r) / ((m+k-n)(m-k)(m+1)); none of the denominator
  // factors vanish for m < i <= k.
  Rational sum(1), term(1);
  for (long m = 0; m < i; ++m) {
    term *= make_rational((m - i) * (m + i - n - 1) * (m - r),
                          (m + k - n) * (m - k) * (m + 1));
    if (term == 0) break;
    sum += term;
  }
  return sum;
}

SphericalTable spherical_table(long n, long k) {
  require_pair(n, k, "spherical_table");
  SphericalTable t;
  t.n = n;
  t.k = k;
  t.vertices = binomial(n, k);
  t.omega.assign(k + 1, std::vector<Rational>(k + 1));
  for (long i = 0; i <= k; ++i)
    for (long r = 0; r <= k; ++r) t.omega[i][r] = spherical_value(n, k, i, r);
  for (long i = 0; i <= k; ++i)
    t.dims.push_back(i == 0 ? Integer(1) : Integer(binomial(n, i) - binomial(n, i - 1)));
  for (long r = 0; r <= k; ++r)
    t.dist_count.push_back(binomial(k, r) * binomial(n - k, r));
  return t;
}

CheckReport spherical_table_check(const SphericalTable& t) {
  CheckReport rep{"spherical table " + ij(t.n, t.k), 0, {}};
  const long k = t.k;
  Integer dim_sum(0), cnt_sum(0);
  for (long i = 0; i <= k; ++i) {
    rep.require(t.omega[i][0] == 1, "omega_" + std::to_string(i) + "(0) != 1");
    rep.require(t.dims[i] > 0, "non-positive dimension d_" + std::to_string(i));
    dim_sum += t.dims[i];
  }
  for (long r = 0; r <= k; ++r) {
    rep.require(t.omega[0][r] == 1, "omega_0(" + std::to_string(r) + ") != 1");
    if (k >= 1) {
      Rational expected = Rational(1) - make_rational(t.n * r, k * (t.n - k));
      rep.require(t.omega[1][r] == expected,
                  "omega_1(" + std::to_string(r) + ") = " + to_string(t.omega[1][r]));
    }
    cnt_sum += t.dist_count[r];
  }
  rep.require(dim_sum == t.vertices, "sum of dimensions != C(n,k)");
  rep.require(cnt_sum == t.vertices, "sum of distance counts != C(n,k)");
  return rep;
}

std::vector<Rational> spherical_measure(long n, long k) {
  require_pair(n, k, "spherical_measure");
  const Integer total = binomial(n, k);
  std::vector<Rational> pi;
  for (long i = 0; i <= k; ++i) {
    Integer d = i == 0 ? Integer(1) : Integer(binomial(n, i) - binomial(n, i - 1));
    pi.push_back(make_rational(d, total));
  }
  return pi;
}

BirthDeathKernel gelfand_kernel(long n, long k) {
  require_walk(n, k, "gelfand_kernel");
  BirthDeathKernel l{Variant::kGelfandL, n, k, {}, {}, {}};
  const long kk = k * (n - k);
  for (long i = 0; i <= k; ++i) {
    Rational up = i == k ? Rational(0)
                         : make_rational(n * (n + 1 - i) * (n - i - k) * (k - i),
                                         kk * (n + 1 - 2 * i) * (n - 2 * i));
    Rational down = make_rational(i * n * (n + 1 - i - k) * (k + 1 - i),
                                  kk * (n + 2 - 2 * i) * (n + 1 - 2 * i));
    Rational stay = n - 2 * i == 0
                        ? Rational(Rational(1) - down)
                        : make_rational(i * (n + 1 - i) * (n - 2 * k) * (n - 2 * k),
                                        kk * (n - 2 * i) * (n + 2 - 2 * i));
    l.up.push_back(std::move(up));
    l.down.push_back(std::move(down));
    l.stay.push_back(std::move(stay));
  }
  return l;
}

Rational hahn_a(long n, long k, long i) {
  if (i >= k) return Rational(0);
  return make_rational((n + 1 - i) * (n - k - i) * (k - i),
                       (n + 1 - 2 * i) * (n - 2 * i));
}

Rational hahn_b(long n, long k, long i) {
  return make_rational(i * (n + 1 - k - i) * (k + 1 - i),
                       (n + 2 - 2 * i) * (n + 1 - 2 * i));
}

CheckReport hahn_recurrence_check(const SphericalTable& t) {
  CheckReport rep{"hahn recurrence " + ij(t.n, t.k), 0, {}};
  const long n = t.n, k = t.k;
  for (long i = 0; i <= k; ++i) {
    const Rational a = hahn_a(n, k, i);
    const Rational b = hahn_b(n, k, i);
    for (long r = 0; r <= k; ++r) {
      Rational rhs = -(a + b) * t.omega[i][r];
      if (i < k) rhs += a * t.omega[i + 1][r];
      if (i > 0) rhs += b * t.omega[i - 1][r];
      const Rational lhs = Rational(-r) * t.omega[i][r];
      rep.require(lhs == rhs, "i,r=" + ij(i, r) + ": " + to_string(lhs) +
                                  " != " + to_string(rhs));
    }
  }
  return rep;
}

CheckReport hahn_recurrence_check(long n, long k) {
  return hahn_recurrence_check(spherical_table(n, k));
}

CheckReport orthogonality_check(const SphericalTable& t) {
  CheckReport rep{"orthogonality " + ij(t.n, t.k), 0, {}};
  const long k = t.k;
  for (long i = 0; i <= k; ++i) {
    for (long j = i; j <= k; ++j) {
      Rational s(0);
      for (long r = 0; r <= k; ++r)
        s += Rational(t.dist_count[r]) * t.omega[i][r] * t.omega[j][r];
      s /= Rational(t.vertices);
      Rational expected = i == j ? make_rational(Integer(1), t.dims[i]) : Rational(0);
      rep.require(s == expected, "i,j=" + ij(i, j) + ": " + to_string(s));
    }
  }
  return rep;
}

CheckReport orthogonality_check(long n, long k) {
  return orthogonality_check(spherical_table(n, k));
}

DistanceWalkTable distance_walk(long n, long k, long max_steps) {
  require_walk(n, k, "distance_walk");
  if (max_steps < 0) throw std::invalid_argument("distance_walk: negative step count");
  DistanceWalkTable out;
  out.n = n;
  out.k = k;
  const long degree = k * (n - k);
  std::vector<Rational> cur(k + 1, Rational(0));
  cur[0] = 1;
  out.p.push_back(cur);
  for (long l = 1; l <= max_steps; ++l) {
    std::vector<Rational> next(k + 1, Rational(0));
    for (long r = 0; r <= k; ++r) {
      if (cur[r] == 0) continue;
      const long up = (k - r) * (n - k - r);
      const long down = r * r;
      const long stay = degree - up - down;
      if (up > 0) next[r + 1] += cur[r] * make_rational(up, degree);
      if (down > 0) next[r - 1] += cur[r] * make_rational(down, degree);
      if (stay > 0) next[r] += cur[r] * make_rational(stay, degree);
    }
    cur = std::move(next);
    out.p.push_back(cur);
  }
  return out;
}

namespace {

// Scale a "reduced" moment E[(Delta omega)^m] by sqrt(k(n-k))^m.
SurdValue scale_by_root_power(const Rational& reduced, const Integer& kk, int m) {
  SurdValue out;
  Integer even_part;
  mpz_pow_ui(even_part.get_mpz_t(), kk.get_mpz_t(), static_cast<unsigned long>(m / 2));
  out.coefficient = reduced * Rational(even_part);
  if (m % 2 == 1) {
    if (mpz_perfect_square_p(kk.get_mpz_t())) {
      Integer root = sqrt(kk);
      out.coefficient *= Rational(root);
    } else {
      out.has_root = true;
      out.radicand = kk;
    }
  }
  if (out.coefficient == 0) {
    out.has_root = false;
    out.radicand = 1;
  }
  return out;
}

}  // namespace

double SurdValue::value() const {
  double c = to_double(coefficient);
  return has_root ? c * std::sqrt(radicand.get_d()) : c;
}

bool SurdValue::operator==(const SurdValue& other) const {
  if (coefficient == 0 && other.coefficient == 0) return true;
  return coefficient == other.coefficient && has_root == other.has_root &&
         (!has_root || radicand == other.radicand);
}

AlgebraicMomentEngine::AlgebraicMomentEngine(long n, long k, int m_max)
    : table(spherical_table(n, k)), walk(distance_walk(n, k, m_max)) {}

SurdValue AlgebraicMomentEngine::moment(int m) const {
  if (m < 0 || m > walk.max_steps())
    throw std::invalid_argument("algebraic moment order out of range");
  const long k = table.k;
  Rational reduced(0);
  for (int l = 0; l <= m; ++l) {
    Rational inner(0);
    for (long r = 0; r <= k; ++r)
      inner += table.omega[1][r] * walk.p[l][r] * walk.p[m - l][r] /
               Rational(table.dist_count[r]);
    Rational coef(binomial(m, l));
    if ((m - l) % 2 == 1) coef = -coef;
    reduced += coef * inner;
  }
  return scale_by_root_power(reduced, Integer(k * (table.n - k)), m);
}

SurdValue AlgebraicMomentEngine::conditional(long i, int m) const {
  if (m < 0 || m > walk.max_steps())
    throw std::invalid_argument("algebraic moment order out of range");
  const long k = table.k;
  if (i < 0 || i > k) throw std::invalid_argument("state out of range");
  const Rational& lambda_i = table.omega[i][1];
  Rational reduced(0);
  for (int l = 0; l <= m; ++l) {
    Rational inner(0);
    for (long r = 0; r <= k; ++r)
      inner += table.omega[i][r] * table.omega[1][r] * walk.p[l][r];
    Rational coef = Rational(binomial(m, l)) * pow(lambda_i, static_cast<unsigned>(m - l));
    if ((m - l) % 2 == 1) coef = -coef;
    reduced += coef * inner;
  }
  return scale_by_root_power(reduced, Integer(k * (table.n - k)), m);
}

SurdValue algebraic_moment(long n, long k, int m) {
  return AlgebraicMomentEngine(n, k, m).moment(m);
}

SurdValue algebraic_conditional_moment(long n, long k, long i, int m) {
  return AlgebraicMomentEngine(n, k, m).conditional(i, m);
}

SurdValue kernel_conditional_moment(const BirthDeathKernel& l,
                                    const SphericalTable& t, long i, int m) {
  if (i < 0 || i >= static_cast<long>(l.size()))
    throw std::invalid_argument("state out of range");
  const long k = t.k;
  Rational reduced(0);
  const auto ui = static_cast<std::size_t>(i);
  for (long j = i - 1; j <= i + 1; ++j) {
    if (j < 0 || j > k) continue;
    const Rational lij = l(ui, static_cast<std::size_t>(j));
    if (lij == 0) continue;
    reduced += lij * pow(Rational(t.omega[j][1] - t.omega[i][1]), static_cast<unsigned>(m));
  }
  return scale_by_root_power(reduced, Integer(k * (t.n - k)), m);
}

SurdValue kernel_moment(const BirthDeathKernel& l, const SphericalTable& t, int m) {
  const std::vector<Rational> pi = spherical_measure(t.n, t.k);
  SurdValue acc;
  const long k = t.k;
  Rational reduced(0);
  for (long i = 0; i <= k; ++i) {
    SurdValue c = kernel_conditional_moment(l, t, i, m);
    // Same radicand for every state; accumulate coefficients.
    if (c.has_root) {
      acc.has_root = true;
      acc.radicand = c.radicand;
    }
    reduced += pi[i] * c.coefficient;
  }
  acc.coefficient = reduced;
  if (acc.coefficient == 0) {
    acc.has_root = false;
    acc.radicand = 1;
  }
  return acc;
}

CheckReport moment_agreement_check(long n, long k_max, int m_max) {
  CheckReport rep{"moment agreement n=" + std::to_string(n), 0, {}};
  for (long k = 1; k <= k_max && 2 * k <= n; ++k) {
    const AlgebraicMomentEngine engine(n, k, m_max);
    const BirthDeathKernel l = gelfand_kernel(n, k);
    rep.merge(stochasticity_check(l));
    rep.merge(detailed_balance_check(spherical_measure(n, k), l));
    for (int m = 0; m <= m_max; ++m) {
      const std::string tag = "k=" + std::to_string(k) + " m=" + std::to_string(m);
      rep.require(engine.moment(m) == kernel_moment(l, engine.table, m),
                  tag + ": unconditional moments differ");
      for (long i = 0; i <= k; ++i)
        rep.require(engine.conditional(i, m) ==
                        kernel_conditional_moment(l, engine.table, i, m),
                    tag + " i=" + std::to_string(i) + ": conditional moments differ");
    }
    if (2 * k == n && m_max <= 4) {
      const PairModel v2 = make_pair_model(n, Variant::kV2);
      for (int m = 0; m <= m_max; ++m) {
        const std::string tag = "k=n/2 m=" + std::to_string(m);
        SurdValue direct{v2.moments.raw[m], 1, false};
        rep.require(engine.moment(m) == direct, tag + ": differs from the V2 pair");
        for (long i = 0; i <= k; ++i) {
          SurdValue cond{v2.moments.at(static_cast<std::size_t>(i), m), 1, false};
          rep.require(engine.conditional(i, m) == cond,
                      tag + " i=" + std::to_string(i) + ": differs from the V2 pair");
        }
      }
    }
  }
  return rep;
}

}  // namespace steinexp
