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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "steinexp/kernels.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace steinexp;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST_CASE("kernel_v1 entries") {
  const BirthDeathKernel k2 = kernel_v1(2);
  CHECK(k2.up[0] == q(1, 4));
  CHECK(k2.down[1] == q(1, 4));
  const BirthDeathKernel k4 = kernel_v1(4);
  CHECK(k4.up[0] == q(1, 16));
  CHECK(k4.up[1] == q(1, 6));
  CHECK(k4.down[1] == q(1, 48));
  CHECK(k4.down[2] == q(1, 4));
  CHECK(k4.up[2] == 0);
  CHECK(k4(1, 2) == q(1, 6));
  CHECK(k4(0, 2) == 0);
}

TEST_CASE("kernel_v2 entries") {
  const BirthDeathKernel k4 = kernel_v2(4);
  CHECK(k4.up[0] == 1);
  CHECK(k4.up[1] == q(2, 3));
  CHECK(k4.down[1] == q(1, 3));
  CHECK(k4.down[2] == 1);
  const BirthDeathKernel k2 = kernel_v2(2);
  CHECK(k2.up[0] == 1);
  CHECK(k2.down[1] == 1);
}

TEST_CASE("both kernels are stochastic and reversible for every even n <= 200") {
  for (long n = 2; n <= 200; n += 2) {
    const SpectralMeasure m(n);
    for (const BirthDeathKernel& k : {kernel_v1(n), kernel_v2(n)}) {
      INFO("n = " << n << ", " << to_string(k.variant));
      CHECK(stochasticity_check(k).passed());
      CHECK(detailed_balance_check(m, k).passed());
      CHECK(k.up[k.size() - 1] == 0);
    }
    const BirthDeathKernel v2 = kernel_v2(n);
    for (std::size_t i = 0; i < v2.size(); ++i) CHECK(v2.stay[i] == 0);
  }
}

TEST_CASE("detailed balance example and a perturbed kernel") {
  const SpectralMeasure m(4);
  CHECK(m.pi(0) * kernel_v1(4).up[0] == q(1, 96));
  CHECK(m.pi(1) * kernel_v1(4).down[1] == q(1, 96));
  CHECK(m.pi(1) * kernel_v2(4).up[1] == q(1, 3));

  BirthDeathKernel bad = kernel_v1(4);
  bad.stay[0] -= bad.up[0];
  bad.up[0] *= 2;
  const CheckReport r = detailed_balance_check(m, bad);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].find("state 0") != std::string::npos);
  CHECK(stochasticity_check(bad).passed());
}

TEST_CASE("pair marginals") {
  for (long n : {2L, 4L, 10L, 64L}) {
    CHECK(marginal_check(PairDistribution(SpectralMeasure(n), kernel_v1(n))).passed());
    CHECK(marginal_check(PairDistribution(SpectralMeasure(n), kernel_v2(n))).passed());
  }
}

TEST_CASE("conditional moments at n = 4") {
  const PairModel v1 = make_pair_model(4, Variant::kV1);
  CHECK(v1.moments.at(0, 1) == q(-1, 8));
  CHECK(v1.moments.at(1, 1) == q(-1, 8));
  CHECK(v1.moments.at(2, 1) == q(1, 4));
  for (std::size_t i = 0; i < 3; ++i) CHECK(v1.moments.at(i, 2) == q(1, 4));
  CHECK(v1.moments.raw[4] == q(1, 2));
  CHECK(v1.moments.abs3 == q(1, 3));
  CHECK(v1.moments.abs_drift == q(1, 6));

  const PairModel v2 = make_pair_model(4, Variant::kV2);
  CHECK(v2.moments.at(0, 4) == 16);
  CHECK(v2.moments.at(1, 4) == 6);
  CHECK(v2.moments.at(2, 4) == 1);
  CHECK(v2.moments.at(0, 2) == 4);
  CHECK(v2.moments.at(1, 2) == 2);
  CHECK(v2.moments.at(2, 2) == 1);
  CHECK(v2.moments.at(1, 1) == 0);
  CHECK(v2.moments.abs_w_minus_1 == q(2, 3));
  CHECK(v2.moments.abs3 == q(10, 3));
}

TEST_CASE("n = 2: drift at W = 0 is 1/n") {
  CHECK(make_pair_model(2, Variant::kV1).moments.at(1, 1) == q(1, 2));
}

TEST_CASE("moment lemmas hold exactly for every even n <= 200") {
  for (long n = 2; n <= 200; n += 2) {
    INFO("n = " << n);
    const CheckReport a = verify_momcom(n);
    const CheckReport b = verify_momcom2(n);
    CHECK(a.passed());
    CHECK(b.passed());
    CHECK(a.checked > 0);
    CHECK(b.checked > 0);
  }
}

TEST_CASE("kernel relation between the two pairs") {
  for (long n = 2; n <= 200; n += 2) CHECK(kernel_relation_check(n).passed());
  // Spot values at n = 4.
  const Rational f = q(1, 4);
  const SpectralMeasure m(4);
  const BirthDeathKernel v2 = kernel_v2(4);
  const BirthDeathKernel v1 = kernel_v1(4);
  CHECK(f * v2.down[2] / pow(m.w(2) - m.w(1), 2) == v1.down[2]);
  CHECK(f * v2.up[1] / pow(m.w(1) - m.w(2), 2) == v1.up[1]);
  CHECK(f * v2.up[0] / pow(m.w(0) - m.w(1), 2) == v1.up[0]);
}

TEST_CASE("exchangeability: odd moments vanish and Cauchy-Schwarz holds") {
  testing::Gen g(17);
  for (int trial = 0; trial < 30; ++trial) {
    const long n = g.even(2, 400);
    for (Variant v : {Variant::kV1, Variant::kV2}) {
      const PairModel p = make_pair_model(n, v);
      CHECK(p.moments.raw[1] == 0);
      CHECK(p.moments.raw[3] == 0);
      CHECK(to_double(p.moments.abs3) <=
            std::sqrt(to_double(p.moments.raw[2]) * to_double(p.moments.raw[4])) * (1 + 1e-12));
    }
  }
}

TEST_CASE("tail term") {
  const PairModel v1 = make_pair_model(4, Variant::kV1);
  const PairModel v2 = make_pair_model(4, Variant::kV2);
  CHECK(tail_term(v1.pair, Rational(1)) == q(1, 4));
  CHECK(tail_term(v2.pair, Rational(2)) == q(5, 3));
  for (long n : {4L, 16L, 100L}) {
    const Rational far = Rational(n) / 2 + 3 + q(4, n);
    CHECK(tail_term(make_pair_model(n, Variant::kV1).pair, far) == 0);
    CHECK(tail_term(make_pair_model(n, Variant::kV2).pair, far) == 0);
  }
}

TEST_CASE("oracle: tail term against the dense double-precision chain") {
  testing::Gen g(23);
  for (int trial = 0; trial < 60; ++trial) {
    const long n = g.even(2, 120);
    const bool v2 = trial % 2 == 1;
    const double t = g.real(0.01, 4.0);
    const PairModel p = make_pair_model(n, v2 ? Variant::kV2 : Variant::kV1);
    const double lib = to_double(tail_term(p.pair, exact(t)));
    const double ref = testing::dense_tail_term(testing::dense_chain(n, v2), t);
    INFO("n = " << n << ", t = " << t);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-9).scale(1e-300));
  }
}

TEST_CASE("exceed_prob and truncated_d2 at n = 4") {
  const PairDistribution p = make_pair_model(4, Variant::kV1).pair;
  CHECK(exceed_prob(p, Rational(5)) == 0);
  CHECK(exceed_prob(p, Rational(0)) == q(3, 16));
  CHECK(truncated_d2(p, Rational(2)) == 0);
  CHECK(truncated_d2(p, q(3, 2)) == q(1, 12));
  for (long n : {4L, 20L, 200L}) {
    const PairDistribution pn = make_pair_model(n, Variant::kV1).pair;
    CHECK(exceed_prob(pn, 2 + q(4, n)) == 0);
    CHECK(truncated_d2(pn, 2 + q(4, n)) == 0);
  }
}

TEST_CASE("concentration radius and check") {
  CHECK(concentration_radius(4) == 5);
  const long n = 100;
  const long root = static_cast<long>(std::ceil(std::sqrt(2.5 * n * std::log(100.0))));
  CHECK(concentration_radius(n) == q(4 * (root + 1), n));
  for (long m = 4; m <= 400; m += 2) {
    const ConcentrationReport r = concentration_check(m);
    INFO("n = " << m);
    CHECK(r.holds);
    CHECK(r.probability <= exact(r.bound));
  }
}
