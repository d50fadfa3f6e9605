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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "steinexp/spectral.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace steinexp;

TEST_CASE("small measures") {
  const SpectralMeasure m2(2);
  CHECK(m2.pi() == std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
  CHECK(m2.w() == std::vector<Rational>{Rational(2), Rational(0)});
  const SpectralMeasure m4(4);
  CHECK(m4.pi() == std::vector<Rational>{make_rational(1, 6), make_rational(1, 2),
                                         make_rational(1, 3)});
  CHECK(m4.w() == std::vector<Rational>{Rational(3), Rational(1), Rational(0)});
  CHECK(m4.upper_tail(1) == make_rational(2, 3));
}

TEST_CASE("invalid n is rejected") {
  for (long n : {-2L, 0L, 1L, 7L}) CHECK_THROWS_AS(SpectralMeasure{n}, std::invalid_argument);
}

TEST_CASE("measure identities hold exactly for every even n <= 1024") {
  for (long n = 2; n <= 1024; n += 2) {
    const SpectralMeasure m(n);
    Rational mass(0), mean(0), second(0);
    bool ok = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      mass += m.pi(i);
      mean += m.pi(i) * m.w(i);
      second += m.pi(i) * m.w(i) * m.w(i);
      ok = ok && m.pi(i) > 0 && m.w(i) == make_rational(n, 2) * m.tau(i) + 1;
      if (i > 0) ok = ok && m.w(i) < m.w(i - 1);
    }
    INFO("n = " << n);
    CHECK(ok);
    CHECK(mass == 1);
    CHECK(mean == 1);
    CHECK(second == 2);
    CHECK(m.pi(m.last_state()) == make_rational(2, n + 2));
    CHECK(m.w(m.last_state()) == 0);
    if (n >= 4) CHECK(m.w(m.last_state() - 1) == make_rational(4, n));
  }
}

TEST_CASE("oracle: spectrum of the swap walk on n/2-subsets") {
  for (long n = 2; n <= 10; n += 2) {
    long dim = 0;
    const auto entries = testing::johnson_walk_matrix(n, dim);
    Eigen::MatrixXd a(dim, dim);
    for (long r = 0; r < dim; ++r)
      for (long c = 0; c < dim; ++c) a(r, c) = entries[r * dim + c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    REQUIRE(solver.info() == Eigen::Success);
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    std::sort(eig.begin(), eig.end());

    const SpectralMeasure m(n);
    std::vector<double> predicted;
    const double count = to_double(Rational(binomial(n, n / 2)));
    for (std::size_t i = 0; i < m.size(); ++i) {
      const long mult = std::lround(to_double(m.pi(i)) * count);
      for (long j = 0; j < mult; ++j) predicted.push_back(to_double(m.tau(i)));
    }
    std::sort(predicted.begin(), predicted.end());
    REQUIRE(predicted.size() == eig.size());
    for (std::size_t j = 0; j < eig.size(); ++j) CHECK(eig[j] == doctest::Approx(predicted[j]).epsilon(1e-9));
  }
}

TEST_CASE("cdf_w") {
  const SpectralMeasure m(4);
  CHECK(cdf_w(m, Rational(1), Side::kRight) == make_rational(5, 6));
  CHECK(cdf_w(m, Rational(1), Side::kLeft) == make_rational(1, 3));
  CHECK(cdf_w(m, Rational(3), Side::kRight) == 1);
  CHECK(cdf_w(m, Rational(100), Side::kLeft) == 1);
  CHECK(cdf_w(m, 1.0, Side::kRight) == make_rational(5, 6));
  CHECK_THROWS_AS(cdf_w(m, Rational(-1), Side::kRight), std::invalid_argument);
  CHECK_THROWS_AS(cdf_w(m, -0.5, Side::kLeft), std::invalid_argument);
}

TEST_CASE("property: the CDF jump at an atom is its mass") {
  testing::Gen g(3);
  for (int trial = 0; trial < 40; ++trial) {
    const SpectralMeasure m(g.even(2, 300));
    const auto i = static_cast<std::size_t>(g.integer(0, static_cast<long>(m.last_state())));
    CHECK(cdf_w(m, m.w(i), Side::kRight) - cdf_w(m, m.w(i), Side::kLeft) == m.pi(i));
    CHECK(cdf_w(m, m.w(i), Side::kRight) == 1 - (i == 0 ? Rational(0) : m.upper_tail(i - 1)));
  }
}

TEST_CASE("exp_cdf") {
  CHECK(exp_cdf(0.0) == 0.0);
  CHECK(exp_cdf(1.0) == doctest::Approx(0.632120558829).epsilon(1e-12));
  CHECK(1.0 - exp_cdf(2.5) == doctest::Approx(0.0820849986).epsilon(1e-9));
  CHECK_THROWS_AS(exp_cdf(-1.0), std::invalid_argument);
}

TEST_CASE("Kolmogorov distance, small n") {
  const KolmogorovReport r4 = kolmogorov_distance(SpectralMeasure(4));
  CHECK(r4.distance == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r4.witness_state == 2);
  CHECK(r4.witness_side == Side::kRight);
  CHECK(r4.scaled == doctest::Approx(2.0 / 3.0));
  const KolmogorovReport r2 = kolmogorov_distance(SpectralMeasure(2));
  CHECK(r2.distance == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r2.witness_state == 1);
}

TEST_CASE("oracle: Kolmogorov distance against a dense scan") {
  for (long n = 2; n <= 64; n += 2) {
    const double lib = kolmogorov_distance(SpectralMeasure(n)).distance;
    CHECK(lib == doctest::Approx(testing::scan_kolmogorov(testing::dense_chain(n, false))).epsilon(1e-9));
  }
}

TEST_CASE("Kolmogorov distance is at least P(W = 0) and at most 1/sqrt(n)") {
  for (long n = 4; n <= 1024; n += 2) {
    const KolmogorovReport r = kolmogorov_distance(SpectralMeasure(n));
    INFO("n = " << n);
    CHECK(r.distance >= 2.0 / (n + 2.0) - 1e-15);
    CHECK(r.scaled <= 1.0);
  }
}

TEST_CASE("sharpness points") {
  const SharpnessPoint p16 = sharpness_point(16);
  CHECK(p16.a == 4);
  CHECK(p16.t_n == make_rational(5, 2));
  CHECK(p16.tail == make_rational(1820, 12870));
  CHECK(p16.delta == doctest::Approx(std::fabs(1820.0 / 12870.0 - std::exp(-2.5))).epsilon(1e-14));
  CHECK(p16.delta == doctest::Approx(0.0593291).epsilon(1e-6));
  CHECK(p16.scaled == doctest::Approx(0.2373166).epsilon(1e-6));

  const SharpnessPoint p4 = sharpness_point(4);
  CHECK(p4.a == 0);
  CHECK(p4.t_n == 3);
  CHECK(p4.delta == doctest::Approx(std::fabs(1.0 / 6.0 - std::exp(-3.0))));

  for (long r = 2; r <= 40; r += 2)
    CHECK(sharpness_point(r * r).t_n == 2 + make_rational(2, r));
  for (long bad : {2L, 8L, 9L, 25L, 50L}) CHECK_THROWS_AS(sharpness_point(bad), std::invalid_argument);
}

TEST_CASE("scaled sharpness discrepancy approaches 2/e^2") {
  double prev_gap = 1.0;
  for (long r = 4; r <= 40; r += 4) {
    const double gap = std::fabs(sharpness_point(r * r).scaled - 2.0 * std::exp(-2.0));
    CHECK(gap <= 1.0 / r);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("binomial tail bound") {
  const BinomialTailCheck a0 = binomial_tail_bound_check(4, 0);
  CHECK(a0.ratio == 1);
  CHECK(a0.bound == 1.0);
  CHECK(a0.holds);
  const BinomialTailCheck a2 = binomial_tail_bound_check(4, 2);
  CHECK(a2.ratio == make_rational(1, 6));
  CHECK(a2.bound == doctest::Approx(std::exp(-0.5)));
  CHECK(a2.holds);
  const BinomialTailCheck b = binomial_tail_bound_check(16, 4);
  CHECK(b.ratio == make_rational(1820, 12870));
  CHECK(b.bound == doctest::Approx(0.47237).epsilon(1e-5));
  CHECK(b.holds);
  CHECK_THROWS_AS(binomial_tail_bound_check(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(binomial_tail_bound_check(4, -1), std::invalid_argument);
}

TEST_CASE("property: binomial tail bound at random (n, a)") {
  testing::Gen g(5);
  for (int trial = 0; trial < 300; ++trial) {
    const long n = g.even(2, 2000);
    const long a = g.integer(0, n / 2);
    const BinomialTailCheck c = binomial_tail_bound_check(n, a, 1e-15);
    INFO("n = " << n << ", a = " << a);
    CHECK(c.holds);
    CHECK(c.ratio == Rational(binomial(n, n / 2 - a)) / Rational(binomial(n, n / 2)));
  }
}
