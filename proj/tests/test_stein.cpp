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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "steinexp/stein.hpp"
#include "support/random.hpp"

using namespace steinexp;

namespace {

double left_diff(SteinVersion v, double t, double x, double h) {
  auto f = [&](double y) { return eval(v, t, y).f; };
  return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
}

double right_diff(SteinVersion v, double t, double x, double h) {
  auto f = [&](double y) { return eval(v, t, y).f; };
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("version 1 values") {
  CHECK(eval_v1(1.0, 0.0).f == doctest::Approx(0.0).scale(1.0));
  const SolutionEval at = eval_v1(1.0, 1.0);
  CHECK(at.f == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(at.f1 == 1.0);
  CHECK_FALSE(at.f2_defined);
  const SolutionEval past = eval_v1(1.0, 2.0);
  CHECK(past.f == doctest::Approx(0.6321206).epsilon(1e-7));
  CHECK(past.f1 == 0.0);
  CHECK(past.residual == 0.0);
  CHECK_THROWS_AS(eval_v1(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(eval_v1(1.0, -1e-9), std::invalid_argument);
}

TEST_CASE("version 2 values") {
  CHECK(eval_v2(1.0, 1.0).f == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  const SolutionEval past = eval_v2(1.0, 2.0);
  CHECK(past.f == doctest::Approx((1.0 - std::exp(-1.0)) / 2.0).epsilon(1e-15));
  CHECK(past.f1 == doctest::Approx((std::exp(-1.0) - 1.0) / 4.0).epsilon(1e-15));
  CHECK(past.f1 < 0.0);
  CHECK(eval_v2(2.0, 1e-12).f == doctest::Approx(std::exp(-2.0)).epsilon(1e-11));
  CHECK_THROWS_AS(eval_v2(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(eval_v2(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("audits pass on 10^4-point grids") {
  for (SteinVersion v : {SteinVersion::kV1, SteinVersion::kV2})
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const BoundAudit a = bound_audit(v, t, 10000);
      INFO(to_string(v) << " t = " << t);
      CHECK(a.report.passed());
      CHECK(a.max_residual <= 1e-12);
      CHECK(a.sup_f1 <= a.f1_bound);
      CHECK(a.sup_f2 <= a.f2_bound);
    }
  const BoundAudit v2 = bound_audit(SteinVersion::kV2, 0.5, 10000);
  CHECK(v2.f2_bound == 8.0);
  const BoundAudit v1 = bound_audit(SteinVersion::kV1, 1.0, 10000);
  CHECK(v1.f1_oscillation <= 1.0);
}

TEST_CASE("version 1 derivative is non-negative") {
  testing::Gen g(29);
  for (int trial = 0; trial < 2000; ++trial) {
    const double t = g.real(0.01, 6.0);
    CHECK(eval_v1(t, g.real(0.0, 3.0 * t)).f1 >= 0.0);
  }
}

TEST_CASE("property: ODE residuals vanish") {
  testing::Gen g(31);
  for (int trial = 0; trial < 5000; ++trial) {
    const double t = g.real(0.05, 8.0);
    const double x = g.real(1e-9, 4.0 * t);
    CHECK(std::fabs(eval_v1(t, x).residual) <= 1e-12);
    CHECK(std::fabs(eval_v2(t, x).residual) <= 1e-12);
  }
}

TEST_CASE("one-sided derivatives match finite differences from their side") {
  for (SteinVersion v : {SteinVersion::kV1, SteinVersion::kV2})
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double h = 1e-5 * t;
      // At the kink the derivative is the left one.
      CHECK(eval(v, t, t).f1 == doctest::Approx(left_diff(v, t, t, h)).epsilon(1e-6).scale(1.0));
      for (double x : {0.2 * t, 0.7 * t, t * (1 - 1e-6), t * (1 + 1e-6), 1.5 * t, 2.9 * t}) {
        const double fd = x <= t ? left_diff(v, t, x, h) : right_diff(v, t, x, h);
        INFO(to_string(v) << " t = " << t << " x = " << x);
        CHECK(std::fabs(eval(v, t, x).f1 - fd) <= 1e-6);
      }
      // The right difference at the kink sees the other branch.
      const double jump = std::fabs(right_diff(v, t, t, h) - eval(v, t, t).f1);
      CHECK(jump > 1e-3);
    }
}

TEST_CASE("series and closed form of the version 2 derivative agree") {
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0})
    for (int j = 0; j <= 400; ++j) {
      const double x = 1e-3 + (t - 1e-3) * j / 400.0;
      if (x > t) continue;
      CHECK(std::fabs(v2_derivative_series(t, x) - v2_derivative_closed(t, x)) <= 1e-12);
    }
  // Near zero only the series is trusted; its limit is e^{-t}/2.
  CHECK(v2_derivative_series(1.0, 1e-12) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
  CHECK(eval_v2(1.0, 1e-10).f1 == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("audit grid straddles the kink") {
  const auto xs = audit_grid(2.0, 100);
  CHECK(xs.front() > 0.0);
  CHECK(xs.back() == doctest::Approx(6.0));
  CHECK(std::count(xs.begin(), xs.end(), 2.0) == 1);
  CHECK(std::is_sorted(xs.begin(), xs.end()));
  CHECK_THROWS_AS(audit_grid(0.0, 10), std::invalid_argument);
}
