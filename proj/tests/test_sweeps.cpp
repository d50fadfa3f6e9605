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
#include "steinexp/sweeps.hpp"

using namespace steinexp;

TEST_CASE("grids") {
  const auto g = linear_grid(make_rational(1, 10), Rational(5), 50);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == make_rational(1, 10));
  CHECK(g.back() == 5);
  CHECK(g[1] - g[0] == make_rational(1, 10));
  CHECK(linear_grid(Rational(1), Rational(3), 1) == std::vector<Rational>{Rational(3)});
  CHECK_THROWS_AS(linear_grid(Rational(1), Rational(3), 0), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(Rational(0), Rational(3), 5), std::invalid_argument);
  CHECK(parse_grid("0.5:2:4") ==
        std::vector<Rational>{make_rational(1, 2), Rational(1), make_rational(3, 2), Rational(2)});
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:2:3"), std::invalid_argument);
  CHECK(even_range(3, 10) == std::vector<long>{4, 6, 8, 10});
  CHECK(even_range(10, 2).empty());
}

TEST_CASE("rate fit uses the upper half") {
  const RateFit f = fit_rate({4, 16, 64, 256, 1024}, {0.5, 0.25, 0.25, 0.125, 0.0625}, inverse_sqrt);
  REQUIRE(f.constants.size() == 5);
  CHECK(f.constants[0] == doctest::Approx(1.0));
  CHECK(f.constants[4] == doctest::Approx(2.0));
  CHECK(f.spread == doctest::Approx(1.0));
  CHECK(f.fitted == doctest::Approx(2.0));
  CHECK(sqrt_log_over_n(64) == doctest::Approx(std::sqrt(std::log(64.0) / 64.0)));
  CHECK_THROWS(fit_rate({4}, {1.0, 2.0}, inverse_sqrt));
}

TEST_CASE("serial and parallel sweeps agree") {
  const std::vector<long> ns = {4, 16, 36, 64, 100};
  const auto ks = serial::kolmogorov_sweep(ns), kp = parallel::kolmogorov_sweep(ns);
  REQUIRE(ks.size() == kp.size());
  for (std::size_t j = 0; j < ks.size(); ++j) {
    CHECK(ks[j].n == ns[j]);
    CHECK(kp[j].n == ns[j]);
    CHECK(ks[j].distance == kp[j].distance);
    CHECK(ks[j].witness_state == kp[j].witness_state);
  }
  const auto ss = serial::sharpness_sweep({16, 36, 64}), sp = parallel::sharpness_sweep({16, 36, 64});
  for (std::size_t j = 0; j < ss.size(); ++j) CHECK(ss[j].tail == sp[j].tail);

  const auto evens = even_range(4, 120);
  const auto cs = serial::concentration_sweep(evens), cp = parallel::concentration_sweep(evens);
  for (std::size_t j = 0; j < cs.size(); ++j) CHECK(cs[j].probability == cp[j].probability);
  const auto bs = serial::binomial_tail_sweep(evens), bp = parallel::binomial_tail_sweep(evens);
  for (std::size_t j = 0; j < bs.size(); ++j) {
    CHECK(bs[j].violations == bp[j].violations);
    CHECK(bs[j].worst_ratio == bp[j].worst_ratio);
  }
  const auto ls = serial::lemma_sweep(even_range(2, 40)), lp = parallel::lemma_sweep(even_range(2, 40));
  for (std::size_t j = 0; j < ls.size(); ++j) {
    CHECK(ls[j].checked == lp[j].checked);
    CHECK(ls[j].failures == lp[j].failures);
  }
  const auto gs = serial::gelfand_sweep(even_range(2, 16)), gp = parallel::gelfand_sweep(even_range(2, 16));
  for (std::size_t j = 0; j < gs.size(); ++j) CHECK(gs[j].checked == gp[j].checked);
  for (Pipeline p : {Pipeline::kSmallT, Pipeline::kLargeT, Pipeline::kLogFactor})
    CHECK(serial::pipeline_sweep(p, {16, 32, 64}, Rational(1)) ==
          parallel::pipeline_sweep(p, {16, 32, 64}, Rational(1)));
  const auto grid = linear_grid(make_rational(1, 10), Rational(5), 8);
  const SoundnessReport rs = serial::soundness_scan(16, grid), rp = parallel::soundness_scan(16, grid);
  REQUIRE(rs.records.size() == rp.records.size());
  for (std::size_t j = 0; j < rs.records.size(); ++j) {
    CHECK(rs.records[j].bound == rp.records[j].bound);
    CHECK(rs.records[j].total == rp.records[j].total);
  }
  CHECK(rs.min_ratio == rp.min_ratio);
}

TEST_CASE("lemma checks catch the injected fault") {
  CHECK(lemma_checks(20).passed());
  CHECK_FALSE(lemma_checks(20, true).passed());
  for (const auto& r : parallel::lemma_sweep(even_range(2, 30), true)) CHECK_FALSE(r.passed());
}

TEST_CASE("soundness scan") {
  const auto grid = linear_grid(make_rational(1, 10), Rational(5), 50);
  for (long n : {4L, 64L}) {
    const SoundnessReport r = parallel::soundness_scan(n, grid);
    CHECK(r.report.passed());
    CHECK(r.lemma_cases == 2 * 125);
    for (const auto& rec : r.records) CHECK(rec.sound);
    CHECK_FALSE(r.min_ratio.empty());
  }
  CHECK(parallel::soundness_scan(4, grid).min_ratio.count("bl_small_t") == 0);
  CHECK_THROWS_AS(parallel::soundness_scan(16, {}), std::invalid_argument);
  CHECK_THROWS_AS(serial::soundness_scan(16, {}), std::invalid_argument);
}

TEST_CASE("stein and gelfand suites") {
  CHECK(stein_checks(2000).passed());
  CHECK(gelfand_checks(10).passed());
  CHECK(gelfand_checks(50).passed());
}
