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

// Sweeps over n (and t) used by the CLI suites and the acceptance checks.
//
// Every sweep exists twice: serial:: is the reference loop, parallel:: runs
// the same work items under OpenMP. Results are written by index, so both
// return identical vectors in input order.

#ifndef STEINEXP_SWEEPS_HPP_
#define STEINEXP_SWEEPS_HPP_

#include <map>
#include <string>
#include <vector>

#include "steinexp/bounds.hpp"
#include "steinexp/check.hpp"
#include "steinexp/kernels.hpp"
#include "steinexp/rational.hpp"
#include "steinexp/spectral.hpp"

namespace steinexp {

// count points from lo to hi inclusive, equally spaced, as exact rationals.
// count == 1 gives {hi}. Throws unless 0 < lo <= hi and count >= 1.
std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, int count);

// Parses "a:b:count".
std::vector<Rational> parse_grid(const std::string& spec);

std::vector<long> even_range(long lo, long hi);

struct BinomialTailSweep {
  long n = 0;
  long checked = 0;
  long violations = 0;
  double worst_ratio = 0.0;  // max over a of ratio / bound
};

struct SoundnessRecord {
  std::string bound;
  Rational t;
  double total = 0.0;
  double exact = 0.0;
  bool sound = false;
  bool checks_pass = false;
};

struct SoundnessReport {
  long n = 0;
  CheckReport report;
  std::vector<SoundnessRecord> records;
  std::map<std::string, double> min_ratio;  // bound name -> min total / exact
  long lemma_cases = 0;
};

enum class Pipeline { kSmallT, kLargeT, kLogFactor };

const char* to_string(Pipeline p);

// The pipeline's bound at (n, t).
BoundBreakdown run_pipeline(Pipeline p, long n, const Rational& t);

struct RateFit {
  std::vector<long> ns;
  std::vector<double> values;
  std::vector<double> constants;  // values[j] / scale(ns[j])
  double spread = 0.0;            // max / min of constants over the upper half
  double fitted = 0.0;            // max constant over the upper half
};

// Upper half = the last ceil(size / 2) entries.
RateFit fit_rate(std::vector<long> ns, std::vector<double> values, double (*scale)(long));

double inverse_sqrt(long n);
double sqrt_log_over_n(long n);

// Identity checks of one even n: both moment lemmas, detailed balance for
// V1, V2 and the spherical chain at every k, and the kernel relation. With
// inject_fault the V1 kernel is perturbed so detailed balance fails.
CheckReport lemma_checks(long n, bool inject_fault = false);

// Kernel equality at k = n/2 (n <= 100), Hahn recurrence and orthogonality
// for every k (n <= 30), algebraic-vs-kernel moments (n <= 20, m <= 4).
CheckReport gelfand_checks(long n);

// Residual and derivative-bound audits of both Stein solutions on grids of
// grid_size points for t in {0.1, 0.5, 1, 2, 5}.
CheckReport stein_checks(int grid_size);

// soundness_scan: every bound of both theorems at every t must dominate the
// exact discrepancy, each tool must dominate the exact tail, and the key lemma
// must hold on a 5x5x5 (a, b, K) grid for both pairs. Throws on an empty
// grid.

namespace serial {

std::vector<KolmogorovReport> kolmogorov_sweep(const std::vector<long>& ns);
std::vector<SharpnessPoint> sharpness_sweep(const std::vector<long>& ns);
std::vector<ConcentrationReport> concentration_sweep(const std::vector<long>& ns);
std::vector<BinomialTailSweep> binomial_tail_sweep(const std::vector<long>& ns,
                                                   double guard = 1e-15);
std::vector<CheckReport> lemma_sweep(const std::vector<long>& ns, bool inject_fault = false);
std::vector<CheckReport> gelfand_sweep(const std::vector<long>& ns);
std::vector<double> pipeline_sweep(Pipeline p, const std::vector<long>& ns,
                                   const Rational& t);
SoundnessReport soundness_scan(long n, const std::vector<Rational>& t_grid);
SoundnessReport soundness_scan(const PairModel& v1, const PairModel& v2,
                               const std::vector<Rational>& t_grid);

}  // namespace serial

namespace parallel {

std::vector<KolmogorovReport> kolmogorov_sweep(const std::vector<long>& ns);
std::vector<SharpnessPoint> sharpness_sweep(const std::vector<long>& ns);
std::vector<ConcentrationReport> concentration_sweep(const std::vector<long>& ns);
std::vector<BinomialTailSweep> binomial_tail_sweep(const std::vector<long>& ns,
                                                   double guard = 1e-15);
std::vector<CheckReport> lemma_sweep(const std::vector<long>& ns, bool inject_fault = false);
std::vector<CheckReport> gelfand_sweep(const std::vector<long>& ns);
std::vector<double> pipeline_sweep(Pipeline p, const std::vector<long>& ns,
                                   const Rational& t);
SoundnessReport soundness_scan(long n, const std::vector<Rational>& t_grid);
SoundnessReport soundness_scan(const PairModel& v1, const PairModel& v2,
                               const std::vector<Rational>& t_grid);

}  // namespace parallel

}  // namespace steinexp

#endif  // STEINEXP_SWEEPS_HPP_
