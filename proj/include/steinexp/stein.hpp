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

// Solutions of the two exponential Stein equations for h = 1{x <= t}:
//
//   V1:  f'(x) - f(x)           = 1{x <= t} - (1 - e^{-t}),  x >= 0
//        f(x) = e^{-(t-x)^+} - e^{-t}
//   V2:  x f'(x) - (x - 1) f(x) = 1{x <= t} - (1 - e^{-t}),  x > 0
//        f(x) = (e^{-(t-x)^+} - e^{-t}) / x
//
// f' at the kink x = t is the left derivative in both versions; f'' is not
// defined there.

#ifndef STEINEXP_STEIN_HPP_
#define STEINEXP_STEIN_HPP_

#include <string>
#include <vector>

#include "steinexp/check.hpp"

namespace steinexp {

enum class SteinVersion { kV1, kV2 };

const char* to_string(SteinVersion v);

struct SolutionEval {
  SteinVersion version = SteinVersion::kV1;
  double t = 0.0;
  double x = 0.0;
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  bool f2_defined = true;
  double residual = 0.0;
};

// Throws std::invalid_argument unless t > 0 and x >= 0.
SolutionEval eval_v1(double t, double x);
// Throws std::invalid_argument unless t > 0 and x > 0.
SolutionEval eval_v2(double t, double x);
SolutionEval eval(SteinVersion v, double t, double x);

// Below this x the V2 expressions on (0, t] are summed as power series.
inline constexpr double kV2SeriesCutoff = 1.0;

// e^{-t} sum_k x^k / (k! (k+2)), the V2 derivative on (0, t].
double v2_derivative_series(double t, double x);
// e^{-t} (x e^x - e^x + 1) / x^2, the same derivative in closed form.
double v2_derivative_closed(double t, double x);

struct BoundAudit {
  CheckReport report;
  double sup_f = 0.0;
  double inf_f = 0.0;
  double sup_f1 = 0.0;
  double f1_oscillation = 0.0;
  double sup_f2 = 0.0;
  double max_residual = 0.0;
  double f1_bound = 0.0;
  double f2_bound = 0.0;
};

// Uniform grid of grid_size points on (0, 3t] plus points straddling the kink.
std::vector<double> audit_grid(double t, int grid_size);

// V1: |f| <= 1, |f'| <= 1, osc f' <= 1, sup_{x != t} |f''| <= 1.
// V2: |f'| <= 1/t, |f''| <= max(1/t, 2/t^2), 0 <= f <= (1 - e^{-t})/t <= 1.
// Both: |residual| <= residual_tol.
BoundAudit bound_audit(SteinVersion v, double t, int grid_size,
                       double residual_tol = 1e-12);

}  // namespace steinexp

#endif  // STEINEXP_STEIN_HPP_
