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

#include "steinexp/stein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steinexp {

const char* to_string(SteinVersion v) { return v == SteinVersion::kV1 ? "v1" : "v2"; }

namespace {

double rhs(double t, double x) {
  return (x <= t ? 1.0 : 0.0) + std::expm1(-t);  // 1{x<=t} - (1 - e^{-t})
}

// sum_{k>=0} x^k / (k! (k + shift)) for 0 <= x <= 1; terms drop below 1e-17
// well before k = 30.
double shifted_exp_series(double x, int shift) {
  double term = 1.0;  // x^k / k!
  double sum = 1.0 / shift;
  for (int k = 1; k < 40; ++k) {
    term *= x / k;
    double add = term / (k + shift);
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

SolutionEval eval_v1(double t, double x) {
  if (!(t > 0)) throw std::invalid_argument("eval_v1: t must be positive");
  if (!(x >= 0)) throw std::invalid_argument("eval_v1: x must be non-negative");
  SolutionEval e{SteinVersion::kV1, t, x};
  if (x <= t) {
    e.f = std::exp(x - t) - std::exp(-t);
    e.f1 = std::exp(x - t);
    e.f2 = e.f1;
    e.f2_defined = x < t;
  } else {
    e.f = -std::expm1(-t);
    e.f1 = 0.0;
    e.f2 = 0.0;
  }
  if (!e.f2_defined) e.f2 = 0.0;
  e.residual = e.f1 - e.f - rhs(t, x);
  return e;
}

double v2_derivative_series(double t, double x) {
  return std::exp(-t) * shifted_exp_series(x, 2);
}

double v2_derivative_closed(double t, double x) {
  const double em1 = std::expm1(x);
  return std::exp(-t) * (x * em1 + x - em1) / (x * x);
}

SolutionEval eval_v2(double t, double x) {
  if (!(t > 0)) throw std::invalid_argument("eval_v2: t must be positive");
  if (!(x > 0)) throw std::invalid_argument("eval_v2: x must be positive");
  SolutionEval e{SteinVersion::kV2, t, x};
  const double et = std::exp(-t);
  if (x <= t) {
    if (x < kV2SeriesCutoff) {
      e.f = et * shifted_exp_series(x, 1);
      e.f1 = et * shifted_exp_series(x, 2);
      e.f2 = et * shifted_exp_series(x, 3);
    } else {
      const double ex = std::exp(x);
      e.f = et * std::expm1(x) / x;
      e.f1 = et * (x * ex - ex + 1.0) / (x * x);
      e.f2 = et * (x * x * ex - 2.0 * x * ex + 2.0 * ex - 2.0) / (x * x * x);
    }
    e.f2_defined = x < t;
  } else {
    const double c = -std::expm1(-t);  // 1 - e^{-t}
    e.f = c / x;
    e.f1 = -c / (x * x);
    e.f2 = 2.0 * c / (x * x * x);
  }
  if (!e.f2_defined) e.f2 = 0.0;
  e.residual = x * e.f1 - (x - 1.0) * e.f - rhs(t, x);
  return e;
}

SolutionEval eval(SteinVersion v, double t, double x) {
  return v == SteinVersion::kV1 ? eval_v1(t, x) : eval_v2(t, x);
}

std::vector<double> audit_grid(double t, int grid_size) {
  if (!(t > 0) || grid_size < 2)
    throw std::invalid_argument("audit_grid: need t > 0 and at least two points");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid_size) + 8);
  const double hi = 3.0 * t;
  for (int j = 1; j <= grid_size; ++j) xs.push_back(hi * j / grid_size);
  for (double h : {1e-9, 1e-6, 1e-3}) {
    xs.push_back(t - h * t);
    xs.push_back(t + h * t);
  }
  xs.push_back(t);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

BoundAudit bound_audit(SteinVersion v, double t, int grid_size, double residual_tol) {
  BoundAudit a;
  a.report.name = std::string("bound audit ") + to_string(v) + " t=" + std::to_string(t);
  const std::vector<double> xs = audit_grid(t, grid_size);
  double f1_min = INFINITY, f1_max = -INFINITY;
  a.inf_f = INFINITY;
  a.sup_f = -INFINITY;
  for (double x : xs) {
    SolutionEval e = eval(v, t, x);
    a.sup_f = std::max(a.sup_f, e.f);
    a.inf_f = std::min(a.inf_f, e.f);
    a.sup_f1 = std::max(a.sup_f1, std::fabs(e.f1));
    f1_min = std::min(f1_min, e.f1);
    f1_max = std::max(f1_max, e.f1);
    if (e.f2_defined) a.sup_f2 = std::max(a.sup_f2, std::fabs(e.f2));
    a.max_residual = std::max(a.max_residual, std::fabs(e.residual));
  }
  a.f1_oscillation = f1_max - f1_min;

  auto& r = a.report;
  r.require(a.max_residual <= residual_tol,
            "ODE residual " + std::to_string(a.max_residual));
  if (v == SteinVersion::kV1) {
    a.f1_bound = 1.0;
    a.f2_bound = 1.0;
    r.require(std::max(std::fabs(a.sup_f), std::fabs(a.inf_f)) <= 1.0, "|f| > 1");
    r.require(a.sup_f1 <= 1.0, "|f'| > 1");
    r.require(f1_min >= 0.0, "f' negative");
    r.require(a.f1_oscillation <= 1.0, "oscillation of f' > 1");
    r.require(a.sup_f2 <= 1.0, "|f''| > 1");
  } else {
    a.f1_bound = 1.0 / t;
    a.f2_bound = std::max(1.0 / t, 2.0 / (t * t));
    const double f_cap = -std::expm1(-t) / t;
    r.require(a.sup_f1 <= a.f1_bound, "|f'| > 1/t");
    r.require(a.sup_f2 <= a.f2_bound, "|f''| > max(1/t, 2/t^2)");
    r.require(a.inf_f >= 0.0, "f negative");
    r.require(a.sup_f <= f_cap * (1.0 + 1e-15), "f > (1 - e^{-t})/t");
    r.require(f_cap <= 1.0, "(1 - e^{-t})/t > 1");
  }
  return a;
}

}  // namespace steinexp
