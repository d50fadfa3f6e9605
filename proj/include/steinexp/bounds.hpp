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

// Berry-Esseen bounds for exponential approximation of W from a pair
// (W, W') with L(W') = L(W), and the tools that control their tail term
// E(D^2 1{|W - t| <= |D|}), D = W' - W.
//
// Every expectation is an exact rational sum over the pair's atoms. Floats
// enter only when a transcendental piece (sqrt, ln, fractional power,
// e^{-t}) is composed into a total.

#ifndef STEINEXP_BOUNDS_HPP_
#define STEINEXP_BOUNDS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinexp/kernels.hpp"
#include "steinexp/rational.hpp"

namespace steinexp {

// E(D|W) != -lambda (W - 1) at some state.
class DriftIdentityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Tool1Params {
  Rational c;
};

// K1 enters the e2 event only through K1^2, so it is carried squared.
struct Tool2Params {
  Rational k1, k2, K1_sq, K2, K3;

  // Throws std::invalid_argument unless all are positive, k2 < k1, K2 < K3.
  Tool2Params(Rational k1, Rational k2, Rational K1_sq, Rational K2, Rational K3);
  double K1() const;
};

struct Tool3Params {
  Rational kappa;
};

struct ToolParams {
  std::optional<Tool1Params> tool1;
  std::optional<Tool2Params> tool2;
  std::optional<Tool3Params> tool3;
};

enum class TailMode { kExact, kTool1, kTool2, kTool3 };

const char* to_string(TailMode m);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct BoundBreakdown {
  std::string theorem;
  TailMode mode = TailMode::kExact;
  long n = 0;
  Rational t;
  Rational lambda;
  ToolParams params;
  std::vector<NamedValue> terms;
  double total = 0.0;
  // What `total` bounds: the Kolmogorov discrepancy at t for theorem bounds,
  // the exact tail term for tool bounds.
  double exact_value = 0.0;
  std::string exact_kind;
  bool sound = false;
  std::vector<NamedValue> diagnostics;
  std::vector<NamedCheck> checks;
  std::vector<std::string> notes;

  bool all_checks_pass() const;
};

// 4 c E|E(D|W)| + E(D^2 1{|D| > c}); exact.
Rational tool1_value(const PairModel& p, const Rational& c);
double tool1_bound(const PairModel& p, const Rational& t, const Rational& c);

struct Tool1Minimum {
  Rational c;
  double value = 0.0;
};

// Smallest tool1 bound over a log-spaced grid of c in [c_lo, c_hi].
Tool1Minimum tool1_minimize(const PairModel& p, double c_lo, double c_hi, int points);

// e1(t) and e2 of Tool 2, by state enumeration.
Rational tool2_e1(const PairModel& p, const Rational& t, const Tool2Params& q);
Rational tool2_e2(const PairModel& p, const Tool2Params& q);
BoundBreakdown tool2_bound(const PairModel& p, const Rational& t, const Tool2Params& q);

// The constants k1 = 4/n^2, k2 = 48/n^3, K1 = sqrt(48/n), K2 = 1/n^2,
// K3 = 4/n^2 used with the constant-drift pair; valid for n > 12.
Tool2Params small_t_tool2_params(long n);

// eps1(t) and eps2(s) of Tool 3; the bound uses eps2 at s = t/3.
Rational tool3_eps1(const PairModel& p, const Rational& t, const Rational& kappa,
                    const Rational& lambda);
Rational tool3_eps2(const PairModel& p, const Rational& s, const Rational& kappa,
                    const Rational& lambda);
// Throws DriftIdentityError if the pair's drift is not -lambda(W - 1).
BoundBreakdown tool3_bound(const PairModel& p, const Rational& t, const Rational& kappa,
                           const Rational& lambda);

// Exact per-state check of E(D|W) = -lambda (W - 1).
bool drift_identity_holds(const PairModel& p, const Rational& lambda);

// Four-term bound for any pair; tail term exact or bounded by Tool 1 / Tool 2.
BoundBreakdown theorem1_bound(const PairModel& p, const Rational& t,
                              const Rational& lambda, TailMode mode,
                              const ToolParams& params = {});

// Three-term bound under the linear drift identity; tail exact or bounded by
// Tool 1 / Tool 3. Throws DriftIdentityError when the identity fails.
BoundBreakdown theorem2_bound(const PairModel& p, const Rational& t,
                              const Rational& lambda, TailMode mode,
                              const ToolParams& params = {});

struct KeyLemmaAudit {
  Rational lhs;  // E(D^2 1{a <= W <= b, |D| <= K})
  Rational rhs;  // (b - a + 2K) E|E(D|W)|
  bool holds = false;
};

// Throws std::invalid_argument unless a <= b and K > 0.
KeyLemmaAudit lemma_key_audit(const PairModel& p, const Rational& a, const Rational& b,
                              const Rational& K);

// Constant-drift pipeline: Theorem 1 with lambda = 2/n^2, the third term
// replaced by its Cauchy-Schwarz bound sqrt(8/(9n)), tail via Tool 2.
// Requires n > 12.
BoundBreakdown bl_small_t(long n, const Rational& t);
BoundBreakdown bl_small_t(const PairModel& v1, const Rational& t);

// Linear-drift pipeline: Theorem 2 with lambda = 4/n, tail via Tool 3 with
// kappa = 2, plus the analytic envelopes for eps1 and eps2.
BoundBreakdown bl_large_t(long n, const Rational& t);
BoundBreakdown bl_large_t(const PairModel& v2, const Rational& t);

// Theorem 1 + Tool 1 at the concentration radius; O(sqrt(log n / n)).
BoundBreakdown bl_log_factor(long n, const Rational& t);
BoundBreakdown bl_log_factor(const PairModel& v1, const Rational& t);

}  // namespace steinexp

#endif  // STEINEXP_BOUNDS_HPP_
