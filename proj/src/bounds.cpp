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

#include "steinexp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "steinexp/spectral.hpp"

namespace steinexp {

namespace {

constexpr const char* kTool2Note =
    "tool2: last summand is 4 K1 (t k2 k1^3)^(1/4), which dominates the sharper "
    "(8/3) K1 (2 t k2)^(1/4) k1^(3/4)";
constexpr const char* kTheorem2Note =
    "theorem2: third-moment coefficient is 1/(6 lambda); a 1/(4 lambda) variant "
    "is not used";

double d(const Rational& q) { return to_double(q); }

void require_positive(const Rational& x, const char* what) {
  if (x <= 0) throw std::invalid_argument(std::string(what) + " must be positive");
}

double sum_terms(const std::vector<NamedValue>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.value;
  return s;
}

void finish(BoundBreakdown& b) {
  b.total = sum_terms(b.terms);
  b.sound = b.total >= b.exact_value;
}

}  // namespace

Tool2Params::Tool2Params(Rational k1_, Rational k2_, Rational K1_sq_, Rational K2_,
                         Rational K3_)
    : k1(std::move(k1_)), k2(std::move(k2_)), K1_sq(std::move(K1_sq_)),
      K2(std::move(K2_)), K3(std::move(K3_)) {
  require_positive(k1, "k1");
  require_positive(k2, "k2");
  require_positive(K1_sq, "K1");
  require_positive(K2, "K2");
  require_positive(K3, "K3");
  if (!(k2 < k1)) throw std::invalid_argument("tool2 needs k2 < k1");
  if (!(K2 < K3)) throw std::invalid_argument("tool2 needs K2 < K3");
}

double Tool2Params::K1() const { return std::sqrt(d(K1_sq)); }

const char* to_string(TailMode m) {
  switch (m) {
    case TailMode::kExact: return "exact";
    case TailMode::kTool1: return "tool1";
    case TailMode::kTool2: return "tool2";
    case TailMode::kTool3: return "tool3";
  }
  return "?";
}

bool BoundBreakdown::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const NamedCheck& c) { return c.ok; });
}

Rational tool1_value(const PairModel& p, const Rational& c) {
  require_positive(c, "tool1 c");
  return 4 * c * p.moments.abs_drift + truncated_d2(p.pair, c);
}

double tool1_bound(const PairModel& p, const Rational& /*t*/, const Rational& c) {
  return d(tool1_value(p, c));
}

Tool1Minimum tool1_minimize(const PairModel& p, double c_lo, double c_hi, int points) {
  if (!(c_lo > 0) || !(c_hi >= c_lo) || points < 1)
    throw std::invalid_argument("tool1_minimize: bad grid");
  Tool1Minimum best{Rational(0), INFINITY};
  const double ratio = points == 1 ? 1.0 : std::pow(c_hi / c_lo, 1.0 / (points - 1));
  double c = c_lo;
  for (int j = 0; j < points; ++j, c *= ratio) {
    Rational cq = exact(c);
    double v = d(tool1_value(p, cq));
    if (v < best.value) best = {cq, v};
  }
  return best;
}

Rational tool2_e1(const PairModel& p, const Rational& t, const Tool2Params& q) {
  const auto& m = p.measure();
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& m2 = p.moments.at(i, 2);
    const Rational& m4 = p.moments.at(i, 4);
    if (m2 > q.k1 || m4 > q.k2 * (m.w(i) + t)) s += m.pi(i) * m2;
  }
  return s;
}

Rational tool2_e2(const PairModel& p, const Tool2Params& q) {
  const auto& m = p.measure();
  const Rational slope = q.K1_sq * q.K2;
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (p.moments.at(i, 2) < q.K3 || p.moments.at(i, 4) > slope * m.w(i)) s += m.pi(i);
  }
  return s;
}

BoundBreakdown tool2_bound(const PairModel& p, const Rational& t, const Tool2Params& q) {
  require_positive(t, "t");
  BoundBreakdown b;
  b.theorem = "tool2";
  b.mode = TailMode::kTool2;
  b.n = p.n();
  b.t = t;
  b.params.tool2 = q;

  const Rational e1 = tool2_e1(p, t, q);
  const Rational e2 = tool2_e2(p, q);
  const double k1 = d(q.k1), k2 = d(q.k2), K1 = q.K1(), td = d(t);
  const double factor = d(p.moments.abs_drift / (q.K3 - q.K2));

  b.terms = {
      {"k2", k2},
      {"k1*e2", d(q.k1 * e2)},
      {"e1", d(e1)},
      {"log", factor * k2 * std::log(d(q.k1 / q.k2))},
      {"sqrt", factor * std::sqrt(32.0 * td * k2 * k1)},
      {"K1*sqrt(t)", factor * 2.0 * K1 * std::sqrt(td) * k1},
      {"K1*sqrt(k1k2)", factor * 4.0 * K1 * std::sqrt(k1 * k2)},
      {"K1*quartic", factor * 4.0 * K1 * std::pow(td * k2 * k1 * k1 * k1, 0.25)},
  };
  b.diagnostics = {{"e1", d(e1)}, {"e2", d(e2)}, {"E|E(D|W)|", d(p.moments.abs_drift)}};
  b.exact_value = d(tail_term(p.pair, t));
  b.exact_kind = "tail";
  b.notes.emplace_back(kTool2Note);
  finish(b);
  return b;
}

Tool2Params small_t_tool2_params(long n) {
  if (n <= 12) throw std::invalid_argument("small-t Tool 2 constants need n > 12");
  const Rational nn(n);
  return Tool2Params(4 / (nn * nn), 48 / (nn * nn * nn), 48 / nn, 1 / (nn * nn),
                     4 / (nn * nn));
}

Rational tool3_eps1(const PairModel& p, const Rational& t, const Rational& kappa,
                    const Rational& lambda) {
  const auto& m = p.measure();
  const Rational k2 = kappa * kappa;
  const Rational l2 = 4 * lambda * lambda;
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& w = m.w(i);
    const Rational& m2 = p.moments.at(i, 2);
    if (m2 > 2 * lambda * (w + t) || p.moments.at(i, 4) > l2 * (k2 * w * w + k2 * t * t))
      s += m.pi(i) * m2;
  }
  return s;
}

Rational tool3_eps2(const PairModel& p, const Rational& s, const Rational& kappa,
                    const Rational& lambda) {
  const auto& m = p.measure();
  const Rational k2 = kappa * kappa;
  const Rational l2 = 4 * lambda * lambda;
  Rational prob(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& w = m.w(i);
    if (p.moments.at(i, 2) < 2 * lambda * (w - s / 4) ||
        p.moments.at(i, 4) > l2 * (k2 * w * w + k2 * s * s))
      prob += m.pi(i);
  }
  return prob;
}

bool drift_identity_holds(const PairModel& p, const Rational& lambda) {
  const auto& m = p.measure();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (p.moments.at(i, 1) != -lambda * (m.w(i) - 1)) return false;
  return true;
}

namespace {

void require_drift(const PairModel& p, const Rational& lambda, const char* who) {
  if (!drift_identity_holds(p, lambda))
    throw DriftIdentityError(std::string(who) + ": E(D|W) != -lambda (W - 1) for lambda = " +
                             to_string(lambda) + " (" + to_string(p.pair.kernel().variant) +
                             " pair, n = " + std::to_string(p.n()) + ")");
}

}  // namespace

BoundBreakdown tool3_bound(const PairModel& p, const Rational& t, const Rational& kappa,
                           const Rational& lambda) {
  require_positive(t, "t");
  require_positive(kappa, "kappa");
  require_positive(lambda, "lambda");
  require_drift(p, lambda, "tool3");
  BoundBreakdown b;
  b.theorem = "tool3";
  b.mode = TailMode::kTool3;
  b.n = p.n();
  b.t = t;
  b.lambda = lambda;
  b.params.tool3 = Tool3Params{kappa};

  const Rational eps1 = tool3_eps1(p, t, kappa, lambda);
  const Rational eps2 = tool3_eps2(p, t / 3, kappa, lambda);
  const double l = d(lambda), k = d(kappa), td = d(t);
  b.terms = {
      {"kappa", d(16 * lambda * lambda * kappa * kappa)},
      {"mean_abs", 1040.0 * l * std::sqrt(l) * d(p.moments.abs_w_minus_1) * k * std::sqrt(td)},
      {"eps2", d(8 * lambda * eps2 * t)},
      {"eps1", d(eps1)},
  };
  b.diagnostics = {{"eps1(t)", d(eps1)}, {"eps2(t/3)", d(eps2)},
                   {"E|W-1|", d(p.moments.abs_w_minus_1)}};
  b.exact_value = d(tail_term(p.pair, t));
  b.exact_kind = "tail";
  finish(b);
  return b;
}

namespace {

// Upper bound on the tail term for a tool mode, plus a dominance check.
double tool_tail(const PairModel& p, const Rational& t, const Rational& lambda,
                 TailMode mode, const ToolParams& params, BoundBreakdown& out) {
  const double exact_tail = d(tail_term(p.pair, t));
  double value = 0.0;
  switch (mode) {
    case TailMode::kExact: return exact_tail;
    case TailMode::kTool1: {
      if (!params.tool1) throw std::invalid_argument("tool1 mode needs tool1 parameters");
      value = d(tool1_value(p, params.tool1->c));
      out.diagnostics.push_back({"tool1", value});
      break;
    }
    case TailMode::kTool2: {
      if (!params.tool2) throw std::invalid_argument("tool2 mode needs tool2 parameters");
      BoundBreakdown t2 = tool2_bound(p, t, *params.tool2);
      value = t2.total;
      for (const auto& dv : t2.diagnostics) out.diagnostics.push_back(dv);
      out.diagnostics.push_back({"tool2", value});
      out.notes.insert(out.notes.end(), t2.notes.begin(), t2.notes.end());
      break;
    }
    case TailMode::kTool3: {
      if (!params.tool3) throw std::invalid_argument("tool3 mode needs tool3 parameters");
      BoundBreakdown t3 = tool3_bound(p, t, params.tool3->kappa, lambda);
      value = t3.total;
      for (const auto& dv : t3.diagnostics) out.diagnostics.push_back(dv);
      out.diagnostics.push_back({"tool3", value});
      break;
    }
  }
  out.diagnostics.push_back({"tail_exact", exact_tail});
  out.checks.push_back({std::string(to_string(mode)) + " >= exact tail", value >= exact_tail});
  return value;
}

}  // namespace

BoundBreakdown theorem1_bound(const PairModel& p, const Rational& t, const Rational& lambda,
                              TailMode mode, const ToolParams& params) {
  require_positive(t, "t");
  require_positive(lambda, "lambda");
  if (mode == TailMode::kTool3)
    throw std::invalid_argument("theorem1 tail accepts exact, tool1 or tool2");
  const auto& m = p.measure();
  const auto& mo = p.moments;
  BoundBreakdown b;
  b.theorem = "theorem1";
  b.mode = mode;
  b.n = p.n();
  b.t = t;
  b.lambda = lambda;
  b.params = params;

  Rational drift(0), second(0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.w(i) > 0) drift += m.pi(i) * abs(mo.at(i, 1) / lambda + 1);
    second += m.pi(i) * abs(mo.at(i, 2) / (2 * lambda) - 1);
  }
  const double third = d(mo.abs3 / (6 * lambda));
  const double tail = tool_tail(p, t, lambda, mode, params, b);
  b.terms = {{"drift", d(drift)},
             {"second_moment", d(second)},
             {"third_moment", third},
             {"tail", tail / d(2 * lambda)}};
  b.exact_value = discrepancy(m, t);
  b.exact_kind = "discrepancy";
  finish(b);
  return b;
}

BoundBreakdown theorem2_bound(const PairModel& p, const Rational& t, const Rational& lambda,
                              TailMode mode, const ToolParams& params) {
  require_positive(t, "t");
  require_positive(lambda, "lambda");
  if (mode == TailMode::kTool2)
    throw std::invalid_argument("theorem2 tail accepts exact, tool1 or tool3");
  require_drift(p, lambda, "theorem2");
  const auto& m = p.measure();
  const auto& mo = p.moments;
  BoundBreakdown b;
  b.theorem = "theorem2";
  b.mode = mode;
  b.n = p.n();
  b.t = t;
  b.lambda = lambda;
  b.params = params;

  Rational variance(0);
  for (std::size_t i = 0; i < m.size(); ++i)
    variance += m.pi(i) * abs(2 * lambda * m.w(i) - mo.at(i, 2));
  variance /= 2 * lambda * t;
  const Rational inv_t = 1 / t;
  const Rational cap = std::max(inv_t, Rational(2 * inv_t * inv_t));
  const Rational third = mo.abs3 * cap / (6 * lambda);
  const double tail = tool_tail(p, t, lambda, mode, params, b);
  b.terms = {{"variance", d(variance)},
             {"third_moment", d(third)},
             {"tail", tail / d(lambda * t)}};
  b.exact_value = discrepancy(m, t);
  b.exact_kind = "discrepancy";
  b.notes.emplace_back(kTheorem2Note);
  finish(b);
  return b;
}

KeyLemmaAudit lemma_key_audit(const PairModel& p, const Rational& a, const Rational& b,
                              const Rational& K) {
  if (a > b) throw std::invalid_argument("lemma_key_audit: need a <= b");
  require_positive(K, "K");
  KeyLemmaAudit out;
  const auto& m = p.measure();
  for (const auto& atom : p.pair.atoms()) {
    const Rational& w = m.w(atom.from);
    if (w >= a && w <= b && abs(atom.d) <= K) out.lhs += atom.probability * atom.d * atom.d;
  }
  out.rhs = (b - a + 2 * K) * p.moments.abs_drift;
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundBreakdown bl_small_t(const PairModel& v1, const Rational& t) {
  const long n = v1.n();
  if (n <= 12) throw std::invalid_argument("bl_small_t needs n > 12");
  if (v1.pair.kernel().variant != Variant::kV1)
    throw std::invalid_argument("bl_small_t needs the constant-drift pair");
  const Rational nn(n);
  const Rational lambda = 2 / (nn * nn);
  ToolParams params;
  params.tool2 = small_t_tool2_params(n);
  BoundBreakdown b = theorem1_bound(v1, t, lambda, TailMode::kTool2, params);
  b.theorem = "bl_small_t";

  const double cs = std::sqrt(8.0 / (9.0 * static_cast<double>(n)));
  const double exact_third = b.terms[2].value;
  b.terms[2].value = cs;
  b.diagnostics.push_back({"third_moment_exact", exact_third});
  b.checks.push_back({"drift term == 0", b.terms[0].value == 0.0});
  b.checks.push_back({"second-moment term == 0", b.terms[1].value == 0.0});
  b.checks.push_back({"E|E(D|W)| == 4/(n(n+2))",
                      v1.moments.abs_drift == make_rational(4, n * (n + 2))});
  b.checks.push_back({"exact third term <= sqrt(8/(9n))", exact_third <= cs});
  const Rational e1 = tool2_e1(v1, t, *params.tool2);
  const Rational e2 = tool2_e2(v1, *params.tool2);
  b.checks.push_back({"e2 == 2/(n+2)", e2 == make_rational(2, n + 2)});
  b.checks.push_back({"e1 <= 8/(n^2(n+2))", e1 <= make_rational(8, n * n * (n + 2))});
  finish(b);
  return b;
}

BoundBreakdown bl_small_t(long n, const Rational& t) {
  if (n <= 12) throw std::invalid_argument("bl_small_t needs n > 12");
  return bl_small_t(make_pair_model(n, Variant::kV1), t);
}

BoundBreakdown bl_large_t(const PairModel& v2, const Rational& t) {
  const long n = v2.n();
  if (n < 4) throw std::invalid_argument("bl_large_t needs n >= 4");
  const Rational nn(n);
  const Rational lambda = 4 / nn;
  const Rational kappa(2);
  ToolParams params;
  params.tool3 = Tool3Params{kappa};
  BoundBreakdown b = theorem2_bound(v2, t, lambda, TailMode::kTool3, params);
  b.theorem = "bl_large_t";

  const Rational n2 = nn * nn, n3 = n2 * nn;
  auto eps1_env = [&](const Rational& s) -> Rational { return (32 / n3) * (1 + 1 / (s * s)); };
  auto eps2_env = [&](const Rational& s) -> Rational { return 2 / nn + 64 / (s * s * n2); };
  const Rational eps1 = tool3_eps1(v2, t, kappa, lambda);
  const Rational eps2_t = tool3_eps2(v2, t, kappa, lambda);
  const Rational eps2_t3 = tool3_eps2(v2, t / 3, kappa, lambda);
  b.diagnostics.push_back({"eps1_envelope", d(eps1_env(t))});
  b.diagnostics.push_back({"eps2(t)", d(eps2_t)});
  b.diagnostics.push_back({"eps2_envelope", d(eps2_env(t))});
  b.checks.push_back({"eps1(t) <= (32/n^3)(1 + 1/t^2)", eps1 <= eps1_env(t)});
  b.checks.push_back({"eps2(t) <= 2/n + 64/(t^2 n^2)", eps2_t <= eps2_env(t)});
  b.checks.push_back({"eps2(t/3) <= 2/n + 64/((t/3)^2 n^2)", eps2_t3 <= eps2_env(t / 3)});
  const Rational first_env = 2 / (t * nn);
  b.checks.push_back({"variance term == 2 E|W-1|/(tn)",
                      exact(b.terms[0].value) == exact(d(first_env * v2.moments.abs_w_minus_1))});
  b.checks.push_back({"variance term <= 2/(tn)", b.terms[0].value <= d(first_env)});
  const double td = d(t);
  const double third_env =
      2.0 * std::max(1.0 / td, 2.0 / (td * td)) / std::sqrt(static_cast<double>(n));
  b.checks.push_back({"third term <= 2 max(1/t, 2/t^2)/sqrt(n)", b.terms[1].value <= third_env});
  finish(b);
  return b;
}

BoundBreakdown bl_large_t(long n, const Rational& t) {
  if (n < 4) throw std::invalid_argument("bl_large_t needs n >= 4");
  return bl_large_t(make_pair_model(n, Variant::kV2), t);
}

BoundBreakdown bl_log_factor(const PairModel& v1, const Rational& t) {
  const long n = v1.n();
  if (v1.pair.kernel().variant != Variant::kV1)
    throw std::invalid_argument("bl_log_factor needs the constant-drift pair");
  const Rational nn(n);
  const Rational lambda = 2 / (nn * nn);
  const Rational c = concentration_radius(n);
  ToolParams params;
  params.tool1 = Tool1Params{c};
  BoundBreakdown b = theorem1_bound(v1, t, lambda, TailMode::kTool1, params);
  b.theorem = "bl_log_factor";
  const double cs = std::sqrt(8.0 / (9.0 * static_cast<double>(n)));
  const double exact_third = b.terms[2].value;
  b.terms[2].value = cs;
  b.diagnostics.push_back({"c", d(c)});
  b.diagnostics.push_back({"third_moment_exact", exact_third});
  const Rational trunc = truncated_d2(v1.pair, c);
  b.checks.push_back({"exact third term <= sqrt(8/(9n))", exact_third <= cs});
  b.checks.push_back({"E(D^2 1{|D|>c}) <= 16 n^{-5/2}",
                      trunc <= exact(16.0 * std::pow(static_cast<double>(n), -2.5))});
  finish(b);
  return b;
}

BoundBreakdown bl_log_factor(long n, const Rational& t) {
  return bl_log_factor(make_pair_model(n, Variant::kV1), t);
}

}  // namespace steinexp
