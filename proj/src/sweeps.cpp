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

#include "steinexp/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <utility>

#include "steinexp/gelfand.hpp"
#include "steinexp/stein.hpp"

namespace steinexp {

namespace {

// out[i] = f(i) for i < count, serially or under OpenMP. The first exception
// thrown by any item is rethrown after the loop.
template <class R, class F>
std::vector<R> index_map(std::size_t count, F&& f, bool par) {
  std::vector<R> out(count);
  if (!par) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  const long total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string t_label(const Rational& t) { return "t=" + to_string(t); }

}  // namespace

std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo > 0) || lo > hi) throw std::invalid_argument("grid needs 0 < lo <= hi");
  if (count == 1) return {hi};
  std::vector<Rational> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) g.emplace_back(lo + (hi - lo) * j / (count - 1));
  return g;
}

std::vector<Rational> parse_grid(const std::string& spec) {
  const auto p1 = spec.find(':');
  const auto p2 = p1 == std::string::npos ? p1 : spec.find(':', p1 + 1);
  if (p2 == std::string::npos)
    throw std::invalid_argument("grid spec must be a:b:count, got '" + spec + "'");
  const Rational lo = parse_rational(spec.substr(0, p1));
  const Rational hi = parse_rational(spec.substr(p1 + 1, p2 - p1 - 1));
  const Rational count = parse_rational(spec.substr(p2 + 1));
  if (count.get_den() != 1 || count < 1 || count > 100000)
    throw std::invalid_argument("grid count must be an integer in [1, 100000]");
  return linear_grid(lo, hi, static_cast<int>(count.get_num().get_si()));
}

std::vector<long> even_range(long lo, long hi) {
  std::vector<long> out;
  for (long n = std::max(2L, lo + (lo % 2 != 0)); n <= hi; n += 2) out.push_back(n);
  return out;
}

const char* to_string(Pipeline p) {
  switch (p) {
    case Pipeline::kSmallT: return "bl_small_t";
    case Pipeline::kLargeT: return "bl_large_t";
    case Pipeline::kLogFactor: return "bl_log_factor";
  }
  return "?";
}

BoundBreakdown run_pipeline(Pipeline p, long n, const Rational& t) {
  switch (p) {
    case Pipeline::kSmallT: return bl_small_t(n, t);
    case Pipeline::kLargeT: return bl_large_t(n, t);
    case Pipeline::kLogFactor: return bl_log_factor(n, t);
  }
  throw std::invalid_argument("unknown pipeline");
}

double inverse_sqrt(long n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

double sqrt_log_over_n(long n) {
  const double x = static_cast<double>(n);
  return std::sqrt(std::log(x) / x);
}

RateFit fit_rate(std::vector<long> ns, std::vector<double> values, double (*scale)(long)) {
  if (ns.size() != values.size() || ns.empty())
    throw std::invalid_argument("fit_rate needs matching, nonempty inputs");
  RateFit f;
  f.ns = std::move(ns);
  f.values = std::move(values);
  for (std::size_t j = 0; j < f.ns.size(); ++j) f.constants.push_back(f.values[j] / scale(f.ns[j]));
  const std::size_t start = f.ns.size() / 2;
  const auto [lo, hi] = std::minmax_element(f.constants.begin() + start, f.constants.end());
  f.spread = *hi / *lo;
  f.fitted = *hi;
  return f;
}

CheckReport lemma_checks(long n, bool inject_fault) {
  CheckReport r;
  r.name = "lemmas n=" + std::to_string(n);
  const auto merge = [&r](CheckReport sub, const std::string& label) {
    sub.name = label;
    r.merge(sub);
  };
  const SpectralMeasure m(n);
  BirthDeathKernel k1 = kernel_v1(n);
  if (inject_fault) {
    const Rational eps = make_rational(1, n * n * n);
    k1.up[0] += eps;
    k1.stay[0] -= eps;
  }
  const PairModel v1{PairDistribution(m, k1)};
  const PairModel v2{PairDistribution(m, kernel_v2(n))};
  merge(verify_momcom(v1), "momcom");
  merge(verify_momcom2(v2), "momcom2");
  merge(marginal_check(v1.pair), "v1 marginals");
  merge(marginal_check(v2.pair), "v2 marginals");
  merge(detailed_balance_check(m, k1), "v1 balance");
  merge(detailed_balance_check(m, v2.pair.kernel()), "v2 balance");
  for (long k = 1; k <= n / 2; ++k) {
    const BirthDeathKernel l = gelfand_kernel(n, k);
    const std::string tag = "gelfand k=" + std::to_string(k);
    merge(stochasticity_check(l), tag + " rows");
    merge(detailed_balance_check(spherical_measure(n, k), l), tag + " balance");
  }
  merge(kernel_relation_check(n), "kernel relation");
  return r;
}

CheckReport gelfand_checks(long n) {
  CheckReport r;
  r.name = "gelfand n=" + std::to_string(n);
  if (n <= 100) {
    const BirthDeathKernel l = gelfand_kernel(n, n / 2);
    const BirthDeathKernel v2 = kernel_v2(n);
    r.require(l.up == v2.up && l.down == v2.down && l.stay == v2.stay,
              "L(n, n/2) != V2 kernel");
  }
  if (n <= 30) {
    for (long k = 0; k <= n / 2; ++k) {
      const SphericalTable t = spherical_table(n, k);
      const std::string tag = " k=" + std::to_string(k);
      CheckReport s = spherical_table_check(t);
      s.name = "table" + tag;
      r.merge(s);
      CheckReport h = hahn_recurrence_check(t);
      h.name = "hahn" + tag;
      r.merge(h);
      CheckReport o = orthogonality_check(t);
      o.name = "orthogonality" + tag;
      r.merge(o);
    }
  }
  if (n <= 20) {
    CheckReport a = moment_agreement_check(n, n / 2, 4);
    a.name = "moments";
    r.merge(a);
  }
  return r;
}

namespace {

// Second-order one-sided difference on the side of x that contains the
// derivative's definition: left for x <= t, right for x > t.
double one_sided_difference(SteinVersion v, double t, double x, double h) {
  auto f = [&](double y) { return eval(v, t, y).f; };
  if (x <= t) return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
}

}  // namespace

CheckReport stein_checks(int grid_size) {
  CheckReport r;
  r.name = "stein";
  for (SteinVersion v : {SteinVersion::kV1, SteinVersion::kV2}) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      BoundAudit a = bound_audit(v, t, grid_size);
      r.merge(a.report);
      const double h = 1e-5 * t;
      double worst = 0.0;
      for (double x : audit_grid(t, grid_size)) {
        if (x <= 2.0 * h) continue;
        worst = std::max(worst, std::fabs(one_sided_difference(v, t, x, h) - eval(v, t, x).f1));
      }
      r.require(worst <= 1e-6, std::string(to_string(v)) + " t=" + std::to_string(t) +
                                   ": finite-difference gap " + std::to_string(worst));
    }
  }
  return r;
}

namespace {

struct PointResult {
  std::vector<SoundnessRecord> records;
  CheckReport report;
};

void add_record(PointResult& out, const std::string& name, const Rational& t,
                const BoundBreakdown& b) {
  SoundnessRecord rec{name, t, b.total, b.exact_value, b.sound, b.all_checks_pass()};
  out.report.require(rec.sound, name + " " + t_label(t) + ": total " + std::to_string(b.total) +
                                    " < discrepancy " + std::to_string(b.exact_value));
  for (const auto& c : b.checks)
    out.report.require(c.ok, name + " " + t_label(t) + ": " + c.name);
  out.records.push_back(std::move(rec));
}

PointResult scan_point(const PairModel& v1, const PairModel& v2, const Rational& t) {
  PointResult out;
  const long n = v1.n();
  const Rational nn(n);
  const Rational lambda1 = 2 / (nn * nn);
  const Rational lambda2 = 4 / nn;
  const Rational c = concentration_radius(n);
  ToolParams tool1;
  tool1.tool1 = Tool1Params{c};
  ToolParams tool3;
  tool3.tool3 = Tool3Params{Rational(2)};

  add_record(out, "thm1_exact", t, theorem1_bound(v1, t, lambda1, TailMode::kExact));
  add_record(out, "thm1_tool1", t, theorem1_bound(v1, t, lambda1, TailMode::kTool1, tool1));
  add_record(out, "thm2_exact", t, theorem2_bound(v2, t, lambda2, TailMode::kExact));
  add_record(out, "thm2_tool1", t, theorem2_bound(v2, t, lambda2, TailMode::kTool1, tool1));
  add_record(out, "thm2_tool3", t, theorem2_bound(v2, t, lambda2, TailMode::kTool3, tool3));
  if (n > 12) {
    ToolParams tool2;
    tool2.tool2 = small_t_tool2_params(n);
    add_record(out, "thm1_tool2", t, theorem1_bound(v1, t, lambda1, TailMode::kTool2, tool2));
    add_record(out, "bl_small_t", t, bl_small_t(v1, t));
  }
  add_record(out, "bl_large_t", t, bl_large_t(v2, t));
  add_record(out, "bl_log_factor", t, bl_log_factor(v1, t));

  // Tool 1 away from the concentration radius, on both pairs.
  const Rational tail1 = tail_term(v1.pair, t);
  const Rational tail2 = tail_term(v2.pair, t);
  for (int j = -2; j <= 2; ++j) {
    const Rational cj = j >= 0 ? Rational(c * (1 << j)) : Rational(c / (1 << -j));
    out.report.require(tool1_value(v1, cj) >= tail1,
                       "tool1 v1 " + t_label(t) + " c=" + to_string(cj) + " below tail");
    out.report.require(tool1_value(v2, cj) >= tail2,
                       "tool1 v2 " + t_label(t) + " c=" + to_string(cj) + " below tail");
  }
  return out;
}

CheckReport key_lemma_grid(const PairModel& p, const std::string& label, long& cases) {
  CheckReport r;
  r.name = "lemma 2.7 " + label;
  const auto& m = p.measure();
  const Rational w_max = m.w(0);
  Rational d_max(0);
  for (const auto& atom : p.pair.atoms()) d_max = std::max(d_max, abs(atom.d));
  if (d_max == 0) d_max = 1;
  for (int ia = 0; ia < 5; ++ia) {
    const Rational a = w_max * ia / 4;
    for (int ib = 0; ib < 5; ++ib) {
      const Rational b = a + w_max * ib / 4;
      for (int ik = 1; ik <= 5; ++ik) {
        const Rational K = d_max * ik / 4;
        const KeyLemmaAudit au = lemma_key_audit(p, a, b, K);
        ++cases;
        r.require(au.holds, "a=" + to_string(a) + " b=" + to_string(b) + " K=" + to_string(K));
      }
    }
  }
  return r;
}

SoundnessReport scan(const PairModel& v1, const PairModel& v2,
                     const std::vector<Rational>& grid, bool par) {
  if (grid.empty()) throw std::invalid_argument("soundness_scan needs a nonempty t grid");
  for (const auto& t : grid)
    if (!(t > 0)) throw std::invalid_argument("soundness_scan needs t > 0");
  SoundnessReport out;
  out.n = v1.n();
  out.report.name = "soundness n=" + std::to_string(out.n);
  auto points = index_map<PointResult>(
      grid.size(), [&](std::size_t j) { return scan_point(v1, v2, grid[j]); }, par);
  for (auto& pr : points) {
    out.report.merge(pr.report);
    for (auto& rec : pr.records) {
      if (rec.exact > 0) {
        const double ratio = rec.total / rec.exact;
        auto it = out.min_ratio.find(rec.bound);
        if (it == out.min_ratio.end() || ratio < it->second) out.min_ratio[rec.bound] = ratio;
      }
      out.records.push_back(std::move(rec));
    }
  }
  out.report.merge(key_lemma_grid(v1, "v1", out.lemma_cases));
  out.report.merge(key_lemma_grid(v2, "v2", out.lemma_cases));
  return out;
}

BinomialTailSweep binomial_tail_one(long n, double guard) {
  BinomialTailSweep s;
  s.n = n;
  const auto row = binomial_row(n);
  for (long a = 0; a <= n / 2; ++a) {
    const BinomialTailCheck c = binomial_tail_bound_check(n, a, row, guard);
    ++s.checked;
    if (!c.holds) ++s.violations;
    s.worst_ratio = std::max(s.worst_ratio, to_double(c.ratio) / c.bound);
  }
  return s;
}

}  // namespace

namespace serial {

std::vector<KolmogorovReport> kolmogorov_sweep(const std::vector<long>& ns) {
  return index_map<KolmogorovReport>(
      ns.size(), [&](std::size_t j) { return kolmogorov_distance(SpectralMeasure(ns[j])); },
      false);
}
std::vector<SharpnessPoint> sharpness_sweep(const std::vector<long>& ns) {
  return index_map<SharpnessPoint>(ns.size(), [&](std::size_t j) { return sharpness_point(ns[j]); },
                                   false);
}
std::vector<ConcentrationReport> concentration_sweep(const std::vector<long>& ns) {
  return index_map<ConcentrationReport>(
      ns.size(), [&](std::size_t j) { return concentration_check(ns[j]); }, false);
}
std::vector<BinomialTailSweep> binomial_tail_sweep(const std::vector<long>& ns, double guard) {
  return index_map<BinomialTailSweep>(
      ns.size(), [&](std::size_t j) { return binomial_tail_one(ns[j], guard); }, false);
}
std::vector<CheckReport> lemma_sweep(const std::vector<long>& ns, bool inject_fault) {
  return index_map<CheckReport>(
      ns.size(), [&](std::size_t j) { return lemma_checks(ns[j], inject_fault); }, false);
}
std::vector<CheckReport> gelfand_sweep(const std::vector<long>& ns) {
  return index_map<CheckReport>(ns.size(), [&](std::size_t j) { return gelfand_checks(ns[j]); },
                                false);
}
std::vector<double> pipeline_sweep(Pipeline p, const std::vector<long>& ns, const Rational& t) {
  return index_map<double>(
      ns.size(), [&](std::size_t j) { return run_pipeline(p, ns[j], t).total; }, false);
}
SoundnessReport soundness_scan(const PairModel& v1, const PairModel& v2,
                               const std::vector<Rational>& t_grid) {
  return scan(v1, v2, t_grid, false);
}
SoundnessReport soundness_scan(long n, const std::vector<Rational>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("soundness_scan needs a nonempty t grid");
  return scan(make_pair_model(n, Variant::kV1), make_pair_model(n, Variant::kV2), t_grid, false);
}

}  // namespace serial

namespace parallel {

std::vector<KolmogorovReport> kolmogorov_sweep(const std::vector<long>& ns) {
  return index_map<KolmogorovReport>(
      ns.size(), [&](std::size_t j) { return kolmogorov_distance(SpectralMeasure(ns[j])); },
      true);
}
std::vector<SharpnessPoint> sharpness_sweep(const std::vector<long>& ns) {
  return index_map<SharpnessPoint>(ns.size(), [&](std::size_t j) { return sharpness_point(ns[j]); },
                                   true);
}
std::vector<ConcentrationReport> concentration_sweep(const std::vector<long>& ns) {
  return index_map<ConcentrationReport>(
      ns.size(), [&](std::size_t j) { return concentration_check(ns[j]); }, true);
}
std::vector<BinomialTailSweep> binomial_tail_sweep(const std::vector<long>& ns, double guard) {
  return index_map<BinomialTailSweep>(
      ns.size(), [&](std::size_t j) { return binomial_tail_one(ns[j], guard); }, true);
}
std::vector<CheckReport> lemma_sweep(const std::vector<long>& ns, bool inject_fault) {
  return index_map<CheckReport>(
      ns.size(), [&](std::size_t j) { return lemma_checks(ns[j], inject_fault); }, true);
}
std::vector<CheckReport> gelfand_sweep(const std::vector<long>& ns) {
  return index_map<CheckReport>(ns.size(), [&](std::size_t j) { return gelfand_checks(ns[j]); },
                                true);
}
std::vector<double> pipeline_sweep(Pipeline p, const std::vector<long>& ns, const Rational& t) {
  return index_map<double>(
      ns.size(), [&](std::size_t j) { return run_pipeline(p, ns[j], t).total; }, true);
}
SoundnessReport soundness_scan(const PairModel& v1, const PairModel& v2,
                               const std::vector<Rational>& t_grid) {
  return scan(v1, v2, t_grid, true);
}
SoundnessReport soundness_scan(long n, const std::vector<Rational>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("soundness_scan needs a nonempty t grid");
  return scan(make_pair_model(n, Variant::kV1), make_pair_model(n, Variant::kV2), t_grid, true);
}

}  // namespace parallel

}  // namespace steinexp
