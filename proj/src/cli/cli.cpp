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

#include "steinexp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "steinexp/bounds.hpp"
#include "steinexp/gelfand.hpp"
#include "steinexp/spectral.hpp"
#include "steinexp/stein.hpp"
#include "steinexp/sweeps.hpp"

namespace steinexp {

namespace {

struct Outcome {
  Table table;
  std::vector<std::string> failures;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string> kCommands = {"spectrum", "kolmogorov", "sharpness", "kernels",
                                            "moments",  "bounds",     "solutions", "gelfand",
                                            "verify",   "scan"};

const char* describe(const std::string& command) {
  if (command == "spectrum") return "atoms, masses and eigenvalues of the spectral measure";
  if (command == "kolmogorov") return "Kolmogorov distance to Exp(1)";
  if (command == "sharpness") return "the n^{-1/2} lower-bound sequence";
  if (command == "kernels") return "birth-death kernel entries";
  if (command == "moments") return "exact conditional moments of D = W' - W";
  if (command == "bounds") return "Berry-Esseen bound terms against the exact discrepancy";
  if (command == "solutions") return "Stein solution audits on a grid";
  if (command == "gelfand") return "spherical functions of the Johnson scheme";
  if (command == "verify") return "run verification suites; exit 1 on any failure";
  return "sweep discrepancies, tails and bound totals over (n, t)";
}

std::vector<long> ns_or(const RunConfig& c, std::vector<long> fallback) {
  return c.ns.empty() ? std::move(fallback) : c.ns;
}

std::vector<Rational> ts_or(const RunConfig& c, std::vector<Rational> fallback) {
  return c.ts.empty() ? std::move(fallback) : c.ts;
}

void collect(const CheckReport& r, std::vector<std::string>& failures) {
  for (const auto& f : r.failures) failures.push_back(r.name + ": " + f);
}

Outcome cmd_spectrum(const RunConfig& c) {
  Outcome o;
  o.table.title = "spectral measure";
  o.table.columns = {"n", "i", "pi", "w", "tau", "pi_value", "w_value"};
  for (long n : ns_or(c, {8})) {
    const SpectralMeasure m(n);
    Rational mass(0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      mass += m.pi(i);
      o.table.add({n, static_cast<long>(i), m.pi(i), m.w(i), m.tau(i), to_double(m.pi(i)),
                   to_double(m.w(i))});
    }
    if (mass != 1) o.failures.push_back("n=" + std::to_string(n) + ": total mass " + to_string(mass));
  }
  return o;
}

Outcome cmd_kolmogorov(const RunConfig& c) {
  Outcome o;
  o.table.title = "Kolmogorov distance to Exp(1)";
  o.table.columns = {"n", "distance", "scaled", "witness_state", "witness_side"};
  const auto ns = ns_or(c, {4, 16, 64, 256, 1024});
  const auto rows = c.serial ? serial::kolmogorov_sweep(ns) : parallel::kolmogorov_sweep(ns);
  for (const auto& r : rows)
    o.table.add({r.n, r.distance, r.scaled, static_cast<long>(r.witness_state),
                 std::string(to_string(r.witness_side))});
  return o;
}

bool even_square(long n) {
  const long r = std::lround(std::sqrt(static_cast<double>(n)));
  return n % 2 == 0 && r * r == n;
}

Outcome cmd_sharpness(const RunConfig& c) {
  Outcome o;
  o.table.title = "sharpness sequence";
  o.table.columns = {"n", "a", "t_n", "tail", "delta", "scaled"};
  const auto ns = ns_or(c, {16, 36, 64, 100, 144, 196, 256});
  for (long n : ns)
    if (!even_square(n))
      throw UsageError("sharpness needs even perfect squares, got " + std::to_string(n));
  const auto rows = c.serial ? serial::sharpness_sweep(ns) : parallel::sharpness_sweep(ns);
  for (const auto& r : rows) o.table.add({r.n, r.a, r.t_n, r.tail, r.delta, r.scaled});
  return o;
}

Outcome cmd_kernels(const RunConfig& c) {
  Outcome o;
  o.table.title = std::string("kernel ") + to_string(c.variant);
  o.table.columns = {"n", "i", "up", "down", "stay"};
  for (long n : ns_or(c, {8})) {
    const BirthDeathKernel k = c.variant == Variant::kV1 ? kernel_v1(n) : kernel_v2(n);
    for (std::size_t i = 0; i < k.size(); ++i)
      o.table.add({n, static_cast<long>(i), k.up[i], k.down[i], k.stay[i]});
    CheckReport s = stochasticity_check(k);
    s.name = "n=" + std::to_string(n) + " rows";
    collect(s, o.failures);
    CheckReport b = detailed_balance_check(SpectralMeasure(n), k);
    b.name = "n=" + std::to_string(n) + " balance";
    collect(b, o.failures);
  }
  return o;
}

Outcome cmd_moments(const RunConfig& c) {
  Outcome o;
  o.table.title = std::string("conditional moments ") + to_string(c.variant);
  o.table.columns = {"n", "i", "w", "drift", "m2", "m3", "m4", "abs3"};
  for (long n : ns_or(c, {8})) {
    const PairModel p = make_pair_model(n, c.variant);
    const auto& m = p.measure();
    for (std::size_t i = 0; i < m.size(); ++i)
      o.table.add({n, static_cast<long>(i), m.w(i), p.moments.at(i, 1), p.moments.at(i, 2),
                   p.moments.at(i, 3), p.moments.at(i, 4), p.moments.abs3_by_state[i]});
    CheckReport r = c.variant == Variant::kV1 ? verify_momcom(p) : verify_momcom2(p);
    r.name = "n=" + std::to_string(n);
    collect(r, o.failures);
  }
  return o;
}

BoundBreakdown evaluate_bound(const RunConfig& c, const PairModel& p, const Rational& t) {
  const long n = p.n();
  const Rational nn(n);
  const bool v1 = c.variant == Variant::kV1;
  if (c.mode == "recipe") {
    if (c.lambda || c.c || c.kappa)
      throw UsageError("--lambda/--c/--kappa do not apply to the recipe mode");
    return v1 ? bl_small_t(p, t) : bl_large_t(p, t);
  }
  if (c.mode == "log-factor") {
    if (!v1) throw UsageError("the log-factor route uses the v1 pair");
    return bl_log_factor(p, t);
  }
  const Rational lambda = c.lambda ? *c.lambda : (v1 ? Rational(2 / (nn * nn)) : Rational(4 / nn));
  ToolParams params;
  params.tool1 = Tool1Params{c.c ? *c.c : concentration_radius(n)};
  params.tool3 = Tool3Params{c.kappa ? *c.kappa : Rational(2)};
  TailMode mode;
  if (c.mode == "exact") {
    mode = TailMode::kExact;
  } else if (c.mode == "tool1") {
    mode = TailMode::kTool1;
  } else if (c.mode == "tool2") {
    if (!v1) throw UsageError("tool2 applies to Theorem 1 (--variant v1)");
    params.tool2 = small_t_tool2_params(n);
    mode = TailMode::kTool2;
  } else if (c.mode == "tool3") {
    if (v1) throw UsageError("tool3 applies to Theorem 2 (--variant v2)");
    mode = TailMode::kTool3;
  } else {
    throw UsageError("unknown mode '" + c.mode + "'");
  }
  return v1 ? theorem1_bound(p, t, lambda, mode, params)
            : theorem2_bound(p, t, lambda, mode, params);
}

Outcome cmd_bounds(const RunConfig& c) {
  Outcome o;
  o.table.title = std::string("bounds ") + to_string(c.variant) + " " + c.mode;
  std::vector<std::string> term_names;
  std::set<std::string> seen_notes;
  for (long n : ns_or(c, {100})) {
    const PairModel p = make_pair_model(n, c.variant);
    for (const Rational& t : ts_or(c, {Rational(1)})) {
      BoundBreakdown b = evaluate_bound(c, p, t);
      std::vector<std::string> names;
      for (const auto& term : b.terms) names.push_back(term.name);
      if (o.table.columns.empty()) {
        term_names = names;
        o.table.columns = {"n", "t", "theorem", "mode"};
        o.table.columns.insert(o.table.columns.end(), names.begin(), names.end());
        for (const char* col : {"total", "exact", "sound", "checks"}) o.table.columns.push_back(col);
      } else if (names != term_names) {
        throw std::logic_error("bound terms changed between rows");
      }
      std::vector<Cell> row = {n, t, b.theorem, std::string(to_string(b.mode))};
      for (const auto& term : b.terms) row.emplace_back(term.value);
      row.emplace_back(b.total);
      row.emplace_back(b.exact_value);
      row.emplace_back(b.sound);
      row.emplace_back(b.all_checks_pass());
      o.table.add(std::move(row));
      const std::string where = "n=" + std::to_string(n) + " t=" + to_string(t);
      if (!b.sound) o.failures.push_back(where + ": total below the exact discrepancy");
      for (const auto& chk : b.checks)
        if (!chk.ok) o.failures.push_back(where + ": " + chk.name);
      for (const auto& note : b.notes)
        if (seen_notes.insert(note).second) o.table.notes.push_back(note);
    }
  }
  return o;
}

Outcome cmd_solutions(const RunConfig& c) {
  Outcome o;
  const SteinVersion v = c.variant == Variant::kV1 ? SteinVersion::kV1 : SteinVersion::kV2;
  o.table.title = std::string("Stein solution audit ") + to_string(v);
  o.table.columns = {"version", "t",           "sup_f",    "inf_f",    "sup_f1", "f1_oscillation",
                     "sup_f2",  "max_residual", "f1_bound", "f2_bound", "passed"};
  for (const Rational& tq : ts_or(c, linear_grid(make_rational(1, 10), Rational(5), 50))) {
    const double t = to_double(tq);
    const BoundAudit a = bound_audit(v, t, c.grid_size);
    o.table.add({std::string(to_string(v)), tq, a.sup_f, a.inf_f, a.sup_f1, a.f1_oscillation,
                 a.sup_f2, a.max_residual, a.f1_bound, a.f2_bound, a.report.passed()});
    collect(a.report, o.failures);
  }
  return o;
}

Outcome cmd_gelfand(const RunConfig& c) {
  Outcome o;
  o.table.title = "spherical functions";
  o.table.columns = {"n", "k", "i", "r", "omega"};
  for (long n : ns_or(c, {8})) {
    const long k = c.k < 0 ? n / 2 : c.k;
    if (k > n / 2) throw UsageError("--k must be at most n/2");
    const SphericalTable t = spherical_table(n, k);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t r = 0; r < t.omega[i].size(); ++r)
        o.table.add({n, k, static_cast<long>(i), static_cast<long>(r), t.omega[i][r]});
    const std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    for (CheckReport rep : {spherical_table_check(t), hahn_recurrence_check(t),
                            orthogonality_check(t)}) {
      rep.name = tag + " " + rep.name;
      collect(rep, o.failures);
    }
  }
  return o;
}

void add_suite_rows(Outcome& o, const std::string& suite, const std::vector<CheckReport>& reps) {
  for (const auto& r : reps) {
    o.table.add({suite, r.name, static_cast<long>(r.checked), static_cast<long>(r.failures.size()),
                 r.passed()});
    collect(r, o.failures);
  }
}

Outcome cmd_verify(const RunConfig& c) {
  static const std::set<std::string> kSuites = {"all",   "lemmas",        "gelfand",  "stein",
                                                "binomial", "concentration", "soundness"};
  if (!kSuites.count(c.suite)) throw UsageError("unknown suite '" + c.suite + "'");
  if (c.n_max < 2) throw UsageError("--n-max must be at least 2");
  Outcome o;
  o.table.title = "verification suites";
  o.table.columns = {"suite", "item", "checked", "failures", "passed"};
  const bool all = c.suite == "all";
  const bool par = !c.serial;
  if (all || c.suite == "lemmas") {
    const auto ns = even_range(2, c.n_max);
    add_suite_rows(o, "lemmas", par ? parallel::lemma_sweep(ns, c.inject_fault)
                                    : serial::lemma_sweep(ns, c.inject_fault));
  }
  if (all || c.suite == "gelfand") {
    const auto ns = even_range(2, std::min(c.n_max, 100L));
    add_suite_rows(o, "gelfand", par ? parallel::gelfand_sweep(ns) : serial::gelfand_sweep(ns));
  }
  if (all || c.suite == "stein") add_suite_rows(o, "stein", {stein_checks(c.grid_size)});
  if (all || c.suite == "binomial") {
    const auto ns = even_range(2, c.n_max);
    CheckReport r;
    r.name = "n<=" + std::to_string(c.n_max);
    for (const auto& s : par ? parallel::binomial_tail_sweep(ns) : serial::binomial_tail_sweep(ns)) {
      r.checked += static_cast<std::size_t>(s.checked);
      if (s.violations)
        r.failures.push_back("n=" + std::to_string(s.n) + ": " + std::to_string(s.violations) +
                             " violations");
    }
    add_suite_rows(o, "binomial", {r});
  }
  if (all || c.suite == "concentration") {
    const auto ns = even_range(4, c.n_max);
    CheckReport r;
    r.name = "n<=" + std::to_string(c.n_max);
    for (const auto& s : par ? parallel::concentration_sweep(ns) : serial::concentration_sweep(ns))
      r.require(s.holds, "n=" + std::to_string(s.n) + ": P(|D|>c) = " +
                             format_double(to_double(s.probability), 6));
    add_suite_rows(o, "concentration", {r});
  }
  if (all || c.suite == "soundness") {
    std::vector<long> ns;
    for (long n : ns_or(c, {16, 64, 256}))
      if (n <= c.n_max) ns.push_back(n);
    const auto grid = ts_or(c, linear_grid(make_rational(1, 10), Rational(5), 50));
    std::vector<CheckReport> reps;
    for (long n : ns)
      reps.push_back(par ? parallel::soundness_scan(n, grid).report
                         : serial::soundness_scan(n, grid).report);
    add_suite_rows(o, "soundness", reps);
  }
  return o;
}

Outcome cmd_scan(const RunConfig& c, std::vector<SweepRow>& rows) {
  Outcome o;
  const auto grid = ts_or(c, linear_grid(make_rational(1, 10), Rational(5), 50));
  for (long n : ns_or(c, {16, 64, 256})) {
    const PairModel v1 = make_pair_model(n, Variant::kV1);
    const PairModel v2 = make_pair_model(n, Variant::kV2);
    const SoundnessReport rep =
        c.serial ? serial::soundness_scan(v1, v2, grid) : parallel::soundness_scan(v1, v2, grid);
    collect(rep.report, o.failures);
    std::size_t j = 0;
    for (const Rational& t : grid) {
      rows.push_back({n, t, "discrepancy", std::nullopt, discrepancy(v1.measure(), t)});
      const Rational tail1 = tail_term(v1.pair, t);
      const Rational tail2 = tail_term(v2.pair, t);
      rows.push_back({n, t, "tail_v1", tail1, to_double(tail1)});
      rows.push_back({n, t, "tail_v2", tail2, to_double(tail2)});
      for (; j < rep.records.size() && rep.records[j].t == t; ++j)
        rows.push_back({n, t, rep.records[j].bound, std::nullopt, rep.records[j].total});
    }
    for (const auto& [name, ratio] : rep.min_ratio)
      rows.push_back({n, std::nullopt, "min_ratio:" + name, std::nullopt, ratio});
  }
  o.table = sweep_table(rows);
  o.table.title = "soundness scan";
  return o;
}

void validate(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw UsageError("unknown command '" + c.command + "'");
  for (long n : c.ns)
    if (n < 2 || n % 2 != 0) throw UsageError("n must be even and at least 2, got " + std::to_string(n));
  for (const auto& t : c.ts)
    if (!(t > 0)) throw UsageError("t must be positive");
  if (c.variant == Variant::kGelfandL) throw UsageError("--variant must be v1 or v2");
  if (c.digits < 1 || c.digits > 17) throw UsageError("--digits must be in [1, 17]");
  if (c.grid_size < 2) throw UsageError("--grid-size must be at least 2");
}

Outcome dispatch(const RunConfig& c, std::vector<SweepRow>& sweep_rows) {
  if (c.command == "spectrum") return cmd_spectrum(c);
  if (c.command == "kolmogorov") return cmd_kolmogorov(c);
  if (c.command == "sharpness") return cmd_sharpness(c);
  if (c.command == "kernels") return cmd_kernels(c);
  if (c.command == "moments") return cmd_moments(c);
  if (c.command == "bounds") return cmd_bounds(c);
  if (c.command == "solutions") return cmd_solutions(c);
  if (c.command == "gelfand") return cmd_gelfand(c);
  if (c.command == "verify") return cmd_verify(c);
  return cmd_scan(c, sweep_rows);
}

std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size() || item.empty())
      throw UsageError("bad entry '" + item + "' in --n-list");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

Variant parse_variant(const std::string& s) {
  if (s == "v1") return Variant::kV1;
  if (s == "v2") return Variant::kV2;
  throw UsageError("--variant must be v1 or v2");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    validate(config);
    std::vector<SweepRow> sweep_rows;
    o = dispatch(config, sweep_rows);
  } catch (const DriftIdentityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.output.empty()) {
    write_table(o.table, config.format, out, config.digits);
  } else {
    std::ofstream f(config.output, std::ios::binary | std::ios::trunc);
    if (f) write_table(o.table, config.format, f, config.digits);
    if (!f) {
      err << "error: cannot write '" << config.output << "'\n";
      return kExitUsage;
    }
  }
  if (config.format == Format::kCsv)
    for (const auto& n : o.table.notes) err << "note: " << n << '\n';

  if (o.failures.empty()) return kExitOk;
  constexpr std::size_t kShown = 50;
  for (std::size_t j = 0; j < std::min(kShown, o.failures.size()); ++j)
    err << "FAIL " << o.failures[j] << '\n';
  if (o.failures.size() > kShown)
    err << "... " << o.failures.size() - kShown << " more failures\n";
  return kExitFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of exponential Berry-Esseen bounds for the "
               "Bernoulli-Laplace spectral measure"};
  app.require_subcommand(1);

  RunConfig cfg;
  long n = 0;
  std::string n_list, t, t_grid, variant = "v1", format = "table", lambda, c, kappa;

  for (const auto& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--n", n, "single even n");
    sub->add_option("--n-list", n_list, "comma-separated even n values");
    sub->add_option("--t", t, "threshold t (rational or decimal)");
    sub->add_option("--t-grid", t_grid, "a:b:count, count equally spaced t in [a, b]");
    sub->add_option("--variant", variant, "pair: v1 (constant drift) or v2 (linear drift)");
    sub->add_option("--format", format, "table, csv or json");
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
    sub->add_option("--digits", cfg.digits, "significant digits for floats");
    sub->add_flag("--serial", cfg.serial, "use the serial reference sweeps");
    if (name == "bounds") {
      sub->add_option("--mode", cfg.mode, "recipe, log-factor, exact, tool1, tool2 or tool3");
      sub->add_option("--lambda", lambda, "override lambda");
      sub->add_option("--c", c, "Tool 1 truncation level");
      sub->add_option("--kappa", kappa, "Tool 3 kappa");
    }
    if (name == "gelfand") sub->add_option("--k", cfg.k, "subset size (default n/2)");
    if (name == "solutions" || name == "verify")
      sub->add_option("--grid-size", cfg.grid_size, "points in the audit grid");
    if (name == "verify") {
      sub->add_option("--suite", cfg.suite,
                      "all, lemmas, gelfand, stein, binomial, concentration or soundness");
      sub->add_option("--n-max", cfg.n_max, "largest n for the n sweeps");
      sub->add_flag("--inject-fault", cfg.inject_fault,
                    "perturb the v1 kernel so the lemma suite must fail");
    }
  }

  try {
    std::vector<std::string> args;
    for (int j = argc - 1; j >= 1; --j) args.emplace_back(argv[j]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (n != 0) cfg.ns.push_back(n);
    if (!n_list.empty()) {
      const auto more = parse_n_list(n_list);
      cfg.ns.insert(cfg.ns.end(), more.begin(), more.end());
    }
    if (!t.empty()) cfg.ts.push_back(parse_rational(t));
    if (!t_grid.empty()) {
      const auto more = parse_grid(t_grid);
      cfg.ts.insert(cfg.ts.end(), more.begin(), more.end());
    }
    cfg.variant = parse_variant(variant);
    cfg.format = parse_format(format);
    if (!lambda.empty()) cfg.lambda = parse_rational(lambda);
    if (!c.empty()) cfg.c = parse_rational(c);
    if (!kappa.empty()) cfg.kappa = parse_rational(kappa);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace steinexp
