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

#include "steinexp/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "steinexp/gelfand.hpp"

namespace steinexp {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kV1: return "v1";
    case Variant::kV2: return "v2";
    case Variant::kGelfandL: return "gelfand";
  }
  return "?";
}

Rational BirthDeathKernel::operator()(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("kernel index");
  if (j == i) return stay[i];
  if (j == i + 1) return up[i];
  if (i == j + 1) return down[i];
  return Rational(0);
}

namespace {

void require_even(long n, const char* who) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument(std::string(who) + " needs an even n >= 2, got " +
                                std::to_string(n));
}

std::string at_state(std::size_t i) { return "state " + std::to_string(i); }

}  // namespace

BirthDeathKernel kernel_v1(long n) {
  require_even(n, "kernel_v1");
  const long half = n / 2;
  BirthDeathKernel k{Variant::kV1, n, half, {}, {}, {}};
  for (long i = 0; i <= half; ++i) {
    Rational up = i == half ? Rational(0)
                            : make_rational(n - i + 1,
                                            n * (n - 2 * i) * (n - 2 * i + 1));
    Rational down = make_rational(i, n * (n - 2 * i + 1) * (n - 2 * i + 2));
    k.stay.push_back(Rational(1) - up - down);
    k.up.push_back(std::move(up));
    k.down.push_back(std::move(down));
  }
  return k;
}

BirthDeathKernel kernel_v2(long n) {
  require_even(n, "kernel_v2");
  const long half = n / 2;
  BirthDeathKernel k{Variant::kV2, n, half, {}, {}, {}};
  for (long i = 0; i <= half; ++i) {
    Rational up = make_rational((n - i + 1) * (n - 2 * i), n * (n - 2 * i + 1));
    Rational down = make_rational(i * (n - 2 * i + 2), n * (n - 2 * i + 1));
    k.stay.push_back(Rational(1) - up - down);
    k.up.push_back(std::move(up));
    k.down.push_back(std::move(down));
  }
  return k;
}

CheckReport stochasticity_check(const BirthDeathKernel& k) {
  CheckReport r{"stochasticity", 0, {}};
  const std::size_t s = k.size();
  r.require(s > 0 && k.down.size() == s && k.stay.size() == s, "ragged kernel");
  if (!r.passed()) return r;
  for (std::size_t i = 0; i < s; ++i) {
    r.require(k.up[i] >= 0 && k.down[i] >= 0 && k.stay[i] >= 0,
              at_state(i) + ": negative entry");
    r.require(k.up[i] + k.down[i] + k.stay[i] == 1,
              at_state(i) + ": row sum " + to_string(k.up[i] + k.down[i] + k.stay[i]));
  }
  r.require(k.down[0] == 0, "down(0) != 0");
  r.require(k.up[s - 1] == 0, "up(last) != 0");
  return r;
}

CheckReport detailed_balance_check(const std::vector<Rational>& pi,
                                   const BirthDeathKernel& k) {
  if (pi.size() != k.size())
    throw std::invalid_argument("detailed_balance_check: size mismatch");
  CheckReport r{"detailed balance", 0, {}};
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    Rational lhs = pi[i] * k.up[i];
    Rational rhs = pi[i + 1] * k.down[i + 1];
    r.require(lhs == rhs, at_state(i) + ": pi(i)up(i) = " + to_string(lhs) +
                              " but pi(i+1)down(i+1) = " + to_string(rhs));
  }
  return r;
}

CheckReport detailed_balance_check(const SpectralMeasure& m,
                                   const BirthDeathKernel& k) {
  return detailed_balance_check(m.pi(), k);
}

PairDistribution::PairDistribution(SpectralMeasure measure,
                                   BirthDeathKernel kernel)
    : measure_(std::move(measure)), kernel_(std::move(kernel)) {
  if (kernel_.size() != measure_.size())
    throw std::invalid_argument("pair: kernel and measure sizes differ");
  atoms_.reserve(3 * measure_.size());
  for (std::size_t i = 0; i < measure_.size(); ++i) {
    auto add = [&](std::size_t j, const Rational& kij) {
      if (kij == 0) return;
      atoms_.push_back(
          PairAtom{i, j, measure_.pi(i) * kij, measure_.w(j) - measure_.w(i)});
    };
    if (i > 0) add(i - 1, kernel_.down[i]);
    add(i, kernel_.stay[i]);
    if (i + 1 < measure_.size()) add(i + 1, kernel_.up[i]);
  }
}

CheckReport marginal_check(const PairDistribution& p) {
  CheckReport r{"pair marginals", 0, {}};
  const auto& m = p.measure();
  std::vector<Rational> from(m.size()), to(m.size());
  Rational total(0);
  for (const auto& a : p.atoms()) {
    from[a.from] += a.probability;
    to[a.to] += a.probability;
    total += a.probability;
  }
  r.require(total == 1, "total mass " + to_string(total));
  for (std::size_t i = 0; i < m.size(); ++i) {
    r.require(from[i] == m.pi(i), at_state(i) + ": law of W differs from pi");
    r.require(to[i] == m.pi(i), at_state(i) + ": law of W' differs from pi");
  }
  return r;
}

ConditionalMoments conditional_moments(const PairDistribution& p, int m_max) {
  if (m_max < 1) throw std::invalid_argument("conditional_moments: m_max < 1");
  const auto& m = p.measure();
  const auto& k = p.kernel();
  ConditionalMoments out;
  out.m_max = m_max;
  out.by_state.assign(m.size(), std::vector<Rational>(m_max + 1));
  out.abs3_by_state.assign(m.size(), Rational(0));
  out.raw.assign(m_max + 1, Rational(0));

  for (std::size_t i = 0; i < m.size(); ++i) {
    auto& row = out.by_state[i];
    auto visit = [&](std::size_t j, const Rational& kij) {
      if (kij == 0) return;
      const Rational d = m.w(j) - m.w(i);
      Rational power(1);
      for (int e = 0; e <= m_max; ++e) {
        row[e] += kij * power;
        if (e == 3) out.abs3_by_state[i] += kij * abs(power);
        power *= d;
      }
      if (m_max < 3) out.abs3_by_state[i] += kij * abs(d * d * d);
    };
    if (i > 0) visit(i - 1, k.down[i]);
    visit(i, k.stay[i]);
    if (i + 1 < m.size()) visit(i + 1, k.up[i]);

    for (int e = 0; e <= m_max; ++e) out.raw[e] += m.pi(i) * row[e];
    out.abs3 += m.pi(i) * out.abs3_by_state[i];
    out.abs_drift += m.pi(i) * abs(row[1]);
    out.abs_w_minus_1 += m.pi(i) * abs(m.w(i) - 1);
  }
  return out;
}

PairModel::PairModel(PairDistribution p)
    : pair(std::move(p)), moments(conditional_moments(pair, 4)) {}

PairModel make_pair_model(long n, Variant v) {
  SpectralMeasure m(n);
  switch (v) {
    case Variant::kV1: return PairModel(PairDistribution(std::move(m), kernel_v1(n)));
    case Variant::kV2: return PairModel(PairDistribution(std::move(m), kernel_v2(n)));
    case Variant::kGelfandL:
      return PairModel(PairDistribution(std::move(m), gelfand_kernel(n, n / 2)));
  }
  throw std::invalid_argument("unknown variant");
}

namespace {

Rational mean_w(const SpectralMeasure& m) {
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) s += m.pi(i) * m.w(i);
  return s;
}

Rational second_moment_w(const SpectralMeasure& m) {
  Rational s(0);
  for (std::size_t i = 0; i < m.size(); ++i) s += m.pi(i) * m.w(i) * m.w(i);
  return s;
}

}  // namespace

CheckReport verify_momcom(const PairModel& v1) {
  const long n = v1.n();
  const auto& m = v1.measure();
  const auto& mo = v1.moments;
  CheckReport r{"momcom n=" + std::to_string(n), 0, {}};
  const Rational nn(n);
  const Rational n2 = nn * nn, n3 = n2 * nn, n4 = n3 * nn;

  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& w = m.w(i);
    Rational drift = w == 0 ? Rational(1 / nn) : Rational(-2 / n2);
    r.require(mo.at(i, 1) == drift, at_state(i) + ": E(D|W) = " +
                                        to_string(mo.at(i, 1)) + ", expected " +
                                        to_string(drift));
    Rational second = 4 / n2;
    r.require(mo.at(i, 2) == second, at_state(i) + ": E(D^2|W) = " + to_string(mo.at(i, 2)));
    Rational third = -(16 / n3) * (w - 1);
    r.require(mo.at(i, 3) == third, at_state(i) + ": E(D^3|W) = " + to_string(mo.at(i, 3)));
    Rational fourth = (32 / n3 - 64 / n4) * w + 64 / n4;
    r.require(mo.at(i, 4) == fourth, at_state(i) + ": E(D^4|W) = " + to_string(mo.at(i, 4)));
  }
  r.require(mean_w(m) == 1, "E(W) != 1");
  r.require(mo.raw[4] == 32 / n3, "E(D^4) = " + to_string(mo.raw[4]));
  r.require(mo.raw[1] == 0, "E(D) != 0");
  r.require(mo.raw[3] == 0, "E(D^3) != 0");
  return r;
}

CheckReport verify_momcom(long n) {
  return verify_momcom(make_pair_model(n, Variant::kV1));
}

CheckReport verify_momcom2(const PairModel& v2) {
  const long n = v2.n();
  const auto& m = v2.measure();
  const auto& mo = v2.moments;
  CheckReport r{"momcom2 n=" + std::to_string(n), 0, {}};
  const Rational nn(n);
  const Rational n2 = nn * nn, n4 = n2 * n2;

  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rational& w = m.w(i);
    Rational drift = -(4 / nn) * (w - 1);
    r.require(mo.at(i, 1) == drift, at_state(i) + ": E(D|W) = " + to_string(mo.at(i, 1)));
    Rational second = (8 / nn) * w - (16 / n2) * (w - 1);
    r.require(mo.at(i, 2) == second, at_state(i) + ": E(D^2|W) = " + to_string(mo.at(i, 2)));
    Rational fourth =
        (32 / n2) * (2 * w * w + (12 * w - 8 * w * w) / nn + 8 * (1 - w) / n2);
    r.require(mo.at(i, 4) == fourth, at_state(i) + ": E(D^4|W) = " + to_string(mo.at(i, 4)));
    Rational envelope = (256 / n2) * w * w + (w == 0 ? Rational(256 / n4) : Rational(0));
    r.require(mo.at(i, 4) <= envelope,
              at_state(i) + ": E(D^4|W) exceeds (256/n^2)W^2 + (256/n^4)1{W=0}");
    r.require(v2.pair.kernel().stay[i] == 0, at_state(i) + ": holding probability");
  }
  const Rational ew = mean_w(m);
  r.require(ew == 1, "E(W) != 1");
  r.require(second_moment_w(m) - ew * ew == 1, "Var(W) != 1");
  r.require(mo.raw[1] == 0, "E(D) != 0");
  r.require(mo.raw[3] == 0, "E(D^3) != 0");
  return r;
}

CheckReport verify_momcom2(long n) {
  return verify_momcom2(make_pair_model(n, Variant::kV2));
}

CheckReport kernel_relation_check(long n) {
  require_even(n, "kernel_relation_check");
  CheckReport r{"kernel relation n=" + std::to_string(n), 0, {}};
  const SpectralMeasure m(n);
  const BirthDeathKernel small = kernel_v1(n);
  const BirthDeathKernel large = kernel_v2(n);
  const Rational scale = make_rational(4, n * n);

  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j : {i - 1, i + 1}) {
      if (j >= m.size()) continue;  // wraps for i = 0
      const Rational kij = large(i, j);
      const Rational dw = m.w(i) - m.w(j);
      const Rational predicted = kij == 0 ? Rational(0) : Rational(scale * kij / (dw * dw));
      r.require(small(i, j) == predicted,
                at_state(i) + " -> " + std::to_string(j) + ": K~ = " +
                    to_string(small(i, j)) + ", predicted " + to_string(predicted));
    }
  }

  PairModel ps(PairDistribution(m, small));
  PairModel pl(PairDistribution(m, large));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int rr = 2; rr <= 4; ++rr)
      r.require(ps.moments.at(i, rr) == scale * pl.moments.at(i, rr - 2),
                at_state(i) + ": E[D~^" + std::to_string(rr) +
                    "|i] != (4/n^2) E[D^" + std::to_string(rr - 2) + "|i]");
  return r;
}

Rational tail_term(const PairDistribution& p, const Rational& t) {
  Rational s(0);
  for (const auto& a : p.atoms()) {
    if (a.d == 0) continue;
    if (abs(p.measure().w(a.from) - t) <= abs(a.d)) s += a.probability * a.d * a.d;
  }
  return s;
}

Rational exceed_prob(const PairDistribution& p, const Rational& c) {
  Rational s(0);
  for (const auto& a : p.atoms())
    if (abs(a.d) > c) s += a.probability;
  return s;
}

Rational truncated_d2(const PairDistribution& p, const Rational& c) {
  Rational s(0);
  for (const auto& a : p.atoms())
    if (abs(a.d) > c) s += a.probability * a.d * a.d;
  return s;
}

Rational concentration_radius(long n) {
  if (n < 2) throw std::invalid_argument("concentration_radius: n < 2");
  const double nd = static_cast<double>(n);
  const long ceil_root = static_cast<long>(std::ceil(std::sqrt(2.5 * nd * std::log(nd))));
  return make_rational(4 * (ceil_root + 1), n);
}

ConcentrationReport concentration_check(const PairDistribution& v1) {
  ConcentrationReport out;
  out.n = v1.n();
  out.c = concentration_radius(out.n);
  out.probability = exceed_prob(v1, out.c);
  out.bound = std::pow(static_cast<double>(out.n), -2.5);
  out.holds = out.probability <= exact(out.bound);
  return out;
}

ConcentrationReport concentration_check(long n) {
  return concentration_check(PairDistribution(SpectralMeasure(n), kernel_v1(n)));
}

}  // namespace steinexp
