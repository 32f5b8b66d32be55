// Copyright 2026 The lowdeg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lowdeg/exactchar.hpp"

#include <string>

#include "lowdeg/rng.hpp"
#include "lowdeg/runtime.hpp"

namespace lowdeg {

namespace {

std::uint64_t resolve(std::uint64_t budget) { return budget == 0 ? default_budget() : budget; }

// Member point indices of every line orbit, q per orbit, flattened.
std::vector<std::uint64_t> orbit_members(const FieldSpec& F, std::size_t m) {
  std::vector<std::uint64_t> out;
  for_each_line_orbit(F, m, [&](std::uint64_t x0, std::uint64_t h) {
    for (std::uint32_t t = 0; t < F.q(); ++t) out.push_back(offset_index(F, m, x0, h, Elem{t}));
    return true;
  });
  return out;
}

nlohmann::json witness_json(const std::optional<LineWitness>& w) {
  if (!w) return nullptr;
  nlohmann::json x = nlohmann::json::array();
  nlohmann::json h = nlohmann::json::array();
  for (Elem e : w->line.x) x.push_back(e.idx);
  for (Elem e : w->line.h) h.push_back(e.idx);
  return {{"x", x}, {"h", h}, {"t", w->t.idx}};
}

nlohmann::json degree_json(int deg) { return deg == kNegInfDegree ? nlohmann::json("-inf") : nlohmann::json(deg); }

}  // namespace

DegreeChecker::DegreeChecker(FieldPtr field, int d) : field_(std::move(field)), d_(d) {
  const FieldSpec& F = *field_;
  const std::uint32_t q = F.q();
  if (d_ < 0 || static_cast<std::uint32_t>(d_) > q - 1) {
    throw std::invalid_argument("degree bound must satisfy 0 <= d <= q - 1");
  }
  const std::uint32_t k = static_cast<std::uint32_t>(d_) + 1;
  weights_.assign(static_cast<std::size_t>(q) * k, Elem{0});
  for (std::uint32_t t = k; t < q; ++t) {
    for (std::uint32_t i = 0; i < k; ++i) {
      Elem num = FieldSpec::one();
      Elem den = FieldSpec::one();
      for (std::uint32_t j = 0; j < k; ++j) {
        if (j == i) continue;
        num = F.mul(num, F.sub(Elem{t}, Elem{j}));
        den = F.mul(den, F.sub(Elem{i}, Elem{j}));
      }
      weights_[t * k + i] = F.div(num, den);
    }
  }
}

bool DegreeChecker::low_degree(std::span<const Elem> values) const {
  const FieldSpec& F = *field_;
  const std::uint32_t k = static_cast<std::uint32_t>(d_) + 1;
  for (std::uint32_t t = k; t < values.size(); ++t) {
    Elem acc{0};
    for (std::uint32_t i = 0; i < k; ++i) acc = F.add(acc, F.mul(weights_[t * k + i], values[i]));
    if (acc != values[t]) return false;
  }
  return true;
}

LineTestResult passes_exact_line_test(const FunctionTable& g, int d, std::uint64_t budget) {
  const FieldSpec& F = *g.field();
  const std::uint32_t q = F.q();
  const std::size_t m = g.arity();
  require_budget(ipow(q, static_cast<std::uint32_t>(2 * m)), resolve(budget), "exact line test over q^(2m) lines");
  const DegreeChecker checker(g.field(), d);

  LineTestResult result{true, std::nullopt};
  std::vector<Elem> values(q);
  for_each_line_orbit(F, m, [&](std::uint64_t x0, std::uint64_t h) {
    for (std::uint32_t t = 0; t < q; ++t) values[t] = g.at(offset_index(F, m, x0, h, Elem{t}));
    if (checker.low_degree(values)) return true;
    const Line line{point_from_index(x0, m, q), point_from_index(h, m, q)};
    const LineFit fit = LineFitter(g.field(), d, FitBackend::Exact).fit(values);
    Elem miss{0};
    for (std::uint32_t t = 0; t < q; ++t) {
      if (fit.poly.eval(Elem{t}) != values[t]) {
        miss = Elem{t};
        break;
      }
    }
    result = {false, LineWitness{line, miss}};
    return false;
  });
  return result;
}

bool characterization_hypothesis(const FieldSpec& field, int d) {
  return static_cast<std::int64_t>(field.q()) - field.subfield_index() - 1 >= d;
}

nlohmann::json CharVerdict::to_json() const {
  return {{"passes_line_test", passes_line_test},
          {"witness", witness_json(witness)},
          {"total_deg", degree_json(total_deg)},
          {"hypothesis_holds", hypothesis_holds},
          {"theorem_consistent", theorem_consistent}};
}

CharVerdict characterization_check(const FunctionTable& g, int d, std::uint64_t budget) {
  CharVerdict v;
  auto test = passes_exact_line_test(g, d, budget);
  v.passes_line_test = test.passes;
  v.witness = std::move(test.witness);
  v.total_deg = total_degree(interpolate_table(g));
  v.hypothesis_holds = characterization_hypothesis(*g.field(), d);
  v.theorem_consistent = !(v.hypothesis_holds && v.passes_line_test && v.total_deg > d);
  return v;
}

MultiPoly counterexample_poly(const FieldPtr& field) {
  const std::uint32_t step = field->subfield_index();
  MultiPoly g(field, 2);
  g.add_term({(field->p() - 1) * step, step}, FieldSpec::one());
  return g;
}

FunctionTable build_counterexample(const FieldPtr& field, int d) {
  const auto q = static_cast<std::int64_t>(field->q());
  const std::int64_t low = q - field->subfield_index() - 1;
  if (!(low < d && d < q)) {
    throw std::invalid_argument("counterexample needs q - q/p - 1 < d < q, i.e. " + std::to_string(low) + " < d < " +
                                std::to_string(q));
  }
  return FunctionTable::of(counterexample_poly(field));
}

std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t r, std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  if (r > n) throw std::invalid_argument("binom_mod_p requires 0 <= r <= n");
  std::uint64_t result = 1;
  while (n > 0 || r > 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ri = r % p;
    if (ri > ni) return 0;
    // C(ni, ri) mod p with ni < p: the denominator is a unit.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t k = 0; k < ri; ++k) {
      num = num * ((ni - k) % p) % p;
      den = den * ((k + 1) % p) % p;
    }
    std::uint64_t inv = 1;
    std::uint64_t base = den;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
    }
    result = result * (num * inv % p) % p;
    n /= p;
    r /= p;
  }
  return static_cast<std::uint32_t>(result % p);
}

nlohmann::json BinomSweep::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& [n, r] : failures) fails.push_back({n, r});
  return {{"p", p}, {"s", s}, {"pairs_checked", pairs_checked}, {"failures", fails}, {"ok", ok()}};
}

BinomSweep lemma_binom_sweep(std::uint32_t p, std::uint32_t s, std::uint64_t budget) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (s == 0) throw std::invalid_argument("s must be >= 1");
  const std::uint64_t q = ipow(p, s);
  require_budget(q, budget, "binomial sweep over n < p^s");
  const std::uint64_t step = q / p;
  BinomSweep out;
  out.p = p;
  out.s = s;
  for (std::uint64_t n = 1; n < q; ++n) {
    for (std::uint64_t r = step; r <= n; r += step) {
      ++out.pairs_checked;
      if (binom_mod_p(n, r, p) == 0) out.failures.emplace_back(n, r);
    }
  }
  return out;
}

nlohmann::json CensusResult::to_json() const {
  return {{"functions", functions},
          {"passing_count", passing_count},
          {"degree_le_d_count", degree_le_d_count},
          {"mismatch_count", mismatch_count},
          {"violations", violations},
          {"hypothesis_holds", hypothesis_holds},
          {"equal", equal}};
}

CensusResult characterization_census(const FieldPtr& field, std::size_t m, int d, std::uint64_t budget) {
  const FieldSpec& F = *field;
  const std::uint32_t q = F.q();
  const std::uint64_t points = ipow(q, static_cast<std::uint32_t>(m));
  const std::uint64_t functions = points >= 64 ? UINT64_MAX : ipow(q, static_cast<std::uint32_t>(points));
  require_budget(functions, resolve(budget), "census over all q^(q^m) functions");

  const DegreeChecker checker(field, d);
  const std::vector<std::uint64_t> members = orbit_members(F, m);
  CensusResult out;
  out.functions = functions;
  out.hypothesis_holds = characterization_hypothesis(F, d);

  std::vector<Elem> digits(points, Elem{0});
  std::vector<Elem> values(q);
  for (std::uint64_t code = 0; code < functions; ++code) {
    if (code > 0) {
      // odometer increment of the value table
      for (std::uint64_t i = 0; i < points; ++i) {
        if (++digits[i].idx < q) break;
        digits[i].idx = 0;
      }
    }
    bool passes = true;
    for (std::size_t o = 0; passes && o < members.size(); o += q) {
      for (std::uint32_t t = 0; t < q; ++t) values[t] = digits[members[o + t]];
      passes = checker.low_degree(values);
    }
    const bool low = total_degree(interpolate_table(FunctionTable(field, m, digits))) <= d;
    out.passing_count += passes;
    out.degree_le_d_count += low;
    out.mismatch_count += passes != low;
    out.violations += out.hypothesis_holds && passes && !low;
  }
  out.equal = out.mismatch_count == 0;
  return out;
}

nlohmann::json SearchResult::to_json() const {
  return {{"samples", samples},
          {"passing", passing},
          {"passing_above_d", passing_above_d},
          {"violations", violations},
          {"seed", seed},
          {"mode", "randomized"}};
}

SearchResult characterization_random_search(const FieldPtr& field, std::size_t m, int d, std::uint64_t samples,
                                            std::uint64_t seed, std::uint64_t budget) {
  const std::uint32_t q = field->q();
  require_budget(ipow(q, static_cast<std::uint32_t>(2 * m)), resolve(budget), "exact line test over q^(2m) lines");
  const bool hypothesis = characterization_hypothesis(*field, d);
  SearchResult out;
  out.samples = samples;
  out.seed = seed;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng(seed, i);
    MultiPoly g = random_poly(field, m, d, rng);
    const std::uint64_t extra = 1 + rng.below(3);
    for (std::uint64_t k = 0; k < extra; ++k) {
      Exponents e(m);
      for (auto& x : e) x = static_cast<std::uint32_t>(rng.below(q));
      g.add_term(e, Elem{static_cast<std::uint32_t>(1 + rng.below(q - 1))});
    }
    const FunctionTable table = FunctionTable::of(g);
    if (!passes_exact_line_test(table, d, budget).passes) continue;
    ++out.passing;
    if (total_degree(interpolate_table(table)) > d) {
      ++out.passing_above_d;
      if (hypothesis) ++out.violations;
    }
  }
  return out;
}

}  // namespace lowdeg
