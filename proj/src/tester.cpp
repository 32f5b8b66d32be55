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

#include "lowdeg/tester.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lowdeg/runtime.hpp"

namespace lowdeg {

namespace {

std::uint64_t resolve(std::uint64_t budget) { return budget == 0 ? default_budget() : budget; }

Point random_point(Rng& rng, std::size_t m, std::uint32_t q) {
  Point p(m);
  for (auto& e : p) e = Elem{static_cast<std::uint32_t>(rng.below(q))};
  return p;
}

// Vote histogram for point x over all directions; returns (winner, count).
std::pair<Elem, std::uint64_t> plurality_at(const LineSurvey& s, std::uint64_t x, std::vector<std::uint64_t>& hist) {
  std::fill(hist.begin(), hist.end(), 0);
  for (std::uint64_t h = 0; h < s.points; ++h) ++hist[s.at_zero[s.pair(x, h)].idx];
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < s.q; ++c) {
    if (hist[c] > hist[best]) best = c;  // ties keep the smaller index
  }
  return {Elem{best}, hist[best]};
}

}  // namespace

bool TestReport::within_3sigma(const Rational& value) const {
  return std::abs(estimate - to_double(value)) <= 3.0 * stddev_bound;
}

nlohmann::json TestReport::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["rejections"] = rejections;
  j["estimate"] = estimate;
  j["exact"] = exact ? nlohmann::json(to_string(*exact)) : nlohmann::json(nullptr);
  j["stddev_bound"] = stddev_bound;
  j["seed"] = seed;
  j["params"] = params;
  return j;
}

void finalize_monte_carlo(TestReport& report) {
  const double n = static_cast<double>(report.trials);
  report.estimate = n > 0 ? static_cast<double>(report.rejections) / n : 0.0;
  const double smoothed = (static_cast<double>(report.rejections) + 1.0) / (n + 2.0);
  report.stddev_bound = n > 0 ? std::sqrt(smoothed * (1.0 - smoothed) / n) : 0.0;
}

nlohmann::json params_json(const FieldSpec& field, std::size_t m, int d, FitBackend backend) {
  return {{"p", field.p()}, {"s", field.s()}, {"m", m}, {"d", d}, {"backend", std::string(to_string(backend))}};
}

nlohmann::json hypothesis_note(const Rational& delta, std::uint32_t q, std::size_t m) {
  nlohmann::json j;
  const Rational eps = Rational(1, 8) - delta;
  j["epsilon"] = to_string(eps);
  if (eps > Rational(0)) {
    const double e = to_double(eps);
    j["alpha"] = 4.0 / (e * e * q);
    j["field_size_hypothesis"] = Rational(q) * eps * eps > Rational(16);
  } else {
    j["alpha"] = nullptr;
    j["field_size_hypothesis"] = false;
  }
  j["degenerate_direction_mass"] = "1/" + std::to_string(ipow(q, static_cast<std::uint32_t>(m)));
  return j;
}

CorruptionSpec CorruptionSpec::random_points(Rational fraction, std::uint64_t seed) {
  if (fraction < Rational(0) || fraction > Rational(1)) throw std::invalid_argument("corruption fraction must lie in [0, 1]");
  CorruptionSpec c;
  c.mode = Mode::RandomPoints;
  c.fraction = fraction;
  c.seed = seed;
  return c;
}

CorruptionSpec CorruptionSpec::single_point(std::uint64_t index, Elem value) {
  CorruptionSpec c;
  c.mode = Mode::SinglePoint;
  c.index = index;
  c.value = value;
  return c;
}

CorruptionSpec CorruptionSpec::adversarial(std::vector<std::pair<std::uint64_t, Elem>> overrides) {
  CorruptionSpec c;
  c.mode = Mode::Adversarial;
  c.overrides = std::move(overrides);
  return c;
}

std::uint64_t round_count(const Rational& fraction, std::uint64_t n) {
  const Rational scaled = fraction * Rational(static_cast<std::int64_t>(n));
  // floor(x + 1/2)
  const Rational shifted = scaled + Rational(1, 2);
  return static_cast<std::uint64_t>(shifted.numerator() / shifted.denominator());
}

FunctionTable apply_corruption(const FunctionTable& g, const CorruptionSpec& spec) {
  FunctionTable f = g;
  const std::uint32_t q = g.field()->q();
  switch (spec.mode) {
    case CorruptionSpec::Mode::RandomPoints: {
      if (spec.fraction < Rational(0) || spec.fraction > Rational(1)) throw std::invalid_argument("corruption fraction must lie in [0, 1]");
      const std::uint64_t n = g.size();
      const std::uint64_t count = round_count(spec.fraction, n);
      if (count > 0 && q < 2) throw std::invalid_argument("cannot corrupt over a one-element field");
      Rng rng(spec.seed, 0x636f7272);
      std::vector<std::uint64_t> order(n);
      for (std::uint64_t i = 0; i < n; ++i) order[i] = i;
      for (std::uint64_t i = 0; i < count; ++i) {
        std::swap(order[i], order[i + rng.below(n - i)]);
        const std::uint64_t idx = order[i];
        const auto shift = static_cast<std::uint32_t>(1 + rng.below(q - 1));
        f.set(idx, Elem{(g.at(idx).idx + shift) % q});
      }
      break;
    }
    case CorruptionSpec::Mode::SinglePoint:
      if (spec.index >= g.size()) throw std::out_of_range("corruption index out of range");
      f.set(spec.index, spec.value);
      break;
    case CorruptionSpec::Mode::Adversarial:
      for (const auto& [idx, value] : spec.overrides) {
        if (idx >= g.size()) throw std::out_of_range("corruption index out of range");
        f.set(idx, value);
      }
      break;
  }
  return f;
}

bool line_point_test_once(const FunctionTable& f, const LineOracle& oracle, Rng& rng) {
  const FieldSpec& F = *f.field();
  Line line{random_point(rng, f.arity(), F.q()), random_point(rng, f.arity(), F.q())};
  const Elem t{static_cast<std::uint32_t>(rng.below(F.q()))};
  const UniPoly p = oracle(line);
  return p.eval(t) == f.at(line_point(F, line, t));
}

TestReport estimate_delta(const FunctionTable& f, int d, std::uint64_t trials, std::uint64_t seed,
                          FitBackend backend) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const LineFitter fitter(f.field(), d, backend);
  const LineOracle oracle = [&](const Line& line) { return line_poly(f, line, fitter).poly; };
  TestReport report;
  report.trials = trials;
  report.seed = seed;
  report.params = params_json(*f.field(), f.arity(), d, backend);
  report.rejections = parallel_count(trials, [&](std::uint64_t i) -> std::uint64_t {
    Rng rng(seed, i);
    return line_point_test_once(f, oracle, rng) ? 0 : 1;
  });
  finalize_monte_carlo(report);
  return report;
}

Rational exact_delta(const LineSurvey& survey) {
  std::uint64_t miss = 0;
  for (auto a : survey.agreement) miss += survey.q - a;
  return ratio(miss, survey.agreement.size() * survey.q);
}

Rational delta_f(const LineSurvey& survey, const FunctionTable& f) {
  std::uint64_t miss = 0;
  for (std::uint64_t x = 0; x < survey.points; ++x) {
    const Elem v = f.at(x);
    for (std::uint64_t h = 0; h < survey.points; ++h) miss += survey.at_zero[survey.pair(x, h)] != v;
  }
  return ratio(miss, survey.points * survey.points);
}

FunctionTable corr(const LineSurvey& survey, const FunctionTable& f) {
  FunctionTable out(f.field(), f.arity());
  std::vector<std::uint64_t> hist(survey.q);
  for (std::uint64_t x = 0; x < survey.points; ++x) out.set(x, plurality_at(survey, x, hist).first);
  return out;
}

Rational exact_plurality_disagreement(const LineSurvey& survey) {
  // For each x: Q^2 - sum_c n_c^2 ordered direction pairs disagree.
  std::vector<std::uint64_t> hist(survey.q);
  const std::uint64_t n = survey.points;
  std::uint64_t total = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    plurality_at(survey, x, hist);
    std::uint64_t same = 0;
    for (auto c : hist) same += c * c;
    total += n * n - same;
  }
  return ratio(total, n * n * n);
}

Rational corr_vote_loss(const LineSurvey& survey) {
  std::vector<std::uint64_t> hist(survey.q);
  std::uint64_t loss = 0;
  for (std::uint64_t x = 0; x < survey.points; ++x) loss += survey.points - plurality_at(survey, x, hist).second;
  return ratio(loss, survey.points * survey.points);
}

Rational exact_delta(const FunctionTable& f, int d, FitBackend backend, std::uint64_t budget) {
  return exact_delta(survey_lines(f, d, backend, resolve(budget)));
}

Rational delta_f(const FunctionTable& f, int d, FitBackend backend, std::uint64_t budget) {
  return delta_f(survey_lines(f, d, backend, resolve(budget)), f);
}

FunctionTable corr(const FunctionTable& f, int d, FitBackend backend, std::uint64_t budget) {
  return corr(survey_lines(f, d, backend, resolve(budget)), f);
}

nlohmann::json ContractionReport::to_json() const {
  return {
      {"delta_f_before", to_string(delta_f_before)},
      {"delta_f_after", to_string(delta_f_after)},
      {"exact_delta", to_string(exact_delta)},
      {"dist_f_g", to_string(dist_f_g)},
      {"dist_f_corr", to_string(dist_f_corr)},
      {"dist_corr_g", to_string(dist_corr_g)},
      {"corr_equals_g", corr_equals_g},
      {"two_delta_ok", two_delta_ok},
      {"contraction_observed", contraction_observed},
      {"quarter_asserted", quarter_asserted},
      {"quarter_ok", quarter_ok},
      {"field_size_hypothesis", field_size_hypothesis},
      {"bounds_ok", bounds_ok},
  };
}

ContractionReport contraction_experiment(const MultiPoly& g, const CorruptionSpec& corruption, int d,
                                         FitBackend backend, std::uint64_t budget) {
  if (total_degree(g) > d) throw std::invalid_argument("base polynomial exceeds the degree bound");
  budget = resolve(budget);
  const FunctionTable clean = FunctionTable::of(g);
  const FunctionTable f = apply_corruption(clean, corruption);
  const std::uint32_t q = g.field()->q();

  const LineSurvey before = survey_lines(f, d, backend, budget);
  const FunctionTable corrected = corr(before, f);
  const LineSurvey after = survey_lines(corrected, d, backend, budget);

  ContractionReport r;
  r.delta_f_before = delta_f(before, f);
  r.delta_f_after = delta_f(after, corrected);
  r.exact_delta = exact_delta(before);
  r.dist_f_g = distance(f, clean);
  r.dist_f_corr = distance(f, corrected);
  r.dist_corr_g = distance(corrected, clean);
  r.corr_equals_g = corrected == clean;

  r.two_delta_ok = r.dist_f_corr <= Rational(2) * r.delta_f_before;
  r.contraction_observed = r.delta_f_before == Rational(0) || r.delta_f_after < r.delta_f_before;
  r.quarter_asserted = r.dist_f_g < Rational(1, 4) && q >= 2u * static_cast<std::uint32_t>(d + 2);
  r.quarter_ok = !r.quarter_asserted || r.corr_equals_g;
  const Rational eps = Rational(1, 8) - r.delta_f_before;
  r.field_size_hypothesis = r.delta_f_before > Rational(0) && eps > Rational(0) && Rational(q) * eps * eps > Rational(16);
  r.bounds_ok = r.two_delta_ok && r.quarter_ok && (!r.field_size_hypothesis || r.contraction_observed);
  return r;
}

PlaneSample affine_plane_sample(const FunctionTable& f, const Point& x, const Point& h1, const Point& h2,
                                const Point& h3, int d, FitBackend backend) {
  const std::size_t m = f.arity();
  if (x.size() != m || h1.size() != m || h2.size() != m || h3.size() != m) {
    throw FieldMismatch("plane parameters differ in arity from the table");
  }
  const FieldSpec& F = *f.field();
  const std::uint32_t q = F.q();
  const LineFitter fitter(f.field(), d, backend);

  auto axpy = [&](const Point& base, Elem c, const Point& dir) {
    Point out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = F.add(base[k], F.mul(c, dir[k]));
    return out;
  };

  PlaneSample s;
  s.matrix.resize(static_cast<std::size_t>(q) * q);
  for (std::uint32_t i = 0; i < q; ++i) {
    const Line row{axpy(x, Elem{i}, h1), axpy(h2, Elem{i}, h3)};
    for (std::uint32_t j = 0; j < q; ++j) s.matrix[i * q + j] = f.at(line_point(F, row, Elem{j}));
  }
  for (std::uint32_t i = 0; i < q; ++i) {
    const Line row{axpy(x, Elem{i}, h1), axpy(h2, Elem{i}, h3)};
    s.row_fits.push_back(line_poly(f, row, fitter));
    s.row_deltas.push_back(ratio(q - s.row_fits.back().agreement, q));
  }
  for (std::uint32_t j = 0; j < q; ++j) {
    const Line col{axpy(x, Elem{j}, h2), axpy(h1, Elem{j}, h3)};
    s.col_fits.push_back(line_poly(f, col, fitter));
    s.col_deltas.push_back(ratio(q - s.col_fits.back().agreement, q));
  }
  return s;
}

TestReport plurality_disagreement(const FunctionTable& f, int d, std::uint64_t trials, std::uint64_t seed,
                                  FitBackend backend) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const FieldSpec& F = *f.field();
  const LineFitter fitter(f.field(), d, backend);
  TestReport report;
  report.trials = trials;
  report.seed = seed;
  report.params = params_json(F, f.arity(), d, backend);
  report.rejections = parallel_count(trials, [&](std::uint64_t i) -> std::uint64_t {
    Rng rng(seed, i);
    const Point x = random_point(rng, f.arity(), F.q());
    const Point h1 = random_point(rng, f.arity(), F.q());
    const Point h2 = random_point(rng, f.arity(), F.q());
    const Elem a = line_poly(f, Line{x, h1}, fitter).poly.eval(Elem{0});
    const Elem b = line_poly(f, Line{x, h2}, fitter).poly.eval(Elem{0});
    return a != b ? 1 : 0;
  });
  finalize_monte_carlo(report);
  return report;
}

}  // namespace lowdeg
