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

#include <gtest/gtest.h>

#include "lowdeg/runtime.hpp"

namespace lowdeg {
namespace {

FunctionTable noisy_table(const FieldPtr& F, std::size_t m, int d, const Rational& eta, std::uint64_t seed) {
  Rng rng(seed, 1);
  return apply_corruption(FunctionTable::of(random_poly(F, m, d, rng)), CorruptionSpec::random_points(eta, seed));
}

// Literal statistics from one line_poly call per (x, h).
struct Literal {
  Rational delta{0};
  Rational delta_f{0};
  Rational plurality{0};
  Rational vote_loss{0};
  FunctionTable corr;
};

Literal literal_stats(const FunctionTable& f, int d) {
  const FieldSpec& F = *f.field();
  const std::uint32_t q = F.q();
  const std::size_t m = f.arity();
  const std::uint64_t n = f.size();
  std::vector<Elem> at0(n * n);
  std::uint64_t miss_t = 0;
  std::uint64_t miss_0 = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t h = 0; h < n; ++h) {
      const Line l{point_from_index(x, m, q), point_from_index(h, m, q)};
      const LineFit fit = line_poly(f, l, d, FitBackend::Exact);
      at0[x * n + h] = fit.poly.eval(Elem{0});
      miss_0 += at0[x * n + h] != f.at(x);
      for (std::uint32_t t = 0; t < q; ++t) miss_t += fit.poly.eval(Elem{t}) != f.at(line_point(F, l, Elem{t}));
    }
  }
  Literal out{ratio(miss_t, n * n * q), ratio(miss_0, n * n), Rational(0), Rational(0), FunctionTable(f.field(), m)};
  std::uint64_t disagree = 0;
  std::uint64_t lost = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    std::vector<std::uint64_t> votes(q, 0);
    for (std::uint64_t h = 0; h < n; ++h) ++votes[at0[x * n + h].idx];
    std::uint32_t best = 0;
    for (std::uint32_t v = 1; v < q; ++v) {
      if (votes[v] > votes[best]) best = v;
    }
    out.corr.set(x, Elem{best});
    for (std::uint64_t h1 = 0; h1 < n; ++h1) {
      lost += at0[x * n + h1] != Elem{best};
      for (std::uint64_t h2 = 0; h2 < n; ++h2) disagree += at0[x * n + h1] != at0[x * n + h2];
    }
  }
  out.plurality = ratio(disagree, n * n * n);
  out.vote_loss = ratio(lost, n * n);
  return out;
}

TEST(TesterTest, SurveyStatisticsMatchLiteralEnumeration) {
  for (auto F : {FieldSpec::make(5, 1), FieldSpec::make(2, 2), FieldSpec::make(7, 1)}) {
    for (int d = 1; d <= 2; ++d) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const FunctionTable f = noisy_table(F, 2, d, Rational(1, 5), seed);
        const Literal want = literal_stats(f, d);
        const LineSurvey s = survey_lines(f, d, FitBackend::Exact, 1'000'000);
        EXPECT_EQ(exact_delta(s), want.delta);
        EXPECT_EQ(delta_f(s, f), want.delta_f);
        EXPECT_EQ(corr(s, f), want.corr);
        EXPECT_EQ(exact_plurality_disagreement(s), want.plurality);
        EXPECT_EQ(corr_vote_loss(s), want.vote_loss);
      }
    }
  }
}

TEST(TesterTest, UnivariateSingleError) {
  auto F = FieldSpec::make(5, 1);
  FunctionTable f(F, 1, {Elem{1}, Elem{2}, Elem{3}, Elem{4}, Elem{1}});
  const Literal want = literal_stats(f, 1);
  EXPECT_EQ(exact_delta(f, 1), want.delta);
  EXPECT_GT(exact_delta(f, 1), Rational(0));
  EXPECT_EQ(corr(f, 1), FunctionTable(F, 1, {Elem{1}, Elem{2}, Elem{3}, Elem{4}, Elem{0}}));
}

TEST(TesterTest, CleanTablesAreFixedPoints) {
  for (auto F : {FieldSpec::make(5, 1), FieldSpec::make(3, 2), FieldSpec::make(17, 1)}) {
    for (int d = 0; d <= 3 && d < static_cast<int>(F->q()); ++d) {
      Rng rng(2, d);
      const FunctionTable g = FunctionTable::of(random_poly(F, 2, d, rng));
      const LineSurvey s = survey_lines(g, d, FitBackend::Exact, 1'000'000);
      EXPECT_EQ(exact_delta(s), Rational(0));
      EXPECT_EQ(delta_f(s, g), Rational(0));
      EXPECT_EQ(corr(s, g), g);
      EXPECT_EQ(estimate_delta(g, d, 500, 3).rejections, 0u);
    }
  }
}

TEST(TesterTest, FarFromLowDegreeHasPositiveDelta) {
  auto F = FieldSpec::make(5, 1);
  MultiPoly g(F, 2);
  g.add_term({2, 1}, Elem{1});
  EXPECT_GT(exact_delta(FunctionTable::of(g), 1), Rational(0));
}

TEST(TesterTest, DeltaBoundsOnRandomInstances) {
  for (auto F : {FieldSpec::make(5, 1), FieldSpec::make(7, 1), FieldSpec::make(2, 3), FieldSpec::make(3, 2)}) {
    for (int d = 1; d <= 2; ++d) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const FunctionTable f = noisy_table(F, 2, d, Rational(static_cast<std::int64_t>(seed), 10), seed);
        const LineSurvey s = survey_lines(f, d, FitBackend::Exact, 1'000'000);
        const Rational df = delta_f(s, f);
        EXPECT_GE(exact_delta(s), df);
        EXPECT_LE(distance(f, corr(s, f)), Rational(2) * df);
        EXPECT_GE(exact_plurality_disagreement(s), corr_vote_loss(s));
      }
    }
  }
}

TEST(TesterTest, SinglePointCorruptionIsCorrected) {
  auto F = FieldSpec::make(7, 1);
  Rng rng(5);
  const MultiPoly g = random_poly(F, 2, 2, rng);
  const FunctionTable clean = FunctionTable::of(g);
  const FunctionTable f = apply_corruption(clean, CorruptionSpec::single_point(10, F->add(clean.at(10), Elem{1})));
  EXPECT_EQ(hamming(f, clean), 1u);
  EXPECT_EQ(corr(f, 2), clean);
  const LineSurvey s = survey_lines(f, 2, FitBackend::Exact, 1'000'000);
  EXPECT_EQ(exact_plurality_disagreement(s), literal_stats(f, 2).plurality);
}

TEST(CorruptionTest, ChangesExactlyTheRequestedCount) {
  auto F = FieldSpec::make(5, 1);
  const FunctionTable g(F, 2);
  for (auto [num, den] : {std::pair{0, 1}, {1, 25}, {1, 10}, {1, 2}, {1, 1}}) {
    const Rational eta(num, den);
    const FunctionTable f = apply_corruption(g, CorruptionSpec::random_points(eta, 4));
    EXPECT_EQ(hamming(f, g), round_count(eta, 25));
    EXPECT_EQ(f, apply_corruption(g, CorruptionSpec::random_points(eta, 4)));
  }
  EXPECT_EQ(round_count(Rational(1, 2), 1), 1u);
  EXPECT_EQ(round_count(Rational(1, 10), 25), 3u);
  EXPECT_THROW(apply_corruption(g, CorruptionSpec::random_points(Rational(3, 2), 0)), std::invalid_argument);
  const FunctionTable a = apply_corruption(g, CorruptionSpec::adversarial({{3, Elem{4}}, {7, Elem{1}}}));
  EXPECT_EQ(a.at(3), Elem{4});
  EXPECT_EQ(hamming(a, g), 2u);
}

TEST(LinePointTestTest, OracleBehaviour) {
  auto F = FieldSpec::make(5, 1);
  MultiPoly one(F, 2);
  one.add_term({0, 0}, Elem{1});
  const FunctionTable f = FunctionTable::of(one);
  const LineOracle zero = [&](const Line&) { return UniPoly(F); };
  const LineOracle truth = [&](const Line&) { return UniPoly(F, {Elem{1}}); };
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    EXPECT_FALSE(line_point_test_once(f, zero, rng));
    EXPECT_TRUE(line_point_test_once(f, truth, rng));
  }
}

// With the fitted oracle, the rejection probability is exact_delta.
TEST(EstimateDeltaTest, CalibratedAgainstExact) {
  auto F = FieldSpec::make(7, 1);
  const FunctionTable f = noisy_table(F, 2, 2, Rational(1, 10), 6);
  const Rational exact = exact_delta(f, 2);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) inside += estimate_delta(f, 2, 4000, seed).within_3sigma(exact);
  EXPECT_GE(inside, 28);
  EXPECT_THROW(estimate_delta(f, 2, 0, 1), std::invalid_argument);
}

TEST(EstimateDeltaTest, DeterministicAcrossWorkerCounts) {
  auto F = FieldSpec::make(5, 1);
  const FunctionTable f = noisy_table(F, 2, 1, Rational(1, 5), 2);
  set_worker_count(1);
  const TestReport a = estimate_delta(f, 1, 3000, 42);
  set_worker_count(6);
  const TestReport b = estimate_delta(f, 1, 3000, 42);
  set_worker_count(0);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(ContractionTest, Examples) {
  auto F = FieldSpec::make(17, 1);
  Rng rng(3);
  const MultiPoly g = random_poly(F, 2, 2, rng);
  const ContractionReport none = contraction_experiment(g, CorruptionSpec::random_points(Rational(0), 1), 2);
  EXPECT_EQ(none.delta_f_before, Rational(0));
  EXPECT_TRUE(none.corr_equals_g);
  EXPECT_TRUE(none.bounds_ok);

  const ContractionReport some = contraction_experiment(g, CorruptionSpec::random_points(Rational(1, 20), 1), 2);
  EXPECT_TRUE(some.corr_equals_g);
  EXPECT_EQ(some.delta_f_after, Rational(0));
  EXPECT_LT(some.delta_f_after, some.delta_f_before);
  EXPECT_FALSE(some.field_size_hypothesis);

  const ContractionReport far = contraction_experiment(g, CorruptionSpec::random_points(Rational(3, 10), 1), 2);
  EXPECT_FALSE(far.quarter_asserted);
  EXPECT_THROW(contraction_experiment(g, CorruptionSpec::random_points(Rational(0), 1), 1), std::invalid_argument);
}

TEST(PlaneTest, CleanPlaneIsConsistent) {
  auto F = FieldSpec::make(7, 1);
  Rng rng(12);
  const FunctionTable g = FunctionTable::of(random_poly(F, 2, 2, rng));
  auto draw = [&] {
    Point p(2);
    for (auto& e : p) e = Elem{static_cast<std::uint32_t>(rng.below(7))};
    return p;
  };
  const PlaneSample s = affine_plane_sample(g, draw(), draw(), draw(), draw(), 2);
  for (std::uint32_t i = 0; i < 7; ++i) {
    EXPECT_EQ(s.row_deltas[i], Rational(0));
    EXPECT_EQ(s.col_deltas[i], Rational(0));
    for (std::uint32_t j = 0; j < 7; ++j) {
      EXPECT_EQ(s.row_fits[i].poly.eval(Elem{j}), s.matrix[i * 7 + j]);
      EXPECT_EQ(s.col_fits[j].poly.eval(Elem{i}), s.matrix[i * 7 + j]);
    }
  }
}

TEST(PluralityDisagreementTest, MonteCarloMatchesExact) {
  auto F = FieldSpec::make(5, 1);
  const FunctionTable clean(F, 2);
  EXPECT_EQ(plurality_disagreement(clean, 1, 1000, 1).rejections, 0u);
  const FunctionTable f = noisy_table(F, 2, 1, Rational(1, 5), 9);
  const Rational exact = exact_plurality_disagreement(survey_lines(f, 1, FitBackend::Exact, 1'000'000));
  EXPECT_TRUE(plurality_disagreement(f, 1, 20000, 5).within_3sigma(exact));
}

TEST(HypothesisNoteTest, ReportsFieldSizeCondition) {
  const auto small = hypothesis_note(Rational(1, 20), 17, 2);
  EXPECT_FALSE(small["field_size_hypothesis"].get<bool>());
  const auto big = hypothesis_note(Rational(1, 100), 1'000'003, 2);
  EXPECT_TRUE(big["field_size_hypothesis"].get<bool>());
}

}  // namespace
}  // namespace lowdeg
