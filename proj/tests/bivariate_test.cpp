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

#include "lowdeg/bivariate.hpp"

#include <gtest/gtest.h>

namespace lowdeg {
namespace {

std::vector<std::uint32_t> first_rows(std::uint32_t k) {
  std::vector<std::uint32_t> out(k);
  for (std::uint32_t i = 0; i < k; ++i) out[i] = i;
  return out;
}

// Literal cell count.
Rational oracle_disagreement(const RowColFamily& fam) {
  const std::uint32_t q = fam.field->q();
  std::uint64_t bad = 0;
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) {
      const Elem rij = interpolate_uni(fam.field, fam.field->elements(), [&] {
                         std::vector<Elem> v;
                         for (Elem t : fam.field->elements()) v.push_back(fam.rows[i].eval(t));
                         return v;
                       }()).eval(Elem{j});
      bad += rij != fam.cols[j].eval(Elem{i});
    }
  }
  return ratio(bad, static_cast<std::uint64_t>(q) * q);
}

TEST(BivariatePolyTest, SectionsMatchEvaluation) {
  auto F = FieldSpec::make(7, 1);
  Rng rng(1);
  const BivariatePoly Q = random_bivariate(F, 3, rng);
  for (Elem i : F->elements()) {
    for (Elem j : F->elements()) {
      EXPECT_EQ(Q.row(i).eval(j), Q.eval(i, j));
      EXPECT_EQ(Q.col(j).eval(i), Q.eval(i, j));
    }
  }
}

TEST(DisagreementTest, Examples) {
  auto F = FieldSpec::make(7, 1);
  Rng rng(2);
  const BivariatePoly Q = random_bivariate(F, 2, rng);
  EXPECT_EQ(rowcol_disagreement(family_of(Q)), Rational(0));

  RowColFamily opposite = family_of(Q);
  for (auto& r : opposite.rows) r = UniPoly(F);
  for (auto& c : opposite.cols) c = UniPoly(F, {Elem{1}});
  EXPECT_EQ(rowcol_disagreement(opposite), Rational(1));

  for (int trial = 0; trial < 5; ++trial) {
    const RowColFamily fam = corrupt_family(Q, {static_cast<std::uint32_t>(trial)}, {}, rng);
    const Rational dis = rowcol_disagreement(fam);
    EXPECT_EQ(dis, oracle_disagreement(fam));
    // A replaced row still meets Q's row in at most d points.
    EXPECT_GE(dis, Rational(7 - 2, 49));
  }
}

TEST(FitBivariateTest, CleanFamilyIsExact) {
  for (auto F : {FieldSpec::make(17, 1), FieldSpec::make(5, 2), FieldSpec::make(2, 5)}) {
    for (int d = 0; d <= 4; ++d) {
      Rng rng(3, F->q() + d);
      const BivariatePoly Q = random_bivariate(F, d, rng);
      const BivariateFit fit = fit_bivariate(family_of(Q));
      EXPECT_EQ(fit.poly, Q);
      EXPECT_EQ(fit.x, Rational(0));
      EXPECT_EQ(fit.y, Rational(0));
      EXPECT_EQ(fit.subsets_examined, 1u);
    }
  }
}

TEST(FitBivariateTest, RecoversFromAnEighthOfRowsReplaced) {
  for (auto F : {FieldSpec::make(17, 1), FieldSpec::make(5, 2)}) {
    const std::uint32_t q = F->q();
    for (int d = 1; d <= 3; ++d) {
      Rng rng(4, q * 8 + d);
      const BivariatePoly Q = random_bivariate(F, d, rng);
      // Leading rows are the hardest case for the subset order.
      const RowColFamily fam = corrupt_family(Q, first_rows(q / 8), {}, rng);
      const BivariateFit fit = fit_bivariate(fam);
      EXPECT_EQ(fit.poly, Q);
      EXPECT_EQ(fit.x, Rational(q / 8, q));
      EXPECT_EQ(fit.y, Rational(0));
    }
  }
}

TEST(FitBivariateTest, RejectsSmallFields) {
  auto F = FieldSpec::make(5, 1);
  Rng rng(5);
  EXPECT_THROW(fit_bivariate(family_of(random_bivariate(F, 2, rng))), std::invalid_argument);
  EXPECT_NO_THROW(fit_bivariate(family_of(random_bivariate(F, 1, rng))));
}

TEST(FitBivariateTest, ScoreCandidateAgreesWithFit) {
  auto F = FieldSpec::make(17, 1);
  Rng rng(6);
  const BivariatePoly Q = random_bivariate(F, 2, rng);
  const RowColFamily fam = corrupt_family(Q, {3, 9}, {1}, rng);
  const BivariateFit fit = fit_bivariate(fam);
  const BivariateFit score = score_candidate(fam, Q);
  EXPECT_EQ(fit.poly, Q);
  EXPECT_EQ(score.bad_rows, 2u);
  EXPECT_EQ(score.bad_cols, 1u);
  EXPECT_EQ(fit.bad_rows + fit.bad_cols, 3u);
}

TEST(StrengthenTest, Examples) {
  auto F = FieldSpec::make(17, 1);
  Rng rng(7);
  const BivariatePoly Q = random_bivariate(F, 2, rng);
  const StrengthenReport clean = strengthen_check(family_of(Q), Rational(2, 17));
  EXPECT_TRUE(clean.hypothesis_met);
  EXPECT_TRUE(clean.ok());

  const RowColFamily two = corrupt_family(Q, {4, 11}, {}, rng);
  const StrengthenReport r = strengthen_check(two, Rational(2, 17));
  EXPECT_TRUE(r.hypothesis_met);
  ASSERT_TRUE(r.fit.has_value());
  EXPECT_EQ(r.fit->x, Rational(2, 17));
  EXPECT_EQ(r.fit->y, Rational(0));
  EXPECT_LE(r.disagreement, Rational(2 * 17, 289));
  EXPECT_TRUE(r.ok());

  RowColFamily noisy = family_of(Q);
  for (std::uint32_t i = 0; i < 17; i += 2) noisy.rows[i] = UniPoly(F, {Elem{i}, Elem{1}});
  const StrengthenReport far = strengthen_check(noisy, Rational(2, 17));
  EXPECT_FALSE(far.hypothesis_met);
  EXPECT_TRUE(far.conclusion_ok);

  EXPECT_THROW(strengthen_check(family_of(Q), Rational(1, 17)), std::invalid_argument);
}

// Random corruptions kept under the disagreement hypothesis.
TEST(StrengthenTest, GeneratedFamiliesMeetTheConclusion) {
  int checked = 0;
  for (std::uint32_t q : {17u, 25u, 32u}) {
    const FieldPtr F = q == 17 ? FieldSpec::make(17, 1) : q == 25 ? FieldSpec::make(5, 2) : FieldSpec::make(2, 5);
    for (int d = 0; d <= 4; ++d) {
      const Rational eps(d, q);
      for (std::uint64_t i = 0; i < 40; ++i) {
        Rng rng(i, q * 8 + d);
        const BivariatePoly Q = random_bivariate(F, d, rng);
        std::vector<std::uint32_t> rows, cols;
        for (std::uint32_t k = 0; k < q; ++k) {
          const auto u = rng.below(16);
          if (u == 0) rows.push_back(k);
          if (u == 1) cols.push_back(k);
        }
        RowColFamily fam = corrupt_family(Q, rows, cols, rng);
        while (rowcol_disagreement(fam) > Rational(1, 4) - eps) {
          (rows.size() >= cols.size() ? rows : cols).pop_back();
          fam = corrupt_family(Q, rows, cols, rng);
        }
        const StrengthenReport r = strengthen_check(fam, eps);
        ASSERT_TRUE(r.hypothesis_met);
        ASSERT_TRUE(r.fit.has_value());
        EXPECT_LE(r.fit->x, Rational(1, 4));
        EXPECT_LE(r.fit->y, Rational(1, 4));
        EXPECT_TRUE(r.chain_ok);
        EXPECT_EQ(fit_bivariate(fam).poly, r.fit->poly);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 600);
}

TEST(RowColFamilyTest, JsonRoundTripAndValidation) {
  auto F = FieldSpec::make(7, 1);
  Rng rng(8);
  const RowColFamily fam = corrupt_family(random_bivariate(F, 2, rng), {1}, {2}, rng);
  const RowColFamily back = RowColFamily::from_json(F, 2, fam.to_json());
  EXPECT_EQ(back.rows, fam.rows);
  EXPECT_EQ(back.cols, fam.cols);

  RowColFamily short_fam = fam;
  short_fam.rows.pop_back();
  EXPECT_THROW(short_fam.validate(), std::invalid_argument);
  RowColFamily high = fam;
  high.rows[0] = UniPoly(F, {Elem{0}, Elem{0}, Elem{0}, Elem{1}});
  EXPECT_THROW(high.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace lowdeg
