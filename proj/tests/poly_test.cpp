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

#include "lowdeg/poly.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>

namespace lowdeg {
namespace {

std::vector<Elem> E(std::initializer_list<std::uint32_t> v) {
  std::vector<Elem> out;
  for (auto x : v) out.push_back(Elem{x});
  return out;
}

TEST(UniPolyTest, Evaluation) {
  auto F5 = FieldSpec::make(5, 1);
  EXPECT_EQ(UniPoly(F5, E({1, 1})).eval(Elem{4}), Elem{0});
  EXPECT_EQ(UniPoly(F5).eval(Elem{3}), Elem{0});
  EXPECT_EQ(UniPoly(F5).degree(), kNegInfDegree);
  auto F4 = FieldSpec::make(2, 2);
  EXPECT_EQ(UniPoly(F4, E({1, 1, 1})).eval(Elem{2}), Elem{0});
  EXPECT_EQ(UniPoly(F5, E({2, 0, 0})).degree(), 0);
  EXPECT_EQ(uni_eval(UniPoly(F5, E({1, 1})), FieldElement(F5, Elem{2})).canonical_index(), 3u);
}

TEST(UniPolyTest, Interpolation) {
  auto F5 = FieldSpec::make(5, 1);
  EXPECT_EQ(interpolate_uni(F5, E({0, 1, 2, 3, 4}), E({1, 2, 3, 4, 0})), UniPoly(F5, E({1, 1})));
  EXPECT_EQ(interpolate_uni(F5, E({0}), E({3})), UniPoly(F5, E({3})));
  EXPECT_EQ(interpolate_uni(F5, E({0, 1, 2}), E({0, 1, 4})), UniPoly(F5, E({0, 0, 1})));
  EXPECT_THROW(interpolate_uni(F5, E({1, 1}), E({0, 1})), std::invalid_argument);
}

TEST(UniPolyTest, InterpolationRoundTripsEverywhere) {
  for (auto F : {FieldSpec::make(7, 1), FieldSpec::make(3, 2), FieldSpec::make(2, 3)}) {
    Rng rng(11, F->q());
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Elem> c(1 + rng.below(F->q()));
      for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng.below(F->q()))};
      const UniPoly p(F, c);
      const auto pts = F->elements();
      std::vector<Elem> vals;
      for (Elem t : pts) vals.push_back(p.eval(t));
      EXPECT_EQ(interpolate_uni(F, pts, vals), p);
    }
  }
}

TEST(UniPolyTest, ShiftAndDivision) {
  auto F = FieldSpec::make(3, 2);
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Elem> ca(6);
    std::vector<Elem> cb(3);
    for (auto& e : ca) e = Elem{static_cast<std::uint32_t>(rng.below(9))};
    for (auto& e : cb) e = Elem{static_cast<std::uint32_t>(rng.below(9))};
    const UniPoly a(F, ca);
    const UniPoly b(F, cb);
    const Elem shift{static_cast<std::uint32_t>(rng.below(9))};
    const UniPoly s = shift_uni(a, shift);
    for (Elem t : F->elements()) EXPECT_EQ(s.eval(t), a.eval(F->add(t, shift)));
    if (b.is_zero()) continue;
    const auto [quot, rem] = uni_divmod(a, b);
    EXPECT_EQ(uni_add(uni_mul(quot, b), rem), a);
    EXPECT_LT(rem.degree(), b.degree());
  }
  EXPECT_THROW(uni_divmod(UniPoly(F, E({1})), UniPoly(F)), DivisionByZero);
}

TEST(MultiPolyTest, EvaluationAndDegrees) {
  auto F5 = FieldSpec::make(5, 1);
  MultiPoly f(F5, 2);
  f.add_term({1, 0}, Elem{1});
  f.add_term({0, 1}, Elem{2});
  EXPECT_EQ(f.eval(E({1, 1})), Elem{3});
  MultiPoly c(F5, 2);
  c.add_term({0, 0}, F5->from_int(7));
  EXPECT_EQ(c.eval(E({4, 2})), Elem{2});

  auto F4 = FieldSpec::make(2, 2);
  MultiPoly g(F4, 2);
  g.add_term({2, 2}, Elem{1});
  EXPECT_EQ(g.eval(E({2, 2})), Elem{2});
  EXPECT_EQ(total_degree(g), 4);
  EXPECT_EQ(total_degree(MultiPoly(F4, 2)), kNegInfDegree);

  MultiPoly h(F5, 2);
  h.add_term({2, 1}, Elem{1});
  EXPECT_EQ(max_degree(h), 2);
  MultiPoly k(F5, 2);
  k.add_term({1, 0}, Elem{1});
  k.add_term({0, 3}, Elem{1});
  EXPECT_EQ(max_degree(k), 3);
  EXPECT_THROW(f.eval(E({1})), FieldMismatch);
}

TEST(MultiPolyTest, LikeTermsMergeAndCancel) {
  auto F5 = FieldSpec::make(5, 1);
  MultiPoly f(F5, 1);
  f.add_term({2}, Elem{3});
  f.add_term({2}, Elem{2});
  EXPECT_TRUE(f.is_zero());
}

TEST(MultiPolyTest, ReducePreservesTheFunction) {
  auto F5 = FieldSpec::make(5, 1);
  MultiPoly x5(F5, 1);
  x5.add_term({5}, Elem{1});
  MultiPoly x1(F5, 1);
  x1.add_term({1}, Elem{1});
  EXPECT_EQ(reduce(x5), x1);
  MultiPoly x4(F5, 1);
  x4.add_term({4}, Elem{1});
  EXPECT_EQ(reduce(x4), x4);

  auto F4 = FieldSpec::make(2, 2);
  MultiPoly g(F4, 2);
  g.add_term({4, 4}, Elem{1});
  g.add_term({7, 0}, Elem{3});
  g.add_term({0, 0}, Elem{2});
  const MultiPoly r = reduce(g);
  EXPECT_LE(max_degree(r), 3);
  EXPECT_EQ(FunctionTable::of(r), FunctionTable::of(g));
}

TEST(FunctionTableTest, IndexingAndDistance) {
  auto F5 = FieldSpec::make(5, 1);
  const Point p = E({3, 1});
  EXPECT_EQ(point_index(p, 5), 8u);
  EXPECT_EQ(point_from_index(8, 2, 5), p);

  MultiPoly f(F5, 2);
  f.add_term({1, 0}, Elem{1});
  f.add_term({0, 1}, Elem{2});
  const FunctionTable t = FunctionTable::of(f);
  EXPECT_EQ(t.at(p), Elem{0});
  EXPECT_EQ(distance(t, t), Rational(0));
  FunctionTable u = t;
  u.set(7, F5->add(u.at(7), Elem{1}));
  EXPECT_EQ(distance(t, u), Rational(1, 25));
  EXPECT_EQ(hamming(t, u), 1u);
  FunctionTable v = t;
  for (std::uint64_t i = 0; i < v.size(); ++i) v.set(i, F5->add(v.at(i), Elem{1}));
  EXPECT_EQ(distance(t, v), Rational(1));
  EXPECT_THROW(FunctionTable(F5, 2, E({1, 2})), FieldMismatch);
}

TEST(InterpolateTableTest, Examples) {
  auto F5 = FieldSpec::make(5, 1);
  MultiPoly f(F5, 2);
  f.add_term({1, 0}, Elem{1});
  f.add_term({0, 1}, Elem{2});
  const MultiPoly back = interpolate_table(FunctionTable::of(f));
  EXPECT_EQ(back, f);
  EXPECT_EQ(back.terms().size(), 2u);
  EXPECT_TRUE(interpolate_table(FunctionTable(F5, 3)).is_zero());

  auto F4 = FieldSpec::make(2, 2);
  MultiPoly g(F4, 2);
  g.add_term({2, 2}, Elem{1});
  EXPECT_EQ(total_degree(interpolate_table(FunctionTable::of(g))), 4);
}

// Oracle: every reduced polynomial is recovered from its own table.
TEST(InterpolateTableTest, RoundTripsReducedPolynomials) {
  for (auto F : {FieldSpec::make(3, 1), FieldSpec::make(2, 2), FieldSpec::make(5, 1), FieldSpec::make(3, 2)}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      Rng rng(17, F->q() * 10 + m);
      for (int trial = 0; trial < 10; ++trial) {
        const MultiPoly g = random_poly(F, m, static_cast<int>(m * (F->q() - 1)), rng);
        EXPECT_EQ(interpolate_table(FunctionTable::of(g)), g);
      }
    }
  }
}

TEST(RandomPolyTest, RespectsDegreeAndMonomialCount) {
  auto F = FieldSpec::make(7, 1);
  for (std::size_t m = 1; m <= 3; ++m) {
    for (int d = 0; d <= 4; ++d) {
      const auto monos = monomials_up_to(m, d, F->q());
      EXPECT_EQ(monos.size(), static_cast<std::size_t>(boost::math::binomial_coefficient<double>(
                                  static_cast<unsigned>(m + d), static_cast<unsigned>(d))));
      EXPECT_TRUE(std::is_sorted(monos.begin(), monos.end()));
      Rng rng(3, m * 10 + d);
      EXPECT_LE(total_degree(random_poly(F, m, d, rng)), d);
    }
  }
  // Individual exponents stay below q.
  EXPECT_EQ(monomials_up_to(1, 5, 3).size(), 3u);
}

}  // namespace
}  // namespace lowdeg
