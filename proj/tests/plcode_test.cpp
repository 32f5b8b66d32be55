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

#include "lowdeg/plcode.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "lowdeg/errors.hpp"
#include "lowdeg/runtime.hpp"

namespace lowdeg {
namespace {

PLCodeSpec spec_of(std::uint32_t p, std::uint32_t s, std::size_t m, int d) {
  PLCodeSpec spec;
  spec.field = FieldSpec::make(p, s);
  spec.m = m;
  spec.d = d;
  return spec;
}

// Enumerates (y, h1, h2, t1, t2) literally and reads letters by index.
Rational oracle_rejection(const Codeword& word) {
  const PLCodeSpec& spec = word.spec();
  const FieldSpec& F = *spec.field;
  const std::uint32_t q = F.q();
  const std::uint64_t qm = ipow(q, static_cast<std::uint32_t>(spec.m));
  auto start = [&](const Point& y, const Point& h, Elem t) {
    Point x(spec.m);
    for (std::size_t k = 0; k < spec.m; ++k) x[k] = F.sub(y[k], F.mul(t, h[k]));
    return point_index(x, q);
  };
  std::uint64_t rejects = 0, total = 0;
  for (std::uint64_t yi = 0; yi < qm; ++yi) {
    const Point y = point_from_index(yi, spec.m, q);
    for (std::uint64_t a = 0; a < qm; ++a) {
      const Point h1 = point_from_index(a, spec.m, q);
      for (std::uint64_t b = 0; b < qm; ++b) {
        const Point h2 = point_from_index(b, spec.m, q);
        for (std::uint32_t t1 = 0; t1 < q; ++t1) {
          for (std::uint32_t t2 = 0; t2 < q; ++t2) {
            const Elem v1 = word.eval_letter(spec.letter_index(start(y, h1, Elem{t1}), a), Elem{t1});
            const Elem v2 = word.eval_letter(spec.letter_index(start(y, h2, Elem{t2}), b), Elem{t2});
            rejects += v1 != v2;
            ++total;
          }
        }
      }
    }
  }
  return ratio(rejects, total);
}

TEST(PLCodeTest, EncodeExample) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  MultiPoly f(spec.field, 2);
  f.add_term({1, 0}, Elem{1});
  f.add_term({0, 1}, Elem{2});
  const Codeword w = encode(f, spec);
  EXPECT_EQ(w.size(), 625u);
  const std::uint64_t i = spec.letter_index(0, point_index(Point{Elem{1}, Elem{1}}, 5));
  EXPECT_EQ(std::vector<Elem>(w.letter(i).begin(), w.letter(i).end()), (std::vector<Elem>{Elem{0}, Elem{3}}));

  // h = 0 letters are the constant f(x).
  const std::uint64_t x = point_index(Point{Elem{2}, Elem{4}}, 5);
  const UniPoly c = w.letter_poly(spec.letter_index(x, 0));
  EXPECT_LE(c.degree(), 0);
  EXPECT_EQ(c.eval(Elem{3}), Elem{0});  // 2 + 2*4 = 10 = 0

  EXPECT_EQ(encode(MultiPoly(spec.field, 2), spec), Codeword(spec));
}

TEST(PLCodeTest, EncodeRejectsBadMessages) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  MultiPoly high(spec.field, 2);
  high.add_term({1, 1}, Elem{1});
  EXPECT_THROW(encode(high, spec), std::invalid_argument);
  EXPECT_THROW(encode(MultiPoly(spec.field, 3), spec), std::invalid_argument);
  EXPECT_THROW(encode(MultiPoly(spec.field, 2), spec, 100), BudgetExceeded);
  EXPECT_THROW(spec_of(5, 1, 2, 5).validate(), std::invalid_argument);
  EXPECT_THROW(spec_of(5, 1, 0, 1).validate(), std::invalid_argument);
}

TEST(PLCodeTest, CodewordsPassEveryDraw) {
  const PLCodeSpec spec = spec_of(3, 1, 2, 1);
  const auto monos = monomials_up_to(2, 1, 3);
  for (std::uint64_t code = 0; code < 27; ++code) {
    MultiPoly f(spec.field, 2);
    std::uint64_t rest = code;
    for (const auto& e : monos) {
      f.add_term(e, Elem{static_cast<std::uint32_t>(rest % 3)});
      rest /= 3;
    }
    EXPECT_EQ(exact_local_rejection(encode(f, spec)), Rational(0)) << code;
  }
}

TEST(PLCodeTest, ExactRejectionMatchesEnumeration) {
  for (auto spec : {spec_of(3, 1, 2, 1), spec_of(2, 2, 1, 2), spec_of(5, 1, 1, 1)}) {
    Rng rng(1, spec.field->q());
    const Codeword w = encode(random_poly(spec.field, spec.m, spec.d, rng), spec);
    for (const Rational& frac : {Rational(1, 10), Rational(1, 3), Rational(1)}) {
      const Codeword bad = corrupt_codeword(w, frac, 5);
      EXPECT_EQ(exact_local_rejection(bad), oracle_rejection(bad));
    }
  }
}

TEST(PLCodeTest, DecodeRoundTrip) {
  for (auto spec : {spec_of(5, 1, 2, 1), spec_of(7, 1, 2, 2), spec_of(2, 2, 2, 1)}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed, 9);
      const MultiPoly f = random_poly(spec.field, spec.m, spec.d, rng);
      ASSERT_EQ(decode(encode(f, spec)), f) << seed;
    }
  }
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  Rng rng(10);
  const MultiPoly f = random_poly(spec.field, 2, 1, rng);
  EXPECT_EQ(decode(corrupt_codeword(encode(f, spec), Rational(1, 20), 3)), f);
  EXPECT_THROW(decode(corrupt_codeword(encode(f, spec), Rational(1), 3)), DecodeFailure);
}

TEST(PLCodeTest, RejectionGrowsWithCorruption) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  Rng rng(11);
  const Codeword w = encode(random_poly(spec.field, 2, 1, rng), spec);
  Rational last(0);
  EXPECT_EQ(exact_local_rejection(w), last);
  for (const Rational& frac : {Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(2, 5), Rational(1)}) {
    const Rational r = exact_local_rejection(corrupt_codeword(w, frac, 0));
    EXPECT_GT(r, last);
    last = r;
  }
  // Independent random letters agree with probability about 1/q.
  EXPECT_NEAR(to_double(last), 0.8, 0.03);
}

TEST(PLCodeTest, MonteCarloMatchesExact) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  Rng rng(12);
  const Codeword w = corrupt_codeword(encode(random_poly(spec.field, 2, 1, rng), spec), Rational(1, 10), 1);
  const Rational exact = exact_local_rejection(w);
  const TestReport r = local_test(w, 20000, 4);
  EXPECT_EQ(r.trials, 20000u);
  EXPECT_TRUE(r.within_3sigma(exact)) << r.estimate << " vs " << to_double(exact);
  EXPECT_EQ(local_test(w, 500, 4).rejections, local_test(w, 500, 4).rejections);
  EXPECT_THROW(local_test(w, 0, 4), std::invalid_argument);
}

TEST(PLCodeTest, SampleLinesMeetAtY) {
  const PLCodeSpec spec = spec_of(7, 1, 2, 2);
  const FieldSpec& F = *spec.field;
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const LocalTestSample s = sample_local_test(spec, rng);
    const std::uint64_t qm = 49;
    for (auto [letter, h, t] : {std::tuple{s.letter1, s.h1, s.t1}, std::tuple{s.letter2, s.h2, s.t2}}) {
      EXPECT_EQ(letter % qm, point_index(h, 7));
      const Point x = point_from_index(letter / qm, 2, 7);
      for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(F.add(x[k], F.mul(t, h[k])), s.y[k]);
    }
  }
}

TEST(PLCodeTest, CorruptionCountsAreExact) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  const Codeword w(spec);
  for (const Rational& frac : {Rational(0), Rational(1, 20), Rational(1, 10), Rational(1, 3), Rational(1)}) {
    EXPECT_EQ(letter_distance(w, corrupt_codeword(w, frac, 2)), round_count(frac, w.size()));
  }
}

TEST(PLCodeTest, DistinctCodewordsAreFar) {
  const PLCodeSpec spec = spec_of(7, 1, 2, 2);
  const Rational bound = Rational(1) - Rational(2, 7);
  int pairs = 0;
  for (std::uint64_t seed = 0; pairs < 100; ++seed) {
    Rng rng(seed, 14);
    const MultiPoly f = random_poly(spec.field, 2, 2, rng);
    const MultiPoly g = random_poly(spec.field, 2, 2, rng);
    if (f == g) continue;
    ++pairs;
    const Codeword a = encode(f, spec), b = encode(g, spec);
    const Rational dist = ratio(letter_distance(a, b), a.size());
    EXPECT_GE(dist, bound);
    EXPECT_LE(Rational(1) - dist, Rational(2 * 2 + 1, 7));
  }

  const PLCodeSpec five = spec_of(5, 1, 2, 1);
  MultiPoly x1(five.field, 2), x2(five.field, 2);
  x1.add_term({1, 0}, Elem{1});
  x2.add_term({0, 1}, Elem{1});
  const Rational dist = ratio(letter_distance(encode(x1, five), encode(x2, five)), 625);
  EXPECT_GE(dist, Rational(1) - Rational(2, 5) - Rational(1, 5));
  EXPECT_EQ(dist, Rational(24, 25));
}

TEST(PLCodeTest, RandomWordRejectsAtOneMinusOneOverQ) {
  const PLCodeSpec spec = spec_of(5, 1, 2, 1);
  const Codeword w = corrupt_codeword(Codeword(spec), Rational(1), 21);
  const TestReport r = local_test(w, 10'000, 22);
  EXPECT_TRUE(r.within_3sigma(Rational(4, 5))) << r.estimate;
  EXPECT_TRUE(r.within_3sigma(exact_local_rejection(w))) << r.estimate;
}

TEST(PLCodeTest, Params) {
  const CodeParams p = code_params(spec_of(5, 1, 2, 1));
  EXPECT_EQ(p.k_elems, "3");
  EXPECT_EQ(p.k_letters, "3/2");
  EXPECT_EQ(p.n, "625");
  EXPECT_EQ(p.alphabet_bits, 6u);
  EXPECT_EQ(p.distance_bound, Rational(4, 5));
  ASSERT_TRUE(p.minimum_distance.has_value());
  EXPECT_EQ(*p.minimum_distance, Rational(24, 25));
  EXPECT_GE(*p.minimum_distance, p.distance_bound);

  const CodeParams line = code_params(spec_of(5, 1, 1, 1));
  EXPECT_EQ(line.k_elems, "2");
  EXPECT_EQ(line.n, "25");

  const CodeParams big = code_params(spec_of(2, 3, 10, 7));
  EXPECT_EQ(big.k_elems, "19448");
  EXPECT_EQ(big.n, "1152921504606846976");
  EXPECT_FALSE(big.minimum_distance.has_value());
}

TEST(PLCodeTest, CodewordIoRoundTrip) {
  const PLCodeSpec spec = spec_of(3, 2, 1, 2);
  Rng rng(15);
  const Codeword w = corrupt_codeword(encode(random_poly(spec.field, 1, 2, rng), spec), Rational(1, 4), 6);
  std::stringstream buf;
  write_codeword(buf, w);
  EXPECT_EQ(read_codeword(buf), w);

  std::istringstream truncated("5 1 2 1\n0 1\n");
  EXPECT_THROW(read_codeword(truncated), std::invalid_argument);
  std::istringstream junk("5 1 x 1\n");
  EXPECT_THROW(read_codeword(junk), std::invalid_argument);
}

}  // namespace
}  // namespace lowdeg
