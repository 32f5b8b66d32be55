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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "lowdeg/lines.hpp"

namespace lowdeg {

// Executable checks around the line characterization of total degree: a
// function whose restriction to every line is a degree-<=d function has total
// degree <= d whenever q - q/p - 1 >= d, and not necessarily otherwise.

/// Decides "values agree with some degree-<=d polynomial at every t" using
/// precomputed Lagrange weights on the nodes 0..d.
class DegreeChecker {
 public:
  DegreeChecker(FieldPtr field, int d);

  bool low_degree(std::span<const Elem> values) const;

 private:
  FieldPtr field_;
  int d_;
  std::vector<Elem> weights_;  // weights_[t * (d+1) + i]: basis i at node t
};

struct LineWitness {
  Line line;
  Elem t;
};

struct LineTestResult {
  bool passes = false;
  std::optional<LineWitness> witness;
};

/// True iff every line restriction of g is a degree-<=d function. On failure
/// the witness is the first failing line in (h, x) order and the first t
/// where the best fit misses.
LineTestResult passes_exact_line_test(const FunctionTable& g, int d, std::uint64_t budget = 0);

/// q - q/p - 1 >= d.
bool characterization_hypothesis(const FieldSpec& field, int d);

struct CharVerdict {
  bool passes_line_test = false;
  std::optional<LineWitness> witness;
  int total_deg = kNegInfDegree;
  bool hypothesis_holds = false;
  bool theorem_consistent = true;

  nlohmann::json to_json() const;
};

CharVerdict characterization_check(const FunctionTable& g, int d, std::uint64_t budget = 0);

/// (x1^(p-1) x2)^(q/p) as a bivariate polynomial.
MultiPoly counterexample_poly(const FieldPtr& field);

/// Table of counterexample_poly; requires q - q/p - 1 < d < q.
FunctionTable build_counterexample(const FieldPtr& field, int d);

/// C(n, r) mod p by Lucas' digit decomposition. Requires r <= n and p prime.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t r, std::uint32_t p);

struct BinomSweep {
  std::uint32_t p = 0;
  std::uint32_t s = 0;
  std::uint64_t pairs_checked = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> failures;  // (n, r) with C(n, r) = 0 mod p

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// Every 0 < r <= n <= p^s - 1 with r a multiple of p^(s-1).
BinomSweep lemma_binom_sweep(std::uint32_t p, std::uint32_t s, std::uint64_t budget = 10'000);

struct CensusResult {
  std::uint64_t functions = 0;
  std::uint64_t passing_count = 0;
  std::uint64_t degree_le_d_count = 0;
  std::uint64_t mismatch_count = 0;  // passes XOR degree <= d
  std::uint64_t violations = 0;      // hypothesis holds, passes, degree > d
  bool hypothesis_holds = false;
  bool equal = false;

  nlohmann::json to_json() const;
};

/// Every function F^m -> F; refuses (BudgetExceeded) when q^(q^m) > budget.
CensusResult characterization_census(const FieldPtr& field, std::size_t m, int d, std::uint64_t budget = 0);

struct SearchResult {
  std::uint64_t samples = 0;
  std::uint64_t passing = 0;
  std::uint64_t passing_above_d = 0;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Randomized fallback for sizes past the census: tests random polynomials
/// mixing a degree-<=d part with a few high-degree monomials. Not a
/// certificate.
SearchResult characterization_random_search(const FieldPtr& field, std::size_t m, int d, std::uint64_t samples,
                                            std::uint64_t seed, std::uint64_t budget = 0);

}  // namespace lowdeg
