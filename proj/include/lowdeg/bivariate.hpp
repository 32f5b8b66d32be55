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
#include "lowdeg/poly.hpp"
#include "lowdeg/rational.hpp"
#include "lowdeg/rng.hpp"

namespace lowdeg {

/// Degree-<=d row polynomials r_i and column polynomials c_j, one per field
/// element i, j in canonical order.
struct RowColFamily {
  FieldPtr field;
  int d = 0;
  std::vector<UniPoly> rows;
  std::vector<UniPoly> cols;

  /// Throws std::invalid_argument unless there are q rows and q columns of
  /// degree <= d over `field`.
  void validate() const;

  nlohmann::json to_json() const;
  static RowColFamily from_json(const FieldPtr& field, int d, const nlohmann::json& j);
};

/// Q(X, Y) with degree <= d in each variable; coeffs[a * (d+1) + b] is the
/// coefficient of X^a Y^b.
struct BivariatePoly {
  FieldPtr field;
  int d = 0;
  std::vector<Elem> coeffs;

  Elem eval(Elem x, Elem y) const;
  /// Q(i, .) as a polynomial in Y.
  UniPoly row(Elem i) const;
  /// Q(., j) as a polynomial in X.
  UniPoly col(Elem j) const;

  bool operator==(const BivariatePoly& other) const { return d == other.d && coeffs == other.coeffs; }
};

RowColFamily family_of(const BivariatePoly& q);

/// Uniform Q with degree <= d in each variable.
BivariatePoly random_bivariate(const FieldPtr& field, int d, Rng& rng);

/// family_of(q0) with the listed rows and columns replaced by uniformly random
/// degree-<=d polynomials different from the originals.
RowColFamily corrupt_family(const BivariatePoly& q0, const std::vector<std::uint32_t>& bad_rows,
                            const std::vector<std::uint32_t>& bad_cols, Rng& rng);

/// Fraction of the q^2 cells with r_i(j) != c_j(i).
Rational rowcol_disagreement(const RowColFamily& fam);

struct BivariateFit {
  BivariatePoly poly;
  std::uint64_t bad_rows = 0;
  std::uint64_t bad_cols = 0;
  Rational x{0};  // |B_row| / q
  Rational y{0};  // |B_col| / q
  std::uint64_t subsets_examined = 0;
};

/// Rows with r_i != Q(i, .) and columns with c_j != Q(., j), compared as
/// whole polynomials.
BivariateFit score_candidate(const RowColFamily& fam, const BivariatePoly& q);

/// Interpolates Q through every (d+1)-subset of rows, in colexicographic
/// order and at most `subset_cap` of them, and returns the candidate with the
/// fewest bad rows plus bad columns (the first one on ties). Colex order
/// exhausts all subsets of the first k rows before touching row k, so a few
/// corrupted rows cannot block the search. Requires q >= 2(d+1); throws
/// NoCandidate if the winner has x or y above 1/2.
BivariateFit fit_bivariate(const RowColFamily& fam, std::uint64_t subset_cap = 5000);

struct StrengthenReport {
  Rational disagreement{0};
  Rational epsilon{0};
  bool hypothesis_met = false;  // disagreement <= 1/4 - epsilon
  std::optional<BivariateFit> fit;
  bool conclusion_ok = true;    // x <= 1/4 and y <= 1/4 whenever hypothesis_met
  Rational chain_lower_bound{0};  // x(1 - y - d/q) + y(1 - x - d/q)
  bool chain_ok = true;           // chain_lower_bound <= disagreement

  bool ok() const { return conclusion_ok && chain_ok; }
  nlohmann::json to_json() const;
};

/// Requires epsilon >= d/q.
StrengthenReport strengthen_check(const RowColFamily& fam, const Rational& epsilon, std::uint64_t subset_cap = 5000);

}  // namespace lowdeg
