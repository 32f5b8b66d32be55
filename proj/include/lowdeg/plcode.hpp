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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lowdeg/poly.hpp"
#include "lowdeg/rational.hpp"
#include "lowdeg/rng.hpp"
#include "lowdeg/tester.hpp"

namespace lowdeg {

// Polynomial-line code: a message polynomial f of total degree <= d on F^m is
// encoded as the restriction of f to every line l_{x,h} = {x + t h}, one
// letter of d+1 coefficients per ordered pair (x, h) in F^m x F^m.

struct PLCodeSpec {
  FieldPtr field;
  std::size_t m = 1;
  int d = 0;
  std::optional<double> c1;  // regime d = Theta(m^c1)
  std::optional<double> c2;  // regime q = Theta(d^c2)

  /// Throws std::invalid_argument unless m >= 1 and 0 <= d < q.
  void validate() const;
  std::uint64_t letters() const;  // q^(2m)
  std::uint64_t letter_index(std::uint64_t x, std::uint64_t h) const;
  nlohmann::json to_json() const;
};

/// Letters in (x, h) index order, x_index * q^m + h_index, each stored as
/// d+1 coefficients.
class Codeword {
 public:
  explicit Codeword(const PLCodeSpec& spec);

  const PLCodeSpec& spec() const { return spec_; }
  std::uint64_t size() const { return size_; }
  std::span<const Elem> letter(std::uint64_t i) const;
  UniPoly letter_poly(std::uint64_t i) const;
  void set_letter(std::uint64_t i, std::span<const Elem> coeffs);
  Elem eval_letter(std::uint64_t i, Elem t) const;

  bool operator==(const Codeword& other) const { return symbols_ == other.symbols_; }

 private:
  PLCodeSpec spec_;
  std::uint64_t size_;
  std::size_t width_;
  std::vector<Elem> symbols_;
};

/// Requires arity m and total degree <= d; q^(2m) letters within budget.
Codeword encode(const MultiPoly& message, const PLCodeSpec& spec, std::uint64_t budget = 0);

/// One draw from the tester's sample space: a point y, directions h1, h2 and
/// parameters t1, t2, giving the lines l_i = l_{y - t_i h_i, h_i} with
/// l_i(t_i) = y.
struct LocalTestSample {
  Point y;
  Point h1;
  Point h2;
  Elem t1;
  Elem t2;
  std::uint64_t letter1 = 0;
  std::uint64_t letter2 = 0;
};

LocalTestSample sample_local_test(const PLCodeSpec& spec, Rng& rng);

using LetterOracle = std::function<UniPoly(std::uint64_t)>;

/// Queries the two letters and accepts iff P1(t1) == P2(t2).
bool local_test_once(const LetterOracle& word, const PLCodeSpec& spec, Rng& rng,
                     LocalTestSample* sample = nullptr);
bool local_test_once(const Codeword& word, Rng& rng, LocalTestSample* sample = nullptr);

/// Trial i draws from Rng(seed, i). Throws std::invalid_argument when
/// trials == 0.
TestReport local_test(const Codeword& word, std::uint64_t trials, std::uint64_t seed);

/// Exact rejection probability over the full sample space, q^(3m+2) draws.
Rational exact_local_rejection(const Codeword& word, std::uint64_t budget = 0);

/// Plurality vote per point over every letter whose line passes through it
/// (the h = 0 letter once), then interpolation. Throws DecodeFailure unless
/// the result has total degree <= d and its encoding matches more than half
/// the letters.
MultiPoly decode(const Codeword& word, std::uint64_t budget = 0);

/// Replaces exactly round(fraction * n) distinct letters by uniformly random
/// coefficient vectors different from the originals.
Codeword corrupt_codeword(const Codeword& word, const Rational& fraction, std::uint64_t seed);

/// Number of letters where the words differ.
std::uint64_t letter_distance(const Codeword& a, const Codeword& b);

struct CodeParams {
  std::string k_elems;    // C(m+d, d), decimal
  std::string k_letters;  // k_elems / (d+1), "num/den"
  std::string n;          // q^(2m), decimal
  std::uint64_t alphabet_bits = 0;
  Rational distance_bound{0};                // 1 - d/q
  std::optional<Rational> minimum_distance;  // exhaustive, when within budget

  nlohmann::json to_json() const;
};

/// The exhaustive minimum distance enumerates all q^k_elems messages and is
/// skipped (left empty) past the budget.
CodeParams code_params(const PLCodeSpec& spec, std::uint64_t budget = 0);

/// Header "p s m d", then one line of d+1 canonical indices per letter.
void write_codeword(std::ostream& out, const Codeword& word);
/// Uses the built-in modulus for (p, s). Throws std::invalid_argument on
/// malformed input.
Codeword read_codeword(std::istream& in);

}  // namespace lowdeg
