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
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "lowdeg/field.hpp"
#include "lowdeg/rational.hpp"
#include "lowdeg/rng.hpp"

namespace lowdeg {

/// Degree of the zero polynomial.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

using Point = std::vector<Elem>;

/// Univariate polynomial, coefficients low-to-high, always normalized (no
/// trailing zeros; the zero polynomial has no coefficients).
class UniPoly {
 public:
  explicit UniPoly(FieldPtr field);
  UniPoly(FieldPtr field, std::vector<Elem> coeffs);

  const FieldPtr& field() const { return field_; }
  std::span<const Elem> coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return coeffs_.empty() ? kNegInfDegree : static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of t^i; zero past the degree.
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }

  /// Coefficients zero-padded (never truncated) to length n.
  std::vector<Elem> padded(std::size_t n) const;

  /// Horner evaluation.
  Elem eval(Elem t) const;

  bool operator==(const UniPoly& other) const {
    return same_field(field_, other.field_) && coeffs_ == other.coeffs_;
  }

 private:
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

FieldElement uni_eval(const UniPoly& p, const FieldElement& t);

/// Lagrange interpolation through (points[i], values[i]); the result has
/// degree < points.size(). Throws std::invalid_argument on duplicate points.
UniPoly interpolate_uni(const FieldPtr& field, std::span<const Elem> points, std::span<const Elem> values);
UniPoly interpolate_uni(std::span<const FieldElement> points, std::span<const FieldElement> values);

/// p(t + a), by Taylor shift.
UniPoly shift_uni(const UniPoly& p, Elem a);

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);

/// Quotient and remainder; divisor must be nonzero.
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial. Zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly(FieldPtr field, std::size_t arity);

  const FieldPtr& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  const std::map<Exponents, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff * x^exps into the polynomial, merging like terms.
  void add_term(const Exponents& exps, Elem coeff);

  Elem eval(std::span<const Elem> point) const;

  bool operator==(const MultiPoly& other) const {
    return same_field(field_, other.field_) && arity_ == other.arity_ && terms_ == other.terms_;
  }

 private:
  FieldPtr field_;
  std::size_t arity_;
  std::map<Exponents, Elem> terms_;
};

/// Throws FieldMismatch when point.size() != arity.
FieldElement multi_eval(const MultiPoly& g, std::span<const FieldElement> point);

int total_degree(const MultiPoly& g);
int max_degree(const MultiPoly& g);

/// Maps every exponent e >= q to e - (q - 1) until it is <= q - 1. Positive
/// exponents never reach 0, so the function on F^m is unchanged.
MultiPoly reduce(const MultiPoly& g);

/// Dense table of f: F^m -> F, indexed by sum_j index(x_j) q^j.
class FunctionTable {
 public:
  FunctionTable(FieldPtr field, std::size_t arity);
  FunctionTable(FieldPtr field, std::size_t arity, std::vector<Elem> values);

  static FunctionTable of(const MultiPoly& g);

  const FieldPtr& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  std::uint64_t size() const { return values_.size(); }
  std::span<const Elem> values() const { return values_; }

  Elem at(std::uint64_t index) const { return values_[index]; }
  Elem at(std::span<const Elem> point) const;
  void set(std::uint64_t index, Elem value);

  bool operator==(const FunctionTable& other) const {
    return same_field(field_, other.field_) && arity_ == other.arity_ && values_ == other.values_;
  }

 private:
  FieldPtr field_;
  std::size_t arity_;
  std::vector<Elem> values_;
};

std::uint64_t point_index(std::span<const Elem> point, std::uint32_t q);
Point point_from_index(std::uint64_t index, std::size_t arity, std::uint32_t q);

/// The unique reduced polynomial (deg_max <= q - 1) agreeing with f
/// everywhere, by one univariate interpolation pass per axis.
MultiPoly interpolate_table(const FunctionTable& f);

/// Exact fraction of points where f and g differ.
Rational distance(const FunctionTable& f, const FunctionTable& g);

/// Number of points where f and g differ.
std::uint64_t hamming(const FunctionTable& f, const FunctionTable& g);

/// Uniform polynomial with total degree <= d: every monomial of degree <= d
/// (with each exponent <= q - 1) gets an independent uniform coefficient.
MultiPoly random_poly(const FieldPtr& field, std::size_t arity, int d, Rng& rng);

/// All exponent vectors of length `arity` with total degree <= d and every
/// entry <= q - 1, in lexicographic order.
std::vector<Exponents> monomials_up_to(std::size_t arity, int d, std::uint32_t q);

}  // namespace lowdeg
