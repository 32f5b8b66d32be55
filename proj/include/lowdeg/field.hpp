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

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "lowdeg/errors.hpp"

namespace lowdeg {

/// A field element by its canonical index: the polynomial-basis coordinates
/// c_0..c_{s-1} read as the base-p integer sum c_i p^i. Arithmetic goes
/// through the owning FieldSpec.
struct Elem {
  std::uint32_t idx = 0;

  constexpr auto operator<=>(const Elem&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Elem e) { return os << e.idx; }

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// GF(p^s) with a fixed monic irreducible modulus.
///
/// Prime fields (s = 1) use residue arithmetic directly and support q up to
/// 2^20. Extension fields are table driven: the full addition and
/// multiplication tables are built once at construction, which caps them at
/// q <= 256. Instances are immutable and shared through FieldPtr.
class FieldSpec {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;
  static constexpr std::uint32_t kMaxExtensionOrder = 256;

  /// Built-in modulus: the table covers every p^s <= 64; any prime p with
  /// s = 1 is accepted up to kMaxOrder.
  static FieldPtr make(std::uint32_t p, std::uint32_t s);

  /// Explicit modulus, low-to-high coefficients, checked monic and
  /// irreducible over Z_p.
  static FieldPtr make(std::uint32_t p, std::vector<std::uint32_t> modulus);

  /// The built-in modulus for p^s, or an empty vector when none is shipped.
  static std::vector<std::uint32_t> builtin_modulus(std::uint32_t p, std::uint32_t s);

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t q() const { return q_; }
  /// q / p, exact.
  std::uint32_t subfield_index() const { return q_ / p_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return s_ == 1; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  Elem add(Elem a, Elem b) const {
    if (s_ == 1) {
      std::uint32_t r = a.idx + b.idx;
      return Elem{r >= p_ ? r - p_ : r};
    }
    return Elem{add_[a.idx * q_ + b.idx]};
  }

  Elem neg(Elem a) const {
    if (s_ == 1) return Elem{a.idx == 0 ? 0 : p_ - a.idx};
    return Elem{neg_[a.idx]};
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (s_ == 1) {
      return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.idx) * b.idx % p_)};
    }
    return Elem{mul_[a.idx * q_ + b.idx]};
  }

  /// Throws DivisionByZero on zero.
  Elem inv(Elem a) const {
    if (a.idx == 0) throw DivisionByZero();
    return Elem{inv_[a.idx]};
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Square-and-multiply; pow(0, 0) = 1.
  Elem pow(Elem a, std::uint64_t e) const;

  bool contains(Elem a) const { return a.idx < q_; }

  /// Checked conversion from a canonical index.
  Elem from_index(std::uint64_t index) const;

  /// Embeds an integer through the prime subfield (n mod p).
  Elem from_int(std::int64_t n) const;

  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(std::span<const std::uint32_t> coords) const;

  /// All q elements in canonical index order.
  std::vector<Elem> elements() const;

  bool operator==(const FieldSpec& other) const {
    return p_ == other.p_ && s_ == other.s_ && modulus_ == other.modulus_;
  }

 private:
  FieldSpec(std::uint32_t p, std::uint32_t s, std::vector<std::uint32_t> modulus);

  void build_prime_tables();
  void build_extension_tables();

  std::uint32_t p_;
  std::uint32_t s_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> inv_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Throws FieldMismatch unless both handles name the same field.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

bool is_prime(std::uint64_t n);

/// Trial factorization over Z_p: no monic factor of degree 1..deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// Value-semantic element bound to its field. This is the checked surface;
/// the kernels use Elem with an explicit FieldSpec.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::uint32_t canonical_index() const { return value_.idx; }
  std::vector<std::uint32_t> coeffs() const { return field_->coords(value_); }
  bool is_zero() const { return value_.idx == 0; }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator/(const FieldElement& other) const;
  FieldElement operator-() const;

  bool operator==(const FieldElement& other) const {
    return same_field(field_, other.field_) && value_ == other.value_;
  }

 private:
  FieldPtr field_;
  Elem value_;
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const FieldElement& a);
FieldElement fe_pow(const FieldElement& a, std::uint64_t e);
std::vector<FieldElement> enumerate_field(const FieldPtr& field);

}  // namespace lowdeg
