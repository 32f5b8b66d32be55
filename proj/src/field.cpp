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

#include "lowdeg/field.hpp"

#include <algorithm>
#include <string>

namespace lowdeg {

namespace {

struct ModulusEntry {
  std::uint32_t p;
  std::uint32_t s;
  std::vector<std::uint32_t> coeffs;  // low-to-high, monic
};

// Conway polynomials for every non-prime p^s <= 64.
const std::vector<ModulusEntry>& modulus_table() {
  static const std::vector<ModulusEntry> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}},
      {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},
      {5, 2, {2, 4, 1}},
      {7, 2, {3, 6, 1}},
  };
  return table;
}

std::uint64_t checked_power(std::uint32_t p, std::uint32_t s) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    q *= p;
    if (q > FieldSpec::kMaxOrder) {
      throw std::invalid_argument("field order exceeds 2^20");
    }
  }
  return q;
}

// Remainder of a by b over Z_p; b monic.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, std::span<const std::uint32_t> b,
                                    std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + static_cast<std::uint64_t>(p - lead) * b[i]) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  if (poly.size() < 2) return false;
  const std::size_t deg = poly.size() - 1;
  if (poly.back() % p != 1) return false;
  // Every monic candidate divisor of degree k is enumerated through its
  // lower coefficients read as a base-p counter.
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> divisor(k + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[k] = 1;
      std::vector<std::uint32_t> rem = poly_mod(std::vector<std::uint32_t>(poly.begin(), poly.end()), divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t v) { return v == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> FieldSpec::builtin_modulus(std::uint32_t p, std::uint32_t s) {
  if (s == 1) return {0, 1};
  for (const auto& entry : modulus_table()) {
    if (entry.p == p && entry.s == s) return entry.coeffs;
  }
  return {};
}

FieldPtr FieldSpec::make(std::uint32_t p, std::uint32_t s) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (s == 0) throw std::invalid_argument("extension degree must be >= 1");
  checked_power(p, s);
  auto modulus = builtin_modulus(p, s);
  if (modulus.empty()) {
    throw std::invalid_argument("no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(s) +
                                "); supply one explicitly");
  }
  return FieldSpec::make(p, std::move(modulus));
}

FieldPtr FieldSpec::make(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
  const auto s = static_cast<std::uint32_t>(modulus.size() - 1);
  const std::uint64_t q = checked_power(p, s);
  for (auto c : modulus) {
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
  if (s > 1 && q > kMaxExtensionOrder) {
    throw std::invalid_argument("extension fields are limited to q <= 256");
  }
  if (s > 1 && !is_irreducible(p, modulus)) throw std::invalid_argument("modulus is reducible");
  if (s == 1) modulus = {0, 1};
  return FieldPtr(new FieldSpec(p, s, std::move(modulus)));
}

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t s, std::vector<std::uint32_t> modulus)
    : p_(p), s_(s), q_(static_cast<std::uint32_t>(checked_power(p, s))), modulus_(std::move(modulus)) {
  if (s_ == 1) {
    build_prime_tables();
  } else {
    build_extension_tables();
  }
}

void FieldSpec::build_prime_tables() {
  // inv[i] = -(p / i) * inv[p mod i]
  inv_.assign(q_, 0);
  if (q_ > 1) inv_[1] = 1;
  for (std::uint32_t i = 2; i < q_; ++i) {
    const std::uint64_t t = static_cast<std::uint64_t>(p_ - p_ / i) * inv_[p_ % i];
    inv_[i] = static_cast<std::uint32_t>(t % p_);
  }
}

void FieldSpec::build_extension_tables() {
  std::vector<std::vector<std::uint32_t>> coords_of(q_);
  for (std::uint32_t a = 0; a < q_; ++a) coords_of[a] = coords(Elem{a});

  add_.assign(static_cast<std::size_t>(q_) * q_, 0);
  mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);

  std::vector<std::uint32_t> buf(s_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = 0; b < q_; ++b) {
      for (std::uint32_t i = 0; i < s_; ++i) buf[i] = (coords_of[a][i] + coords_of[b][i]) % p_;
      add_[a * q_ + b] = from_coords(buf).idx;

      std::vector<std::uint32_t> prod(2 * s_ - 1, 0);
      for (std::uint32_t i = 0; i < s_; ++i) {
        for (std::uint32_t j = 0; j < s_; ++j) {
          prod[i + j] = (prod[i + j] + coords_of[a][i] * coords_of[b][j]) % p_;
        }
      }
      auto rem = poly_mod(std::move(prod), modulus_, p_);
      rem.resize(s_, 0);
      mul_[a * q_ + b] = from_coords(rem).idx;
    }
  }
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = 0; b < q_; ++b) {
      if (add_[a * q_ + b] == 0) neg_[a] = b;
      if (mul_[a * q_ + b] == 1) inv_[a] = b;
    }
  }
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem FieldSpec::from_index(std::uint64_t index) const {
  if (index >= q_) {
    throw std::out_of_range("element index " + std::to_string(index) + " out of range for q = " + std::to_string(q_));
  }
  return Elem{static_cast<std::uint32_t>(index)};
}

Elem FieldSpec::from_int(std::int64_t n) const {
  auto r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FieldSpec::coords(Elem a) const {
  std::vector<std::uint32_t> out(s_);
  std::uint32_t v = a.idx;
  for (std::uint32_t i = 0; i < s_; ++i) {
    out[i] = v % p_;
    v /= p_;
  }
  return out;
}

Elem FieldSpec::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != s_) throw std::invalid_argument("coordinate vector has wrong length");
  std::uint32_t v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= p_) throw std::invalid_argument("coordinate out of range");
    v = v * p_ + coords[i];
  }
  return Elem{v};
}

std::vector<Elem> FieldSpec::elements() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
  return out;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b)) throw FieldMismatch("operands belong to different fields");
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("null field");
  if (!field_->contains(value_)) throw std::out_of_range("element outside field");
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  require_same_field(field_, other.field_);
  return {field_, field_->add(value_, other.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  require_same_field(field_, other.field_);
  return {field_, field_->sub(value_, other.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  require_same_field(field_, other.field_);
  return {field_, field_->mul(value_, other.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& other) const {
  require_same_field(field_, other.field_);
  return {field_, field_->div(value_, other.value_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement fe_inv(const FieldElement& a) { return {a.field(), a.field()->inv(a.value())}; }
FieldElement fe_pow(const FieldElement& a, std::uint64_t e) { return {a.field(), a.field()->pow(a.value(), e)}; }

std::vector<FieldElement> enumerate_field(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(field->q());
  for (Elem e : field->elements()) out.emplace_back(field, e);
  return out;
}

}  // namespace lowdeg
