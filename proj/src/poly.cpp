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

#include <algorithm>
#include <numeric>
#include <string>

#include "lowdeg/runtime.hpp"

namespace lowdeg {

namespace {

void normalize(std::vector<Elem>& coeffs) {
  while (!coeffs.empty() && coeffs.back().idx == 0) coeffs.pop_back();
}

}  // namespace

UniPoly::UniPoly(FieldPtr field) : field_(std::move(field)) {}

UniPoly::UniPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (Elem c : coeffs_) {
    if (!field_->contains(c)) throw std::out_of_range("coefficient outside field");
  }
  normalize(coeffs_);
}

std::vector<Elem> UniPoly::padded(std::size_t n) const {
  std::vector<Elem> out = coeffs_;
  if (out.size() < n) out.resize(n, Elem{0});
  return out;
}

Elem UniPoly::eval(Elem t) const {
  const FieldSpec& F = *field_;
  Elem acc{0};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = F.add(F.mul(acc, t), coeffs_[i]);
  return acc;
}

FieldElement uni_eval(const UniPoly& p, const FieldElement& t) {
  require_same_field(p.field(), t.field());
  return {p.field(), p.eval(t.value())};
}

UniPoly interpolate_uni(const FieldPtr& field, std::span<const Elem> points, std::span<const Elem> values) {
  if (points.size() != values.size()) throw std::invalid_argument("points and values differ in length");
  if (points.size() > field->q()) throw std::invalid_argument("more interpolation points than field elements");
  std::vector<Elem> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate interpolation point");
  }

  const FieldSpec& F = *field;
  const std::size_t n = points.size();
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<Elem> c(values.begin(), values.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      c[i] = F.div(F.sub(c[i], c[i - 1]), F.sub(points[i], points[i - j]));
    }
  }
  std::vector<Elem> out(n, Elem{0});
  if (n == 0) return UniPoly(field);
  out[0] = c[n - 1];
  std::size_t len = 1;
  for (std::size_t k = n - 1; k-- > 0;) {
    // out <- out * (t - points[k]) + c[k]
    const Elem neg_root = F.neg(points[k]);
    out[len] = Elem{0};
    for (std::size_t i = len; i > 0; --i) out[i] = F.add(out[i - 1], F.mul(out[i], neg_root));
    out[0] = F.add(F.mul(out[0], neg_root), c[k]);
    ++len;
  }
  return UniPoly(field, std::move(out));
}

UniPoly interpolate_uni(std::span<const FieldElement> points, std::span<const FieldElement> values) {
  if (points.empty()) throw std::invalid_argument("no interpolation points");
  const FieldPtr& field = points.front().field();
  std::vector<Elem> xs;
  std::vector<Elem> ys;
  for (const auto& p : points) {
    require_same_field(field, p.field());
    xs.push_back(p.value());
  }
  for (const auto& v : values) {
    require_same_field(field, v.field());
    ys.push_back(v.value());
  }
  return interpolate_uni(field, xs, ys);
}

UniPoly shift_uni(const UniPoly& p, Elem a) {
  const FieldSpec& F = *p.field();
  const auto c = p.coeffs();
  std::vector<Elem> out(c.size(), Elem{0});
  std::size_t len = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    // out <- out * (t + a) + c[k]
    if (len > 0) {
      out[len] = out[len - 1];
      for (std::size_t i = len - 1; i > 0; --i) out[i] = F.add(out[i - 1], F.mul(out[i], a));
      out[0] = F.mul(out[0], a);
    }
    out[0] = F.add(out[0], c[k]);
    ++len;
  }
  return UniPoly(p.field(), std::move(out));
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  const FieldSpec& F = *a.field();
  std::vector<Elem> out(std::max(a.coeffs().size(), b.coeffs().size()), Elem{0});
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(a.coeff(i), b.coeff(i));
  return UniPoly(a.field(), std::move(out));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  if (a.is_zero() || b.is_zero()) return UniPoly(a.field());
  const FieldSpec& F = *a.field();
  std::vector<Elem> out(a.coeffs().size() + b.coeffs().size() - 1, Elem{0});
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a.coeffs()[i], b.coeffs()[j]));
    }
  }
  return UniPoly(a.field(), std::move(out));
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) throw DivisionByZero();
  const FieldSpec& F = *a.field();
  std::vector<Elem> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Elem lead_inv = F.inv(bc.back());
  std::vector<Elem> quot(rem.size() > db ? rem.size() - db : 0, Elem{0});
  while (rem.size() > db && !rem.empty()) {
    const Elem factor = F.mul(rem.back(), lead_inv);
    const std::size_t shift = rem.size() - 1 - db;
    quot[shift] = factor;
    for (std::size_t i = 0; i <= db; ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(factor, bc[i]));
    rem.pop_back();
  }
  return {UniPoly(a.field(), std::move(quot)), UniPoly(a.field(), std::move(rem))};
}

MultiPoly::MultiPoly(FieldPtr field, std::size_t arity) : field_(std::move(field)), arity_(arity) {}

void MultiPoly::add_term(const Exponents& exps, Elem coeff) {
  if (exps.size() != arity_) throw FieldMismatch("exponent vector length differs from arity");
  if (!field_->contains(coeff)) throw std::out_of_range("coefficient outside field");
  if (coeff.idx == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coeff);
    return;
  }
  it->second = field_->add(it->second, coeff);
  if (it->second.idx == 0) terms_.erase(it);
}

Elem MultiPoly::eval(std::span<const Elem> point) const {
  if (point.size() != arity_) throw FieldMismatch("point arity differs from polynomial arity");
  const FieldSpec& F = *field_;
  Elem acc{0};
  for (const auto& [exps, coeff] : terms_) {
    Elem term = coeff;
    for (std::size_t j = 0; j < arity_; ++j) {
      if (exps[j] != 0) term = F.mul(term, F.pow(point[j], exps[j]));
    }
    acc = F.add(acc, term);
  }
  return acc;
}

FieldElement multi_eval(const MultiPoly& g, std::span<const FieldElement> point) {
  if (point.size() != g.arity()) throw FieldMismatch("point arity differs from polynomial arity");
  Point raw;
  raw.reserve(point.size());
  for (const auto& x : point) {
    require_same_field(g.field(), x.field());
    raw.push_back(x.value());
  }
  return {g.field(), g.eval(raw)};
}

int total_degree(const MultiPoly& g) {
  int best = kNegInfDegree;
  for (const auto& [exps, coeff] : g.terms()) {
    best = std::max(best, static_cast<int>(std::accumulate(exps.begin(), exps.end(), 0u)));
  }
  return best;
}

int max_degree(const MultiPoly& g) {
  int best = kNegInfDegree;
  for (const auto& [exps, coeff] : g.terms()) {
    for (auto e : exps) best = std::max(best, static_cast<int>(e));
    if (exps.empty()) best = std::max(best, 0);
  }
  return best;
}

MultiPoly reduce(const MultiPoly& g) {
  const std::uint32_t q = g.field()->q();
  MultiPoly out(g.field(), g.arity());
  for (const auto& [exps, coeff] : g.terms()) {
    Exponents e = exps;
    for (auto& x : e) {
      if (x >= q) x = (x - 1) % (q - 1) + 1;
    }
    out.add_term(e, coeff);
  }
  return out;
}

FunctionTable::FunctionTable(FieldPtr field, std::size_t arity) : field_(std::move(field)), arity_(arity) {
  const std::uint64_t n = ipow(field_->q(), static_cast<std::uint32_t>(arity_));
  if (n > (1ull << 32)) throw BudgetExceeded("function table of q^m = " + std::to_string(n) + " points is too large");
  values_.assign(n, Elem{0});
}

FunctionTable::FunctionTable(FieldPtr field, std::size_t arity, std::vector<Elem> values)
    : field_(std::move(field)), arity_(arity), values_(std::move(values)) {
  if (values_.size() != ipow(field_->q(), static_cast<std::uint32_t>(arity_))) {
    throw FieldMismatch("function table length is not q^m");
  }
  for (Elem v : values_) {
    if (!field_->contains(v)) throw std::out_of_range("table value outside field");
  }
}

FunctionTable FunctionTable::of(const MultiPoly& g) {
  FunctionTable table(g.field(), g.arity());
  const std::uint32_t q = g.field()->q();
  Point x(g.arity(), Elem{0});
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    table.values_[i] = g.eval(x);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (++x[j].idx < q) break;
      x[j].idx = 0;
    }
  }
  return table;
}

Elem FunctionTable::at(std::span<const Elem> point) const {
  if (point.size() != arity_) throw FieldMismatch("point arity differs from table arity");
  return values_[point_index(point, field_->q())];
}

void FunctionTable::set(std::uint64_t index, Elem value) {
  if (!field_->contains(value)) throw std::out_of_range("table value outside field");
  values_.at(index) = value;
}

std::uint64_t point_index(std::span<const Elem> point, std::uint32_t q) {
  std::uint64_t idx = 0;
  for (std::size_t j = point.size(); j-- > 0;) idx = idx * q + point[j].idx;
  return idx;
}

Point point_from_index(std::uint64_t index, std::size_t arity, std::uint32_t q) {
  Point out(arity);
  for (std::size_t j = 0; j < arity; ++j) {
    out[j] = Elem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return out;
}

MultiPoly interpolate_table(const FunctionTable& f) {
  const FieldSpec& F = *f.field();
  const std::uint32_t q = F.q();
  const std::size_t m = f.arity();
  require_budget(ipow(q, static_cast<std::uint32_t>(m + 1)), 100 * default_budget(), "interpolate_table");

  // Over GF(q) the Lagrange basis at node t is -(X^q - X)/(X - t), so the
  // coefficient of X^k (k >= 1) in the interpolant is -sum_t t^(q-1-k) v(t)
  // and the constant coefficient is v(0).
  std::vector<Elem> power(static_cast<std::size_t>(q) * q);  // power[t*q + e] = t^e
  for (std::uint32_t t = 0; t < q; ++t) {
    Elem acc = FieldSpec::one();
    for (std::uint32_t e = 0; e < q; ++e) {
      power[t * q + e] = acc;
      acc = F.mul(acc, Elem{t});
    }
  }

  std::vector<Elem> data(f.values().begin(), f.values().end());
  std::vector<Elem> fiber(q);
  std::vector<Elem> coeffs(q);
  std::uint64_t stride = 1;
  for (std::size_t axis = 0; axis < m; ++axis) {
    const std::uint64_t block = stride * q;
    for (std::uint64_t base = 0; base < data.size(); base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        for (std::uint32_t t = 0; t < q; ++t) fiber[t] = data[base + off + t * stride];
        coeffs[0] = fiber[0];
        for (std::uint32_t k = 1; k < q; ++k) {
          Elem acc{0};
          for (std::uint32_t t = 0; t < q; ++t) {
            if (fiber[t].idx != 0) acc = F.add(acc, F.mul(power[t * q + (q - 1 - k)], fiber[t]));
          }
          coeffs[k] = F.neg(acc);
        }
        for (std::uint32_t k = 0; k < q; ++k) data[base + off + k * stride] = coeffs[k];
      }
    }
    stride = block;
  }

  MultiPoly out(f.field(), m);
  for (std::uint64_t i = 0; i < data.size(); ++i) {
    if (data[i].idx == 0) continue;
    Exponents exps(m);
    std::uint64_t r = i;
    for (std::size_t j = 0; j < m; ++j) {
      exps[j] = static_cast<std::uint32_t>(r % q);
      r /= q;
    }
    out.add_term(exps, data[i]);
  }
  return out;
}

std::uint64_t hamming(const FunctionTable& f, const FunctionTable& g) {
  require_same_field(f.field(), g.field());
  if (f.arity() != g.arity()) throw FieldMismatch("tables differ in arity");
  std::uint64_t diff = 0;
  for (std::uint64_t i = 0; i < f.size(); ++i) diff += f.at(i) != g.at(i);
  return diff;
}

Rational distance(const FunctionTable& f, const FunctionTable& g) { return ratio(hamming(f, g), f.size()); }

std::vector<Exponents> monomials_up_to(std::size_t arity, int d, std::uint32_t q) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents cur(arity, 0);
  // Odometer over exponent vectors, pruned by the degree budget.
  auto rec = [&](auto&& self, std::size_t j, int left) -> void {
    if (j == arity) {
      out.push_back(cur);
      return;
    }
    const int cap = std::min<int>(left, static_cast<int>(q) - 1);
    for (int e = 0; e <= cap; ++e) {
      cur[j] = static_cast<std::uint32_t>(e);
      self(self, j + 1, left - e);
    }
    cur[j] = 0;
  };
  rec(rec, 0, d);
  return out;
}

MultiPoly random_poly(const FieldPtr& field, std::size_t arity, int d, Rng& rng) {
  MultiPoly g(field, arity);
  for (const auto& exps : monomials_up_to(arity, d, field->q())) {
    g.add_term(exps, Elem{static_cast<std::uint32_t>(rng.below(field->q()))});
  }
  return g;
}

}  // namespace lowdeg
