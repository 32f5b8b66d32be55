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

#include "lowdeg/lines.hpp"

#include <algorithm>
#include <string>

#include "lowdeg/runtime.hpp"

namespace lowdeg {

namespace {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t choose_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// Solves A z = b over F (A is rows x cols, row-major); free variables are 0.
std::optional<std::vector<Elem>> solve_linear(const FieldSpec& F, std::vector<Elem> a, std::vector<Elem> b,
                                              std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c].idx == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
      std::swap(b[piv], b[r]);
    }
    const Elem inv = F.inv(a[r * cols + c]);
    for (std::size_t k = c; k < cols; ++k) a[r * cols + k] = F.mul(a[r * cols + k], inv);
    b[r] = F.mul(b[r], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = a[i * cols + c];
      if (factor.idx == 0) continue;
      for (std::size_t k = c; k < cols; ++k) a[i * cols + k] = F.sub(a[i * cols + k], F.mul(factor, a[r * cols + k]));
      b[i] = F.sub(b[i], F.mul(factor, b[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i].idx != 0) return std::nullopt;
  }
  std::vector<Elem> z(cols, Elem{0});
  for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = b[i];
  return z;
}

bool lex_less(const UniPoly& a, const UniPoly& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  const std::size_t n = std::max(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Elem x = a.coeff(i);
    const Elem y = b.coeff(i);
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace

bool Line::degenerate() const {
  return std::all_of(h.begin(), h.end(), [](Elem e) { return e.idx == 0; });
}

std::string_view to_string(FitBackend backend) { return backend == FitBackend::Exact ? "exact" : "decode"; }

FitBackend parse_backend(std::string_view name) {
  if (name == "exact") return FitBackend::Exact;
  if (name == "decode") return FitBackend::Decode;
  throw std::invalid_argument("unknown fit backend '" + std::string(name) + "'");
}

Point line_point(const FieldSpec& field, const Line& line, Elem t) {
  if (line.x.size() != line.h.size()) throw FieldMismatch("line base point and direction differ in arity");
  Point out(line.x.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = field.add(line.x[j], field.mul(t, line.h[j]));
  return out;
}

std::vector<Elem> restrict_to_line(const FunctionTable& f, const Line& line) {
  if (line.x.size() != f.arity() || line.h.size() != f.arity()) {
    throw FieldMismatch("line arity differs from table arity");
  }
  const FieldSpec& F = *f.field();
  std::vector<Elem> values(F.q());
  for (std::uint32_t t = 0; t < F.q(); ++t) values[t] = f.at(line_point(F, line, Elem{t}));
  return values;
}

LineFitter::LineFitter(FieldPtr field, int d, FitBackend backend, std::uint64_t subset_cap)
    : field_(std::move(field)), d_(d), backend_(backend), subset_cap_(subset_cap) {
  if (d_ < 0 || static_cast<std::uint32_t>(d_) > field_->q() - 1) {
    throw std::invalid_argument("degree bound must satisfy 0 <= d <= q - 1");
  }
}

std::uint32_t LineFitter::agreement(const UniPoly& p, std::span<const Elem> values) const {
  std::uint32_t a = 0;
  for (std::uint32_t t = 0; t < values.size(); ++t) a += p.eval(Elem{t}) == values[t];
  return a;
}

bool LineFitter::certified(std::uint32_t agreement) const {
  return 2ull * agreement > static_cast<std::uint64_t>(field_->q()) + static_cast<std::uint64_t>(d_);
}

std::optional<LineFit> LineFitter::fit_unique(std::span<const Elem> values) const {
  const std::uint32_t q = field_->q();
  if (values.size() != q) throw FieldMismatch("line restriction must have q samples");
  const std::uint32_t k = static_cast<std::uint32_t>(d_) + 1;
  std::vector<Elem> xs(k);
  for (std::uint32_t start = 0; start + k <= q; start += k) {
    for (std::uint32_t i = 0; i < k; ++i) xs[i] = Elem{start + i};
    UniPoly p = interpolate_uni(field_, xs, values.subspan(start, k));
    const std::uint32_t a = agreement(p, values);
    if (certified(a)) return LineFit{std::move(p), a, d_};
  }
  return berlekamp_welch(values);
}

std::optional<LineFit> LineFitter::berlekamp_welch(std::span<const Elem> values) const {
  const FieldSpec& F = *field_;
  const std::uint32_t q = F.q();
  const std::uint32_t d = static_cast<std::uint32_t>(d_);
  if (q < d + 3) return std::nullopt;  // radius zero: the windows already covered it
  const std::uint32_t e = (q - d - 1) / 2;
  // Unknowns: E = t^e + sum_{k<e} E_k t^k and N of degree <= e + d, with
  // N(t) - y(t) * (E(t) - t^e) = y(t) t^e at every t.
  const std::size_t cols = e + (e + d + 1);
  std::vector<Elem> a(static_cast<std::size_t>(q) * cols);
  std::vector<Elem> b(q);
  for (std::uint32_t t = 0; t < q; ++t) {
    const Elem y = values[t];
    Elem pw = FieldSpec::one();
    for (std::uint32_t k = 0; k <= e + d; ++k) {
      if (k < e) a[t * cols + k] = F.neg(F.mul(y, pw));
      a[t * cols + e + k] = pw;
      if (k == e) b[t] = F.mul(y, pw);
      pw = F.mul(pw, Elem{t});
    }
  }
  auto z = solve_linear(F, std::move(a), std::move(b), q, cols);
  if (!z) return std::nullopt;
  std::vector<Elem> ec(z->begin(), z->begin() + e);
  ec.push_back(FieldSpec::one());
  std::vector<Elem> nc(z->begin() + e, z->end());
  auto [quot, rem] = uni_divmod(UniPoly(field_, std::move(nc)), UniPoly(field_, std::move(ec)));
  if (!rem.is_zero() || quot.degree() > d_) return std::nullopt;
  const std::uint32_t agr = agreement(quot, values);
  if (!certified(agr)) return std::nullopt;
  return LineFit{std::move(quot), agr, d_};
}

LineFit LineFitter::fit_exhaustive(std::span<const Elem> values) const {
  const std::uint32_t q = field_->q();
  if (values.size() != q) throw FieldMismatch("line restriction must have q samples");
  const std::uint32_t k = static_cast<std::uint32_t>(d_) + 1;
  const std::uint64_t subsets = choose_saturating(q, k);
  require_budget(subsets, subset_cap_, "exact line fit over (d+1)-subsets");

  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Elem> xs(k);
  std::vector<Elem> ys(k);
  std::optional<LineFit> best;
  for (;;) {
    for (std::uint32_t i = 0; i < k; ++i) {
      xs[i] = Elem{idx[i]};
      ys[i] = values[idx[i]];
    }
    UniPoly p = interpolate_uni(field_, xs, ys);
    if (!best || !(p == best->poly)) {
      const std::uint32_t a = agreement(p, values);
      if (!best || a > best->agreement || (a == best->agreement && lex_less(p, best->poly))) {
        best = LineFit{std::move(p), a, d_};
      }
    }
    // next combination in lexicographic order
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && idx[i] == q - k + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return *best;
}

LineFit LineFitter::fit(std::span<const Elem> values) const {
  if (auto unique = fit_unique(values)) return *std::move(unique);
  if (backend_ == FitBackend::Decode) throw NoUniqueFit();
  return fit_exhaustive(values);
}

LineFit fit_line_poly(const FieldPtr& field, std::span<const Elem> values, int d, FitBackend backend) {
  return LineFitter(field, d, backend).fit(values);
}

std::uint64_t offset_index(const FieldSpec& field, std::size_t m, std::uint64_t x, std::uint64_t h, Elem t) {
  const std::uint32_t q = field.q();
  std::uint64_t out = 0;
  std::uint64_t scale = 1;
  for (std::size_t j = 0; j < m; ++j) {
    const Elem xj{static_cast<std::uint32_t>(x % q)};
    const Elem hj{static_cast<std::uint32_t>(h % q)};
    out += scale * field.add(xj, field.mul(t, hj)).idx;
    scale *= q;
    x /= q;
    h /= q;
  }
  return out;
}

LineFit line_poly(const FunctionTable& f, const Line& line, const LineFitter& fitter) {
  const FieldSpec& F = *f.field();
  require_same_field(f.field(), fitter.field());
  if (line.x.size() != f.arity() || line.h.size() != f.arity()) {
    throw FieldMismatch("line arity differs from table arity");
  }
  const std::uint32_t q = F.q();
  if (line.degenerate()) {
    const Elem v = f.at(line.x);
    return LineFit{UniPoly(f.field(), {v}), q, fitter.degree()};
  }
  const std::uint64_t x = point_index(line.x, q);
  const std::uint64_t h = point_index(line.h, q);
  // Base the fit at the smallest-index point x + s*h of the line.
  std::uint32_t best_s = 0;
  std::uint64_t best_idx = x;
  for (std::uint32_t s = 1; s < q; ++s) {
    const std::uint64_t idx = offset_index(F, f.arity(), x, h, Elem{s});
    if (idx < best_idx) {
      best_idx = idx;
      best_s = s;
    }
  }
  std::vector<Elem> values(q);
  for (std::uint32_t t = 0; t < q; ++t) values[t] = f.at(offset_index(F, f.arity(), best_idx, h, Elem{t}));
  LineFit fit = fitter.fit(values);
  // line(t) = base + (t - s) h, so P(t) = P_base(t - s).
  if (best_s != 0) fit.poly = shift_uni(fit.poly, F.neg(Elem{best_s}));
  return fit;
}

LineFit line_poly(const FunctionTable& f, const Line& line, int d, FitBackend backend) {
  return line_poly(f, line, LineFitter(f.field(), d, backend));
}

LineSurvey survey_lines(const FunctionTable& f, int d, FitBackend backend, std::uint64_t budget) {
  const FieldSpec& F = *f.field();
  const std::uint32_t q = F.q();
  const std::size_t m = f.arity();
  const std::uint64_t n = f.size();
  require_budget(ipow(q, static_cast<std::uint32_t>(2 * m)), budget, "line survey over q^(2m) lines");

  LineSurvey survey;
  survey.q = q;
  survey.m = m;
  survey.d = d;
  survey.points = n;
  survey.agreement.assign(n * n, q);
  survey.at_zero.assign(n * n, Elem{0});
  for (std::uint64_t x = 0; x < n; ++x) survey.at_zero[survey.pair(x, 0)] = f.at(x);

  const LineFitter fitter(f.field(), d, backend);
  const unsigned chunks = std::max(1u, worker_count());
  // Directions are split across workers; each (x, h) slot is written once.
  parallel_chunks(n > 0 ? n - 1 : 0, chunks, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<bool> seen(n);
    std::vector<Elem> values(q);
    std::vector<std::uint64_t> members(q);
    for (std::uint64_t h = begin + 1; h < end + 1; ++h) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::uint64_t x0 = 0; x0 < n; ++x0) {
        if (seen[x0]) continue;
        for (std::uint32_t t = 0; t < q; ++t) {
          members[t] = offset_index(F, m, x0, h, Elem{t});
          seen[members[t]] = true;
          values[t] = f.at(members[t]);
        }
        const LineFit fit = fitter.fit(values);
        for (std::uint32_t t = 0; t < q; ++t) {
          const std::uint64_t slot = survey.pair(members[t], h);
          survey.agreement[slot] = fit.agreement;
          survey.at_zero[slot] = fit.poly.eval(Elem{t});
        }
      }
    }
  });
  return survey;
}

}  // namespace lowdeg
