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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lowdeg/poly.hpp"

namespace lowdeg {

/// The line {x + t*h : t in F}. h = 0 is allowed and gives a single point.
struct Line {
  Point x;
  Point h;

  bool degenerate() const;
};

enum class FitBackend { Exact, Decode };

std::string_view to_string(FitBackend backend);
FitBackend parse_backend(std::string_view name);

/// Best degree-<=d fit of a line restriction. `agreement` counts t with
/// poly(t) equal to the restriction.
struct LineFit {
  UniPoly poly;
  std::uint32_t agreement = 0;
  int d = 0;
};

Point line_point(const FieldSpec& field, const Line& line, Elem t);

/// values[index(t)] = f(x + t*h).
std::vector<Elem> restrict_to_line(const FunctionTable& f, const Line& line);

/// Maximum-agreement degree-<=d polynomial for a vector of q samples
/// indexed by t.
///
/// Both backends first try a certified shortcut: interpolate disjoint windows
/// of d+1 samples, then Berlekamp-Welch. Any polynomial found with agreement
/// above (q+d)/2 is the unique maximizer. If that fails, Decode throws
/// NoUniqueFit while Exact interpolates every (d+1)-subset and keeps the best,
/// breaking ties toward the lexicographically smallest coefficient vector
/// (canonical indices, low-to-high, padded to d+1).
class LineFitter {
 public:
  /// Exact search gives up with BudgetExceeded past this many subsets.
  static constexpr std::uint64_t kDefaultSubsetCap = 1'000'000;

  LineFitter(FieldPtr field, int d, FitBackend backend, std::uint64_t subset_cap = kDefaultSubsetCap);

  LineFit fit(std::span<const Elem> values) const;

  /// Shortcut only; nullopt when no polynomial clears (q+d)/2.
  std::optional<LineFit> fit_unique(std::span<const Elem> values) const;

  /// The full (d+1)-subset search, skipping the shortcut.
  LineFit fit_exhaustive(std::span<const Elem> values) const;

  const FieldPtr& field() const { return field_; }
  int degree() const { return d_; }
  FitBackend backend() const { return backend_; }

 private:
  std::optional<LineFit> berlekamp_welch(std::span<const Elem> values) const;
  std::uint32_t agreement(const UniPoly& p, std::span<const Elem> values) const;
  bool certified(std::uint32_t agreement) const;

  FieldPtr field_;
  int d_;
  FitBackend backend_;
  std::uint64_t subset_cap_;
};

LineFit fit_line_poly(const FieldPtr& field, std::span<const Elem> values, int d, FitBackend backend);

/// The line polynomial of f on `line`.
///
/// Every non-degenerate line is fitted in the parametrization whose base
/// point has the smallest point index among the points of the line, then
/// shifted back to `line`'s own parameter. Parametrizations of the same
/// point set with the same direction therefore share one fit even when the
/// maximizer is not unique, which keeps Pr[f(x) != P_{x,h}(0)] equal to the
/// mean per-line disagreement. h = 0 gives the constant f(x).
LineFit line_poly(const FunctionTable& f, const Line& line, int d, FitBackend backend);
LineFit line_poly(const FunctionTable& f, const Line& line, const LineFitter& fitter);

/// Agreement and value at t = 0 of the line polynomial for every (x, h),
/// stored at pair index x_index * q^m + h_index.
struct LineSurvey {
  std::uint32_t q = 0;
  std::size_t m = 0;
  int d = 0;
  std::uint64_t points = 0;  // q^m
  std::vector<std::uint32_t> agreement;
  std::vector<Elem> at_zero;

  std::uint64_t pair(std::uint64_t x, std::uint64_t h) const { return x * points + h; }
};

/// One fit per (line orbit, direction); requires q^(2m) <= budget.
LineSurvey survey_lines(const FunctionTable& f, int d, FitBackend backend, std::uint64_t budget);

/// Calls visit(x0, h) once for every nonzero direction h and every line
/// with direction h, where x0 is the smallest point index on that line.
/// Arguments are point indices. Order: h ascending, then x0 ascending.
/// Enumeration stops early when visit returns false.
template <class Visit>
void for_each_line_orbit(const FieldSpec& field, std::size_t m, Visit&& visit);

/// Point index of x + t*h given point indices of x and h.
std::uint64_t offset_index(const FieldSpec& field, std::size_t m, std::uint64_t x, std::uint64_t h, Elem t);

template <class Visit>
void for_each_line_orbit(const FieldSpec& field, std::size_t m, Visit&& visit) {
  const std::uint32_t q = field.q();
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < m; ++j) n *= q;
  std::vector<bool> seen(n);
  for (std::uint64_t h = 1; h < n; ++h) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::uint64_t x = 0; x < n; ++x) {
      if (seen[x]) continue;
      for (std::uint32_t t = 0; t < q; ++t) seen[offset_index(field, m, x, h, Elem{t})] = true;
      if (!visit(x, h)) return;
    }
  }
}

}  // namespace lowdeg
