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
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lowdeg/lines.hpp"
#include "lowdeg/rational.hpp"
#include "lowdeg/rng.hpp"

namespace lowdeg {

/// Outcome of a rejection-rate measurement, Monte-Carlo or exact.
struct TestReport {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double estimate = 0.0;
  std::optional<Rational> exact;
  double stddev_bound = 0.0;  // binomial 1-sigma
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();

  /// |estimate - value| <= 3 * stddev_bound.
  bool within_3sigma(const Rational& value) const;

  nlohmann::json to_json() const;
};

/// Fills in estimate and stddev_bound from trials and rejections. The 1-sigma
/// bound uses the Laplace-smoothed rate (r + 1) / (n + 2) so that a run with
/// zero rejections still carries a nonzero band.
void finalize_monte_carlo(TestReport& report);

/// Parameter echo shared by every report.
nlohmann::json params_json(const FieldSpec& field, std::size_t m, int d, FitBackend backend);

/// epsilon = 1/8 - delta and alpha = 4 / (epsilon^2 q), with whether the
/// field-size condition q > 16 / epsilon^2 holds. Sampled directions include
/// h = 0, which carries probability q^-m; the note records that mass.
nlohmann::json hypothesis_note(const Rational& delta, std::uint32_t q, std::size_t m);

struct CorruptionSpec {
  enum class Mode { RandomPoints, SinglePoint, Adversarial };

  Mode mode = Mode::RandomPoints;
  Rational fraction{0};                                   // RandomPoints
  std::uint64_t index = 0;                                // SinglePoint
  Elem value{0};                                          // SinglePoint
  std::vector<std::pair<std::uint64_t, Elem>> overrides;  // Adversarial
  std::uint64_t seed = 0;

  static CorruptionSpec random_points(Rational fraction, std::uint64_t seed);
  static CorruptionSpec single_point(std::uint64_t index, Elem value);
  static CorruptionSpec adversarial(std::vector<std::pair<std::uint64_t, Elem>> overrides);
};

/// RandomPoints changes exactly round(fraction * q^m) distinct points, each
/// to a uniformly chosen different value.
FunctionTable apply_corruption(const FunctionTable& g, const CorruptionSpec& spec);

/// round(fraction * n), halves rounded up.
std::uint64_t round_count(const Rational& fraction, std::uint64_t n);

using LineOracle = std::function<UniPoly(const Line&)>;

/// Draws x, h uniformly from F^m and t from F, then compares the oracle's
/// polynomial at t with f(x + t*h). One oracle query, one table query.
bool line_point_test_once(const FunctionTable& f, const LineOracle& oracle, Rng& rng);

/// Monte-Carlo rejection rate of the line-point test against the fitted line
/// polynomials. Trial i draws from Rng(seed, i).
TestReport estimate_delta(const FunctionTable& f, int d, std::uint64_t trials, std::uint64_t seed,
                          FitBackend backend = FitBackend::Exact);

/// Exhaustive statistics derived from one LineSurvey.
Rational exact_delta(const LineSurvey& survey);
Rational delta_f(const LineSurvey& survey, const FunctionTable& f);
FunctionTable corr(const LineSurvey& survey, const FunctionTable& f);
/// Pr_{x,h1,h2}[P_{x,h1}(0) != P_{x,h2}(0)].
Rational exact_plurality_disagreement(const LineSurvey& survey);
/// Pr_{x,h}[Corr_f(x) != P_{x,h}(0)].
Rational corr_vote_loss(const LineSurvey& survey);

Rational exact_delta(const FunctionTable& f, int d, FitBackend backend = FitBackend::Exact,
                     std::uint64_t budget = 0);
Rational delta_f(const FunctionTable& f, int d, FitBackend backend = FitBackend::Exact, std::uint64_t budget = 0);
FunctionTable corr(const FunctionTable& f, int d, FitBackend backend = FitBackend::Exact, std::uint64_t budget = 0);

struct ContractionReport {
  Rational delta_f_before{0};
  Rational delta_f_after{0};  // delta of Corr_f
  Rational exact_delta{0};
  Rational dist_f_g{0};
  Rational dist_f_corr{0};
  Rational dist_corr_g{0};
  bool corr_equals_g = false;

  bool two_delta_ok = false;          // d(f, Corr_f) <= 2 delta_f
  bool contraction_observed = false;  // delta_f == 0 or delta_Corr < delta_f
  bool quarter_asserted = false;      // d(f,g) < 1/4 and q >= 2(d+2)
  bool quarter_ok = false;            // Corr_f == g whenever asserted
  bool field_size_hypothesis = false; // q > 16/eps^2 with eps = 1/8 - delta_f > 0
  bool bounds_ok = false;             // every check whose hypothesis holds

  nlohmann::json to_json() const;
};

ContractionReport contraction_experiment(const MultiPoly& g, const CorruptionSpec& corruption, int d,
                                         FitBackend backend = FitBackend::Exact, std::uint64_t budget = 0);

struct PlaneSample {
  std::vector<Elem> matrix;  // matrix[i * q + j] = f(x + i h1 + j h2 + i j h3)
  std::vector<LineFit> row_fits;
  std::vector<LineFit> col_fits;
  std::vector<Rational> row_deltas;  // (q - agreement) / q
  std::vector<Rational> col_deltas;
};

/// Rows are lines (x + i h1, h2 + i h3); columns are (x + j h2, h1 + j h3).
PlaneSample affine_plane_sample(const FunctionTable& f, const Point& x, const Point& h1, const Point& h2,
                                const Point& h3, int d, FitBackend backend = FitBackend::Exact);

/// Monte-Carlo estimate of Pr_{x,h1,h2}[P_{x,h1}(0) != P_{x,h2}(0)].
TestReport plurality_disagreement(const FunctionTable& f, int d, std::uint64_t trials, std::uint64_t seed,
                                  FitBackend backend = FitBackend::Exact);

}  // namespace lowdeg
