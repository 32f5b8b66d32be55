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

#include "lowdeg/plcode.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "lowdeg/lines.hpp"
#include "lowdeg/runtime.hpp"

namespace lowdeg {

namespace {

using boost::multiprecision::cpp_int;

std::uint64_t resolve(std::uint64_t budget) { return budget == 0 ? default_budget() : budget; }

std::uint64_t points_of(const PLCodeSpec& spec) {
  return ipow(spec.field->q(), static_cast<std::uint32_t>(spec.m));
}

// Rows of the inverse Vandermonde matrix on nodes 0..d: basis[k] holds the
// coefficients of the Lagrange polynomial that is 1 at node k.
std::vector<std::vector<Elem>> lagrange_basis(const FieldPtr& field, int d) {
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  std::vector<Elem> nodes(k);
  for (std::size_t i = 0; i < k; ++i) nodes[i] = Elem{static_cast<std::uint32_t>(i)};
  std::vector<std::vector<Elem>> basis;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Elem> values(k, Elem{0});
    values[i] = FieldSpec::one();
    basis.push_back(interpolate_uni(field, nodes, values).padded(k));
  }
  return basis;
}

Point random_point(const FieldSpec& F, std::size_t m, Rng& rng) {
  Point p(m);
  for (auto& e : p) e = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  return p;
}

}  // namespace

void PLCodeSpec::validate() const {
  if (!field) throw std::invalid_argument("code spec has no field");
  if (m < 1) throw std::invalid_argument("arity m must be >= 1");
  if (d < 0 || static_cast<std::uint32_t>(d) >= field->q()) throw std::invalid_argument("degree bound must satisfy 0 <= d < q");
}

std::uint64_t PLCodeSpec::letters() const { return ipow(field->q(), static_cast<std::uint32_t>(2 * m)); }

std::uint64_t PLCodeSpec::letter_index(std::uint64_t x, std::uint64_t h) const { return x * points_of(*this) + h; }

nlohmann::json PLCodeSpec::to_json() const {
  nlohmann::json j = {{"p", field->p()}, {"s", field->s()}, {"q", field->q()}, {"m", m}, {"d", d}};
  j["c1"] = c1 ? nlohmann::json(*c1) : nlohmann::json(nullptr);
  j["c2"] = c2 ? nlohmann::json(*c2) : nlohmann::json(nullptr);
  return j;
}

Codeword::Codeword(const PLCodeSpec& spec)
    : spec_(spec), size_(0), width_(static_cast<std::size_t>(spec.d) + 1) {
  spec_.validate();
  size_ = spec_.letters();
  symbols_.assign(size_ * width_, Elem{0});
}

std::span<const Elem> Codeword::letter(std::uint64_t i) const {
  return std::span<const Elem>(symbols_).subspan(i * width_, width_);
}

UniPoly Codeword::letter_poly(std::uint64_t i) const {
  const auto s = letter(i);
  return UniPoly(spec_.field, std::vector<Elem>(s.begin(), s.end()));
}

void Codeword::set_letter(std::uint64_t i, std::span<const Elem> coeffs) {
  if (coeffs.size() != width_) throw FieldMismatch("letter needs exactly d+1 coefficients");
  if (i >= size_) throw std::out_of_range("letter index out of range");
  std::copy(coeffs.begin(), coeffs.end(), symbols_.begin() + static_cast<std::ptrdiff_t>(i * width_));
}

Elem Codeword::eval_letter(std::uint64_t i, Elem t) const {
  const FieldSpec& F = *spec_.field;
  const auto c = letter(i);
  Elem acc{0};
  for (std::size_t a = c.size(); a-- > 0;) acc = F.add(F.mul(acc, t), c[a]);
  return acc;
}

Codeword encode(const MultiPoly& message, const PLCodeSpec& spec, std::uint64_t budget) {
  spec.validate();
  require_same_field(spec.field, message.field());
  if (message.arity() != spec.m) throw FieldMismatch("message arity differs from the code's m");
  if (total_degree(message) > spec.d) throw std::invalid_argument("message total degree exceeds d");
  require_budget(spec.letters(), resolve(budget), "encoding q^(2m) letters");

  const FieldSpec& F = *spec.field;
  const FunctionTable table = FunctionTable::of(message);
  const auto basis = lagrange_basis(spec.field, spec.d);
  const std::size_t k = basis.size();
  const std::uint64_t points = points_of(spec);
  Codeword word(spec);
  parallel_chunks(points, std::max(1u, worker_count()), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<Elem> values(k);
    std::vector<Elem> coeffs(k);
    for (std::uint64_t x = begin; x < end; ++x) {
      for (std::uint64_t h = 0; h < points; ++h) {
        for (std::size_t t = 0; t < k; ++t) {
          values[t] = table.at(offset_index(F, spec.m, x, h, Elem{static_cast<std::uint32_t>(t)}));
        }
        for (std::size_t a = 0; a < k; ++a) {
          Elem acc{0};
          for (std::size_t t = 0; t < k; ++t) acc = F.add(acc, F.mul(basis[t][a], values[t]));
          coeffs[a] = acc;
        }
        word.set_letter(spec.letter_index(x, h), coeffs);
      }
    }
  });
  return word;
}

LocalTestSample sample_local_test(const PLCodeSpec& spec, Rng& rng) {
  const FieldSpec& F = *spec.field;
  LocalTestSample s;
  s.y = random_point(F, spec.m, rng);
  s.h1 = random_point(F, spec.m, rng);
  s.h2 = random_point(F, spec.m, rng);
  s.t1 = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  s.t2 = Elem{static_cast<std::uint32_t>(rng.below(F.q()))};
  const std::uint64_t y = point_index(s.y, F.q());
  const std::uint64_t h1 = point_index(s.h1, F.q());
  const std::uint64_t h2 = point_index(s.h2, F.q());
  s.letter1 = spec.letter_index(offset_index(F, spec.m, y, h1, F.neg(s.t1)), h1);
  s.letter2 = spec.letter_index(offset_index(F, spec.m, y, h2, F.neg(s.t2)), h2);
  return s;
}

bool local_test_once(const LetterOracle& word, const PLCodeSpec& spec, Rng& rng, LocalTestSample* sample) {
  LocalTestSample s = sample_local_test(spec, rng);
  const bool accept = word(s.letter1).eval(s.t1) == word(s.letter2).eval(s.t2);
  if (sample) *sample = std::move(s);
  return accept;
}

bool local_test_once(const Codeword& word, Rng& rng, LocalTestSample* sample) {
  return local_test_once([&](std::uint64_t i) { return word.letter_poly(i); }, word.spec(), rng, sample);
}

TestReport local_test(const Codeword& word, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const PLCodeSpec& spec = word.spec();
  TestReport report;
  report.trials = trials;
  report.seed = seed;
  report.params = spec.to_json();
  report.rejections = parallel_count(trials, [&](std::uint64_t i) -> std::uint64_t {
    Rng rng(seed, i);
    const LocalTestSample s = sample_local_test(spec, rng);
    return word.eval_letter(s.letter1, s.t1) != word.eval_letter(s.letter2, s.t2);
  });
  finalize_monte_carlo(report);
  return report;
}

Rational exact_local_rejection(const Codeword& word, std::uint64_t budget) {
  const PLCodeSpec& spec = word.spec();
  const FieldSpec& F = *spec.field;
  const std::uint32_t q = F.q();
  const std::uint64_t points = points_of(spec);
  const std::uint64_t space = ipow(q, static_cast<std::uint32_t>(3 * spec.m + 2));
  require_budget(space, resolve(budget), "exact local test over q^(3m+2) draws");
  // Every (y, h, t) names one letter and one evaluation; the two queries are
  // independent, so count values per y and pair them up.
  const std::uint64_t mismatched = parallel_count(points, [&](std::uint64_t y) -> std::uint64_t {
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint64_t h = 0; h < points; ++h) {
      for (std::uint32_t t = 0; t < q; ++t) {
        const std::uint64_t letter = spec.letter_index(offset_index(F, spec.m, y, h, F.neg(Elem{t})), h);
        ++counts[word.eval_letter(letter, Elem{t}).idx];
      }
    }
    const std::uint64_t per_y = points * q;
    std::uint64_t same = 0;
    for (auto c : counts) same += c * c;
    return per_y * per_y - same;
  });
  return ratio(mismatched, space);
}

MultiPoly decode(const Codeword& word, std::uint64_t budget) {
  const PLCodeSpec& spec = word.spec();
  const FieldSpec& F = *spec.field;
  const std::uint32_t q = F.q();
  const std::uint64_t points = points_of(spec);
  require_budget(spec.letters() * q, resolve(budget), "plurality decoding over q^(2m+1) letter evaluations");

  std::vector<Elem> values(points);
  parallel_chunks(points, std::max(1u, worker_count()), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<std::uint64_t> counts(q);
    for (std::uint64_t x = begin; x < end; ++x) {
      std::fill(counts.begin(), counts.end(), 0);
      ++counts[word.eval_letter(spec.letter_index(x, 0), Elem{0}).idx];
      for (std::uint64_t h = 1; h < points; ++h) {
        for (std::uint32_t t = 0; t < q; ++t) {
          const std::uint64_t base = offset_index(F, spec.m, x, h, F.neg(Elem{t}));
          ++counts[word.eval_letter(spec.letter_index(base, h), Elem{t}).idx];
        }
      }
      values[x] = Elem{static_cast<std::uint32_t>(std::max_element(counts.begin(), counts.end()) - counts.begin())};
    }
  });

  MultiPoly f = interpolate_table(FunctionTable(spec.field, spec.m, std::move(values)));
  if (total_degree(f) > spec.d) {
    throw DecodeFailure("reconstructed function has total degree " + std::to_string(total_degree(f)) + " > d");
  }
  const std::uint64_t differ = letter_distance(word, encode(f, spec, budget));
  if (2 * (word.size() - differ) <= word.size()) {
    throw DecodeFailure("re-encoding matches only " + std::to_string(word.size() - differ) + " of " +
                        std::to_string(word.size()) + " letters");
  }
  return f;
}

Codeword corrupt_codeword(const Codeword& word, const Rational& fraction, std::uint64_t seed) {
  if (fraction < Rational(0) || fraction > Rational(1)) throw std::invalid_argument("fraction must lie in [0, 1]");
  const std::uint64_t n = word.size();
  const std::uint64_t count = round_count(fraction, n);
  const std::uint32_t q = word.spec().field->q();
  const std::size_t width = static_cast<std::size_t>(word.spec().d) + 1;
  Rng rng(seed, 0x706c636f);
  std::vector<std::uint64_t> order(n);
  for (std::uint64_t i = 0; i < n; ++i) order[i] = i;
  Codeword out = word;
  std::vector<Elem> fresh(width);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::swap(order[i], order[i + rng.below(n - i)]);
    const auto old = word.letter(order[i]);
    do {
      for (auto& e : fresh) e = Elem{static_cast<std::uint32_t>(rng.below(q))};
    } while (std::equal(fresh.begin(), fresh.end(), old.begin()));
    out.set_letter(order[i], fresh);
  }
  return out;
}

std::uint64_t letter_distance(const Codeword& a, const Codeword& b) {
  if (a.size() != b.size() || a.spec().d != b.spec().d || !same_field(a.spec().field, b.spec().field)) {
    throw FieldMismatch("codewords belong to different codes");
  }
  std::uint64_t differ = 0;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const auto x = a.letter(i);
    const auto y = b.letter(i);
    differ += !std::equal(x.begin(), x.end(), y.begin());
  }
  return differ;
}

nlohmann::json CodeParams::to_json() const {
  return {{"k_elems", k_elems},
          {"k_letters", k_letters},
          {"n", n},
          {"alphabet_bits", alphabet_bits},
          {"relative_distance_lower_bound", lowdeg::to_string(distance_bound)},
          {"minimum_distance", minimum_distance ? nlohmann::json(lowdeg::to_string(*minimum_distance))
                                                : nlohmann::json(nullptr)}};
}

CodeParams code_params(const PLCodeSpec& spec, std::uint64_t budget) {
  spec.validate();
  const FieldSpec& F = *spec.field;
  const std::uint32_t q = F.q();
  CodeParams out;

  cpp_int k = 1;
  for (int i = 1; i <= spec.d; ++i) k = k * (static_cast<int>(spec.m) + i) / i;
  out.k_elems = k.str();
  const cpp_int width = spec.d + 1;
  const cpp_int g = boost::multiprecision::gcd(k, width);
  out.k_letters = cpp_int(k / g).str() + "/" + cpp_int(width / g).str();
  cpp_int n = 1;
  for (std::size_t i = 0; i < 2 * spec.m; ++i) n *= q;
  out.n = n.str();
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < q) ++bits;
  out.alphabet_bits = static_cast<std::uint64_t>(spec.d + 1) * bits;
  out.distance_bound = Rational(1) - Rational(spec.d, q);

  // The code is linear, so the minimum distance is the minimum weight of a
  // nonzero codeword. A letter of f is zero iff f vanishes on its line.
  const auto monomials = monomials_up_to(spec.m, spec.d, q);
  const std::uint64_t messages = ipow(q, static_cast<std::uint32_t>(monomials.size()));
  const std::uint64_t per_message = spec.letters() * q;
  if (k > 20 || messages > resolve(budget) || messages * per_message / 100 > resolve(budget)) return out;

  const std::uint64_t points = points_of(spec);
  std::vector<std::uint64_t> members;
  for_each_line_orbit(F, spec.m, [&](std::uint64_t x0, std::uint64_t h) {
    for (std::uint32_t t = 0; t < q; ++t) members.push_back(offset_index(F, spec.m, x0, h, Elem{t}));
    return true;
  });
  std::vector<std::uint64_t> zero_letters(messages, 0);
  parallel_chunks(messages - 1, std::max(1u, worker_count()), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t code = begin + 1; code < end + 1; ++code) {
      MultiPoly f(spec.field, spec.m);
      std::uint64_t rest = code;
      for (const auto& e : monomials) {
        f.add_term(e, Elem{static_cast<std::uint32_t>(rest % q)});
        rest /= q;
      }
      const FunctionTable table = FunctionTable::of(f);
      std::uint64_t zeros = 0;
      for (std::uint64_t x = 0; x < points; ++x) zeros += table.at(x).idx == 0;
      for (std::size_t o = 0; o < members.size(); o += q) {
        bool all = true;
        for (std::uint32_t t = 0; all && t < q; ++t) all = table.at(members[o + t]).idx == 0;
        if (all) zeros += q;
      }
      zero_letters[code] = zeros;
    }
  });
  const std::uint64_t most = *std::max_element(zero_letters.begin() + 1, zero_letters.end());
  out.minimum_distance = ratio(spec.letters() - most, spec.letters());
  return out;
}

void write_codeword(std::ostream& out, const Codeword& word) {
  const PLCodeSpec& spec = word.spec();
  out << spec.field->p() << ' ' << spec.field->s() << ' ' << spec.m << ' ' << spec.d << '\n';
  for (std::uint64_t i = 0; i < word.size(); ++i) {
    const auto c = word.letter(i);
    for (std::size_t a = 0; a < c.size(); ++a) out << (a ? " " : "") << c[a].idx;
    out << '\n';
  }
}

Codeword read_codeword(std::istream& in) {
  std::uint32_t p = 0;
  std::uint32_t s = 0;
  std::size_t m = 0;
  int d = 0;
  if (!(in >> p >> s >> m >> d)) throw std::invalid_argument("codeword header must be \"p s m d\"");
  PLCodeSpec spec{FieldSpec::make(p, s), m, d, std::nullopt, std::nullopt};
  Codeword word(spec);
  std::vector<Elem> coeffs(static_cast<std::size_t>(d) + 1);
  for (std::uint64_t i = 0; i < word.size(); ++i) {
    for (auto& e : coeffs) {
      std::uint64_t v = 0;
      if (!(in >> v)) throw std::invalid_argument("codeword file ends early at letter " + std::to_string(i));
      e = spec.field->from_index(v);
    }
    word.set_letter(i, coeffs);
  }
  return word;
}

}  // namespace lowdeg
