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

#include "lowdeg/bivariate.hpp"

#include <string>

namespace lowdeg {

namespace {

nlohmann::json poly_list(const std::vector<UniPoly>& polys, int d) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : polys) {
    nlohmann::json c = nlohmann::json::array();
    for (Elem e : p.padded(static_cast<std::size_t>(d) + 1)) c.push_back(e.idx);
    out.push_back(c);
  }
  return out;
}

// Evaluates the candidate against the family, giving up once the bad count
// reaches `stop_at`.
struct Scorer {
  const RowColFamily& fam;
  std::size_t k;
  std::vector<Elem> powers;  // powers[i * k + a] = i^a

  explicit Scorer(const RowColFamily& f) : fam(f), k(static_cast<std::size_t>(f.d) + 1) {
    const FieldSpec& F = *fam.field;
    powers.resize(static_cast<std::size_t>(F.q()) * k);
    for (std::uint32_t i = 0; i < F.q(); ++i) {
      Elem acc = FieldSpec::one();
      for (std::size_t a = 0; a < k; ++a) {
        powers[i * k + a] = acc;
        acc = F.mul(acc, Elem{i});
      }
    }
  }

  // Returns (bad_rows, bad_cols); the sum is only a lower bound once it
  // reaches stop_at.
  std::pair<std::uint64_t, std::uint64_t> score(const std::vector<Elem>& c, std::uint64_t stop_at) const {
    const FieldSpec& F = *fam.field;
    const std::uint32_t q = F.q();
    std::uint64_t bad_rows = 0;
    std::uint64_t bad_cols = 0;
    for (std::uint32_t i = 0; i < q && bad_rows < stop_at; ++i) {
      const UniPoly& r = fam.rows[i];
      for (std::size_t b = 0; b < k; ++b) {
        Elem acc{0};
        for (std::size_t a = 0; a < k; ++a) acc = F.add(acc, F.mul(c[a * k + b], powers[i * k + a]));
        if (acc != r.coeff(b)) {
          ++bad_rows;
          break;
        }
      }
    }
    for (std::uint32_t j = 0; j < q && bad_rows + bad_cols < stop_at; ++j) {
      const UniPoly& col = fam.cols[j];
      for (std::size_t a = 0; a < k; ++a) {
        Elem acc{0};
        for (std::size_t b = 0; b < k; ++b) acc = F.add(acc, F.mul(c[a * k + b], powers[j * k + b]));
        if (acc != col.coeff(a)) {
          ++bad_cols;
          break;
        }
      }
    }
    return {bad_rows, bad_cols};
  }
};

}  // namespace

void RowColFamily::validate() const {
  if (!field) throw std::invalid_argument("family has no field");
  if (d < 0) throw std::invalid_argument("degree bound must be >= 0");
  if (rows.size() != field->q() || cols.size() != field->q()) {
    throw std::invalid_argument("family needs exactly q rows and q columns");
  }
  for (const auto* polys : {&rows, &cols}) {
    for (const auto& p : *polys) {
      require_same_field(field, p.field());
      if (p.degree() > d) throw std::invalid_argument("family polynomial exceeds the degree bound");
    }
  }
}

nlohmann::json RowColFamily::to_json() const { return {{"rows", poly_list(rows, d)}, {"cols", poly_list(cols, d)}}; }

RowColFamily RowColFamily::from_json(const FieldPtr& field, int d, const nlohmann::json& j) {
  RowColFamily fam;
  fam.field = field;
  fam.d = d;
  auto read = [&](const nlohmann::json& list, std::vector<UniPoly>& out) {
    for (const auto& coeffs : list) {
      std::vector<Elem> c;
      for (const auto& v : coeffs) c.push_back(field->from_index(v.get<std::uint64_t>()));
      out.emplace_back(field, std::move(c));
    }
  };
  read(j.at("rows"), fam.rows);
  read(j.at("cols"), fam.cols);
  fam.validate();
  return fam;
}

Elem BivariatePoly::eval(Elem x, Elem y) const {
  const FieldSpec& F = *field;
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  Elem acc{0};
  for (std::size_t a = k; a-- > 0;) {
    Elem inner{0};
    for (std::size_t b = k; b-- > 0;) inner = F.add(F.mul(inner, y), coeffs[a * k + b]);
    acc = F.add(F.mul(acc, x), inner);
  }
  return acc;
}

UniPoly BivariatePoly::row(Elem i) const {
  const FieldSpec& F = *field;
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  std::vector<Elem> out(k, Elem{0});
  for (std::size_t b = 0; b < k; ++b) {
    Elem acc{0};
    for (std::size_t a = k; a-- > 0;) acc = F.add(F.mul(acc, i), coeffs[a * k + b]);
    out[b] = acc;
  }
  return UniPoly(field, std::move(out));
}

UniPoly BivariatePoly::col(Elem j) const {
  const FieldSpec& F = *field;
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  std::vector<Elem> out(k, Elem{0});
  for (std::size_t a = 0; a < k; ++a) {
    Elem acc{0};
    for (std::size_t b = k; b-- > 0;) acc = F.add(F.mul(acc, j), coeffs[a * k + b]);
    out[a] = acc;
  }
  return UniPoly(field, std::move(out));
}

RowColFamily family_of(const BivariatePoly& q) {
  RowColFamily fam;
  fam.field = q.field;
  fam.d = q.d;
  for (Elem e : q.field->elements()) {
    fam.rows.push_back(q.row(e));
    fam.cols.push_back(q.col(e));
  }
  return fam;
}

BivariatePoly random_bivariate(const FieldPtr& field, int d, Rng& rng) {
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  BivariatePoly q{field, d, std::vector<Elem>(k * k)};
  for (auto& c : q.coeffs) c = Elem{static_cast<std::uint32_t>(rng.below(field->q()))};
  return q;
}

RowColFamily corrupt_family(const BivariatePoly& q0, const std::vector<std::uint32_t>& bad_rows,
                            const std::vector<std::uint32_t>& bad_cols, Rng& rng) {
  RowColFamily fam = family_of(q0);
  const std::size_t k = static_cast<std::size_t>(q0.d) + 1;
  auto replace = [&](UniPoly& target) {
    for (;;) {
      std::vector<Elem> c(k);
      for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng.below(q0.field->q()))};
      UniPoly fresh(q0.field, std::move(c));
      if (!(fresh == target)) {
        target = std::move(fresh);
        return;
      }
    }
  };
  for (auto i : bad_rows) replace(fam.rows.at(i));
  for (auto j : bad_cols) replace(fam.cols.at(j));
  return fam;
}

Rational rowcol_disagreement(const RowColFamily& fam) {
  fam.validate();
  const std::uint32_t q = fam.field->q();
  std::uint64_t bad = 0;
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) bad += fam.rows[i].eval(Elem{j}) != fam.cols[j].eval(Elem{i});
  }
  return ratio(bad, static_cast<std::uint64_t>(q) * q);
}

BivariateFit score_candidate(const RowColFamily& fam, const BivariatePoly& poly) {
  fam.validate();
  const Scorer scorer(fam);
  const auto [rows, cols] = scorer.score(poly.coeffs, UINT64_MAX);
  const std::uint32_t q = fam.field->q();
  return BivariateFit{poly, rows, cols, ratio(rows, q), ratio(cols, q), 0};
}

BivariateFit fit_bivariate(const RowColFamily& fam, std::uint64_t subset_cap) {
  fam.validate();
  const FieldSpec& F = *fam.field;
  const std::uint32_t q = F.q();
  const std::size_t k = static_cast<std::size_t>(fam.d) + 1;
  if (q < 2 * k) throw std::invalid_argument("fit_bivariate requires q >= 2(d+1)");

  const Scorer scorer(fam);
  std::vector<std::uint32_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = static_cast<std::uint32_t>(i);

  std::optional<BivariateFit> best;
  std::uint64_t best_total = UINT64_MAX;
  std::vector<Elem> cand(k * k);
  std::uint64_t examined = 0;
  while (examined < subset_cap) {
    ++examined;
    // Q(X, Y) = sum_s L_s(X) r_s(Y) over the subset's nodes.
    std::fill(cand.begin(), cand.end(), Elem{0});
    std::vector<Elem> nodes(k);
    for (std::size_t i = 0; i < k; ++i) nodes[i] = Elem{subset[i]};
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<Elem> basis_values(k, Elem{0});
      basis_values[s] = FieldSpec::one();
      const UniPoly basis = interpolate_uni(fam.field, nodes, basis_values);
      const UniPoly& r = fam.rows[subset[s]];
      for (std::size_t a = 0; a < k; ++a) {
        const Elem la = basis.coeff(a);
        if (la.idx == 0) continue;
        for (std::size_t b = 0; b < k; ++b) cand[a * k + b] = F.add(cand[a * k + b], F.mul(la, r.coeff(b)));
      }
    }
    if (!best || cand != best->poly.coeffs) {
      const auto [rows, cols] = scorer.score(cand, best_total);
      if (rows + cols < best_total) {
        best_total = rows + cols;
        best = BivariateFit{BivariatePoly{fam.field, fam.d, cand}, rows, cols, ratio(rows, q), ratio(cols, q), 0};
        if (best_total == 0) break;
      }
    }
    // next (d+1)-subset in colex order
    std::size_t i = 0;
    while (i < k && subset[i] + 1 == (i + 1 < k ? subset[i + 1] : q)) ++i;
    if (i == k) break;
    ++subset[i];
    for (std::size_t j = 0; j < i; ++j) subset[j] = static_cast<std::uint32_t>(j);
  }
  best->subsets_examined = examined;
  if (best->x > Rational(1, 2) || best->y > Rational(1, 2)) {
    throw NoCandidate("no candidate with at most half bad rows and columns within " + std::to_string(subset_cap) +
                      " subsets");
  }
  return *best;
}

nlohmann::json StrengthenReport::to_json() const {
  nlohmann::json j = {{"disagreement", to_string(disagreement)},
                      {"epsilon", to_string(epsilon)},
                      {"hypothesis_met", hypothesis_met},
                      {"conclusion_ok", conclusion_ok},
                      {"chain_lower_bound", to_string(chain_lower_bound)},
                      {"chain_ok", chain_ok}};
  if (fit) {
    j["x"] = to_string(fit->x);
    j["y"] = to_string(fit->y);
    j["bad_rows"] = fit->bad_rows;
    j["bad_cols"] = fit->bad_cols;
    j["subsets_examined"] = fit->subsets_examined;
  } else {
    j["x"] = nullptr;
    j["y"] = nullptr;
  }
  return j;
}

StrengthenReport strengthen_check(const RowColFamily& fam, const Rational& epsilon, std::uint64_t subset_cap) {
  fam.validate();
  const std::uint32_t q = fam.field->q();
  const Rational slack(fam.d, q);
  if (epsilon < slack) throw std::invalid_argument("strengthen_check requires epsilon >= d/q");

  StrengthenReport r;
  r.disagreement = rowcol_disagreement(fam);
  r.epsilon = epsilon;
  r.hypothesis_met = r.disagreement <= Rational(1, 4) - epsilon;
  try {
    r.fit = fit_bivariate(fam, subset_cap);
  } catch (const NoCandidate&) {
    r.fit.reset();
  }
  if (r.fit) {
    const Rational x = r.fit->x;
    const Rational y = r.fit->y;
    r.chain_lower_bound = x * (Rational(1) - y - slack) + y * (Rational(1) - x - slack);
    r.chain_ok = r.chain_lower_bound <= r.disagreement;
  }
  if (r.hypothesis_met) {
    r.conclusion_ok = r.fit && r.fit->x <= Rational(1, 4) && r.fit->y <= Rational(1, 4);
  }
  return r;
}

}  // namespace lowdeg
