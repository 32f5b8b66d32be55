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

#include "lowdeg/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace lowdeg {

nlohmann::json field_to_json(const FieldSpec& field) {
  return {{"p", field.p()}, {"s", field.s()}, {"modulus", field.modulus()}};
}

FieldPtr field_from_json(const nlohmann::json& j) {
  const auto p = j.at("p").get<std::uint32_t>();
  if (j.contains("modulus")) return FieldSpec::make(p, j.at("modulus").get<std::vector<std::uint32_t>>());
  return FieldSpec::make(p, j.at("s").get<std::uint32_t>());
}

nlohmann::json poly_to_json(const MultiPoly& g) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [exps, c] : g.terms()) out.push_back({{"exps", exps}, {"coeff", c.idx}});
  return out;
}

MultiPoly poly_from_json(const FieldPtr& field, std::size_t arity, const nlohmann::json& j) {
  MultiPoly g(field, arity);
  for (const auto& term : j) {
    auto exps = term.at("exps").get<Exponents>();
    if (exps.size() != arity) throw FieldMismatch("monomial arity differs from the polynomial's");
    g.add_term(exps, field->from_index(term.at("coeff").get<std::uint64_t>()));
  }
  return g;
}

void write_table(std::ostream& out, const FunctionTable& f) {
  const FieldSpec& F = *f.field();
  out << F.p() << ' ' << F.s() << ' ' << f.arity() << '\n';
  const auto& mod = F.modulus();
  for (std::size_t i = 0; i < mod.size(); ++i) out << (i ? " " : "") << mod[i];
  out << '\n';
  for (Elem v : f.values()) out << v.idx << '\n';
}

FunctionTable read_table(std::istream& in) {
  std::string line;
  std::uint32_t p = 0;
  std::uint32_t s = 0;
  std::size_t m = 0;
  if (!std::getline(in, line) || !(std::istringstream(line) >> p >> s >> m)) {
    throw std::invalid_argument("table header must be \"p s m\"");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("table is missing the modulus line");
  std::vector<std::uint32_t> modulus;
  std::istringstream mods(line);
  for (std::uint32_t c = 0; mods >> c;) modulus.push_back(c);
  const FieldPtr field = FieldSpec::make(p, std::move(modulus));
  if (field->s() != s) throw std::invalid_argument("modulus degree differs from s");
  FunctionTable f(field, m);
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    std::uint64_t v = 0;
    if (!(in >> v)) throw std::invalid_argument("table ends early at point " + std::to_string(i));
    f.set(i, field->from_index(v));
  }
  return f;
}

}  // namespace lowdeg
