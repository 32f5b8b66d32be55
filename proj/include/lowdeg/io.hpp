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

#include <iosfwd>

#include "json.hpp"
#include "lowdeg/poly.hpp"

namespace lowdeg {

/// {"p": p, "s": s, "modulus": [c_0, ..., c_s]}.
nlohmann::json field_to_json(const FieldSpec& field);
FieldPtr field_from_json(const nlohmann::json& j);

/// [{"exps": [e_1, ..., e_m], "coeff": canonical_index}, ...] in exponent
/// order.
nlohmann::json poly_to_json(const MultiPoly& g);
MultiPoly poly_from_json(const FieldPtr& field, std::size_t arity, const nlohmann::json& j);

/// Line 1 "p s m", line 2 the modulus coefficients, then one canonical index
/// per point in point-index order.
void write_table(std::ostream& out, const FunctionTable& f);
/// Throws std::invalid_argument on malformed input.
FunctionTable read_table(std::istream& in);

}  // namespace lowdeg
