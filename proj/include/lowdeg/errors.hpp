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

#include <stdexcept>
#include <string>

namespace lowdeg {

// Operands belong to different fields, or shapes (arity, length) disagree.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in finite field") {}
};

// An exhaustive computation would exceed the configured enumeration cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unique decoding found no polynomial above the (q+d)/2 agreement threshold.
class NoUniqueFit : public std::runtime_error {
 public:
  NoUniqueFit() : std::runtime_error("no degree-d polynomial exceeds the unique decoding threshold") {}
};

class NoCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lowdeg
