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
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace lowdeg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

const std::vector<std::string>& commands();

struct RunConfig {
  std::string command;
  std::uint32_t p = 2;
  std::uint32_t s = 1;
  std::size_t m = 2;
  int d = 1;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t instance_seed = 0;
  std::uint64_t samples = 0;  // char-census: random search instead of enumeration when > 0
  std::string corrupt = "0";  // fraction "a/b" or "0.05", or "point:INDEX:VALUE"
  std::string epsilon;        // bivariate-check; empty means d/q
  std::uint64_t budget = 0;   // 0 means LOWDEG_BUDGET or the default
  std::string format = "json";
  std::string output;         // empty or "-" is stdout
  std::string input;          // empty means generate; "-" is stdin
  std::string backend = "exact";
  unsigned workers = 0;

  /// Throws std::invalid_argument on unknown commands or bad values.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Runs one command and writes its report. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err, std::istream& in);

/// Parses argv and runs; usage errors give kExitUsage.
int main(int argc, char** argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace lowdeg::cli
