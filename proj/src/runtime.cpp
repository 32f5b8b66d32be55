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

#include "lowdeg/runtime.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <stdexcept>

#include "lowdeg/rational.hpp"

namespace lowdeg {

namespace {

std::atomic<unsigned> g_workers{0};

}  // namespace

std::uint64_t default_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("LOWDEG_BUDGET")) {
      try {
        return static_cast<std::uint64_t>(std::stoull(env));
      } catch (const std::exception&) {
        // fall through to the default on malformed input
      }
    }
    return kDefaultBudget;
  }();
  return budget;
}

void require_budget(std::uint64_t count, std::uint64_t budget, const std::string& what) {
  if (count > budget) {
    throw BudgetExceeded(what + " needs " + std::to_string(count) + " steps, budget is " + std::to_string(budget));
  }
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void set_worker_count(unsigned workers) { g_workers.store(workers); }

unsigned worker_count() {
  const unsigned w = g_workers.load();
  if (w != 0) return w;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::uint64_t n, unsigned chunks,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  chunks = std::max(1u, chunks);
  if (chunks == 1 || n < 2) {
    body(0, n, 0);
    for (unsigned c = 1; c < chunks; ++c) body(n, n, c);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t begin = n * c / chunks;
    const std::uint64_t end = n * (c + 1) / chunks;
    threads.emplace_back([&, begin, end, c] {
      try {
        body(begin, end, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Rational parse_rational(const std::string& text) {
  auto integer = [&](const std::string& part) -> std::int64_t {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(part, &used);
    if (used != part.size()) throw std::invalid_argument("trailing characters");
    return v;
  };
  try {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      const auto den = integer(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(integer(text.substr(0, slash)), den);
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("bad decimal");
      }
      const std::string whole = text.substr(0, dot);
      const bool negative = !whole.empty() && whole[0] == '-';
      const std::int64_t scale = static_cast<std::int64_t>(ipow(10, static_cast<std::uint32_t>(frac.size())));
      const std::int64_t w = whole.empty() || whole == "-" ? 0 : integer(whole);
      const std::int64_t f = integer(frac);
      return Rational(w * scale + (negative ? -f : f), scale);
    }
    return Rational(integer(text));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

}  // namespace lowdeg
