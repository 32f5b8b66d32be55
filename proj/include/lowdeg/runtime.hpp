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
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "lowdeg/errors.hpp"

namespace lowdeg {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Enumeration cap for exhaustive computations: LOWDEG_BUDGET if set,
/// otherwise 10^6.
std::uint64_t default_budget();

/// Throws BudgetExceeded when count > budget.
void require_budget(std::uint64_t count, std::uint64_t budget, const std::string& what);

/// Saturating integer power.
std::uint64_t ipow(std::uint64_t base, std::uint32_t exp);

/// Worker count used by the parallel kernels; 0 means hardware concurrency.
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Splits [0, n) into contiguous chunks, runs body(begin, end, chunk_index)
/// on the worker pool, and returns once all chunks finish. Chunk boundaries
/// depend only on n and the chunk count, never on timing, so per-chunk
/// results merged in chunk order are deterministic.
void parallel_chunks(std::uint64_t n, unsigned chunks,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body);

/// Sums body(i) over [0, n) in parallel. Integer addition makes the result
/// independent of the chunking.
template <class Body>
std::uint64_t parallel_count(std::uint64_t n, Body&& body) {
  const unsigned chunks = std::max(1u, worker_count());
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(n, chunks, [&](std::uint64_t begin, std::uint64_t end, unsigned c) {
    std::uint64_t acc = 0;
    for (std::uint64_t i = begin; i < end; ++i) acc += body(i);
    partial[c] = acc;
  });
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace lowdeg
