// Copyright 2026 The bvec Authors
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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "bvec/errors.hpp"

namespace bvec::hamlearn {

/// Per-dimension bit budget for block training. Low dimensions get more
/// bits, descending linearly: dimension i (1-based) receives
/// ceil(2*b*(D+1-i) / (D*(D+1))) bits. The pre-ceil budgets sum to exactly
/// b; the ceil rounds each dimension up, so the realized total can exceed
/// the request by at most D-1. Both totals are kept.
struct BitAllocation {
  std::vector<std::uint32_t> counts;  // T_1..T_D, nonincreasing
  std::size_t nominal_bits = 0;       // requested b
  std::size_t actual_bits = 0;        // sum of counts
};

inline BitAllocation allocate_bits(std::size_t dim, std::size_t nominal_bits) {
  if (dim == 0 || nominal_bits == 0) {
    throw InvalidConfig("allocate_bits: dim and bits must be >= 1");
  }
  const std::uint64_t denom =
      static_cast<std::uint64_t>(dim) * (static_cast<std::uint64_t>(dim) + 1);
  if (nominal_bits > std::numeric_limits<std::uint64_t>::max() / (2 * (dim + 1))) {
    throw InvalidConfig("allocate_bits: bit budget too large");
  }
  BitAllocation alloc;
  alloc.nominal_bits = nominal_bits;
  alloc.counts.resize(dim);
  for (std::size_t i = 1; i <= dim; ++i) {
    const std::uint64_t numer =
        2 * static_cast<std::uint64_t>(nominal_bits) * (dim + 1 - i);
    alloc.counts[i - 1] = static_cast<std::uint32_t>((numer + denom - 1) / denom);
  }
  alloc.actual_bits = std::accumulate(alloc.counts.begin(), alloc.counts.end(),
                                      std::size_t{0});
  return alloc;
}

}  // namespace bvec::hamlearn
