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

#include <cstdint>
#include <limits>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "bvec/bit_allocation.hpp"
#include "bvec/errors.hpp"
#include "bvec/rng.hpp"

namespace {

using bvec::hamlearn::BitAllocation;
using bvec::hamlearn::allocate_bits;

// Reference allocation in 128-bit arithmetic, ceil spelled as quotient plus
// remainder test rather than the rounded-up-numerator form the library uses.
std::vector<std::uint32_t> oracle_counts(std::size_t dim, std::size_t bits) {
  std::vector<std::uint32_t> counts(dim);
  const unsigned __int128 denom =
      static_cast<unsigned __int128>(dim) * (static_cast<unsigned __int128>(dim) + 1);
  for (std::size_t i = 1; i <= dim; ++i) {
    const unsigned __int128 numer = static_cast<unsigned __int128>(2) * bits *
                                    (static_cast<unsigned __int128>(dim) + 1 - i);
    unsigned __int128 q = numer / denom;
    if (numer % denom != 0) ++q;
    counts[i - 1] = static_cast<std::uint32_t>(q);
  }
  return counts;
}

void check_invariants(const BitAllocation& a, std::size_t dim, std::size_t bits) {
  REQUIRE(a.counts.size() == dim);
  REQUIRE(a.nominal_bits == bits);
  std::size_t total = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    REQUIRE(a.counts[i] >= 1);
    if (i > 0) REQUIRE(a.counts[i] <= a.counts[i - 1]);
    total += a.counts[i];
  }
  REQUIRE(a.actual_bits == total);
  REQUIRE(a.actual_bits >= a.nominal_bits);
  REQUIRE(a.actual_bits - a.nominal_bits < dim);
}

}  // namespace

TEST_CASE("allocate_bits matches hand-computed small cases", "[allocation]") {
  const BitAllocation a = allocate_bits(4, 10);
  REQUIRE(a.counts == std::vector<std::uint32_t>{4, 3, 2, 1});
  REQUIRE(a.nominal_bits == 10);
  REQUIRE(a.actual_bits == 10);

  const BitAllocation b = allocate_bits(3, 3);
  REQUIRE(b.counts == std::vector<std::uint32_t>{2, 1, 1});
  REQUIRE(b.actual_bits == 4);

  const BitAllocation c = allocate_bits(1, 1);
  REQUIRE(c.counts == std::vector<std::uint32_t>{1});
  REQUIRE(c.actual_bits == 1);
}

TEST_CASE("allocate_bits endpoints at the reference operating point", "[allocation]") {
  const BitAllocation a = allocate_bits(150, 900);
  REQUIRE(a.counts.front() == 12);
  REQUIRE(a.counts.back() == 1);
  check_invariants(a, 150, 900);
}

TEST_CASE("allocate_bits pre-ceiling shares sum exactly to the budget", "[allocation]") {
  // sum_i 2 b (D + 1 - i) telescopes to b D (D + 1), i.e. b times the
  // denominator; verified in exact arithmetic for a spread of shapes.
  for (const auto& [dim, bits] :
       {std::pair<std::size_t, std::size_t>{1, 7}, {4, 10}, {37, 256}, {150, 900},
        {500, 5000}, {499, 1}}) {
    const unsigned __int128 denom =
        static_cast<unsigned __int128>(dim) * (static_cast<unsigned __int128>(dim) + 1);
    unsigned __int128 numer_sum = 0;
    for (std::size_t i = 1; i <= dim; ++i) {
      numer_sum += static_cast<unsigned __int128>(2) * bits *
                   (static_cast<unsigned __int128>(dim) + 1 - i);
    }
    REQUIRE(numer_sum == static_cast<unsigned __int128>(bits) * denom);
  }
}

TEST_CASE("allocate_bits agrees with the 128-bit oracle on random shapes", "[allocation]") {
  bvec::GaussianRng rng(20260822);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform_below(500));
    const std::size_t bits = 1 + static_cast<std::size_t>(rng.uniform_below(5000));
    const BitAllocation a = allocate_bits(dim, bits);
    REQUIRE(a.counts == oracle_counts(dim, bits));
    check_invariants(a, dim, bits);
  }
}

TEST_CASE("allocate_bits rejects bad shapes", "[allocation]") {
  REQUIRE_THROWS_AS(allocate_bits(0, 10), bvec::InvalidConfig);
  REQUIRE_THROWS_AS(allocate_bits(10, 0), bvec::InvalidConfig);
  REQUIRE_THROWS_AS(allocate_bits(4, std::numeric_limits<std::size_t>::max() / 2),
                    bvec::InvalidConfig);
}
