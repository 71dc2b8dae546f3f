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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "bvec/lsh.hpp"

namespace {

using bvec::AngleRadians;
using bvec::DenseVector;
using bvec::GaussianRng;
namespace lsh = bvec::lsh;

TEST_CASE("sample_model is deterministic in the seed", "[lsh]") {
  const auto a = lsh::sample_model(150, 300, 7);
  const auto b = lsh::sample_model(150, 300, 7);
  REQUIRE(a.planes().size() == b.planes().size());
  for (std::size_t i = 0; i < a.planes().size(); ++i) {
    REQUIRE(a.planes()[i] == b.planes()[i]);
  }
  CHECK(a.nbits() == 300);
  CHECK(a.dim_in() == 150);
  CHECK(a.seed() == 7);
}

TEST_CASE("sample_model rejects zero dims", "[lsh]") {
  CHECK_THROWS_AS(lsh::sample_model(0, 10, 1), bvec::InvalidConfig);
  CHECK_THROWS_AS(lsh::sample_model(10, 0, 1), bvec::InvalidConfig);
}

TEST_CASE("sampled entries have standard-normal moments", "[lsh]") {
  const auto model = lsh::sample_model(100, 100, 13);  // 10,000 draws
  double sum = 0.0;
  double sumsq = 0.0;
  for (double p : model.planes()) {
    sum += p;
    sumsq += p * p;
  }
  const double n = static_cast<double>(model.planes().size());
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("encode follows the sign rule, boundary inclusive", "[lsh]") {
  // Single plane r = (1, -2) against x = (3, 1): projection 1 -> bit set.
  const lsh::RandomHyperplaneModel single(2, 1, 0, {1.0, -2.0});
  CHECK(lsh::encode(single, DenseVector{3.0, 1.0}).get_bit(0));

  // Exactly zero projection maps to 1.
  const lsh::RandomHyperplaneModel edge(2, 1, 0, {1.0, -1.0});
  CHECK(lsh::encode(edge, DenseVector{1.0, 1.0}).get_bit(0));

  // Strictly negative projection maps to 0.
  CHECK_FALSE(lsh::encode(single, DenseVector{-3.0, 1.0}).get_bit(0));

  CHECK_THROWS_AS(lsh::encode(single, DenseVector{1.0, 2.0, 3.0}),
                  bvec::DimensionMismatch);
}

TEST_CASE("encode is invariant under positive scaling and flips under negation",
          "[lsh]") {
  GaussianRng rng(99);
  const auto model = lsh::sample_model(40, 96, 5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> raw(40);
    for (auto& v : raw) v = rng.gaussian();
    const DenseVector x(raw);
    std::vector<double> scaled(40);
    std::vector<double> negated(40);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      scaled[i] = 2.5 * raw[i];
      negated[i] = -raw[i];
    }
    const auto cx = lsh::encode(model, x);
    CHECK(cx == lsh::encode(model, DenseVector(scaled)));
    // Generic x has no exactly-zero projections, so negation flips all bits.
    CHECK(bvec::hamming(cx, lsh::encode(model, DenseVector(negated))) ==
          model.nbits());
  }
}

TEST_CASE("collision_probability closed form", "[lsh]") {
  CHECK(lsh::collision_probability(AngleRadians(0.0)) == 1.0);
  CHECK(lsh::collision_probability(AngleRadians(std::numbers::pi)) == 0.0);
  CHECK(lsh::collision_probability(AngleRadians(std::numbers::pi / 2)) ==
        Catch::Approx(0.5).margin(1e-15));
  // Monotone decreasing in theta.
  double prev = 1.1;
  for (double t = 0.0; t <= 3.14; t += 0.1) {
    const double p = lsh::collision_probability(AngleRadians(t));
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("single-bit agreement rate tracks 1 - theta/pi", "[lsh]") {
  // Smoke-scale version of the collision-law measurement; the acceptance
  // suite runs the full-size one.
  const std::size_t dim = 8;
  const int n_models = 20000;
  for (double theta : {0.5, 1.5}) {
    std::vector<double> a(dim, 0.0);
    std::vector<double> b(dim, 0.0);
    a[0] = 1.0;
    b[0] = std::cos(theta);
    b[1] = std::sin(theta);
    const DenseVector va(a);
    const DenseVector vb(b);
    int agree = 0;
    for (int m = 0; m < n_models; ++m) {
      const auto model = lsh::sample_model(dim, 1, 1000003ULL * m + 17);
      if (lsh::encode(model, va).get_bit(0) == lsh::encode(model, vb).get_bit(0)) {
        ++agree;
      }
    }
    const double rate = static_cast<double>(agree) / n_models;
    const double expected = 1.0 - theta / std::numbers::pi;
    CHECK(std::abs(rate - expected) < 0.015);
  }
}

}  // namespace
