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

// Reproducible randomness. All stochastic pieces of the library (hyperplane
// sampling, weight init, synthetic data, triplet sampling, batch shuffling)
// draw from GaussianRng so that a (seed, draw-order) pair pins the result
// bit-for-bit across runs.
//
// Generator: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Gaussian deviates use an explicit Box-Muller transform over
// 53-bit uniforms; std::normal_distribution is implementation-defined and
// would break reproducibility across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "bvec/errors.hpp"

namespace bvec {

/// SplitMix64 finalizer (Steele/Lea/Flood mixer, as used by java.util
/// SplittableRandom). Bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent child seed for stream `index` of a parent seed.
/// Used wherever work is split into independently seeded pieces (per-block
/// training streams, per-stage pipeline seeds) so that the pieces can run
/// in any order, or in parallel, without changing results.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Deterministic source of uniform and standard-normal deviates.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64-bit engine output.
  std::uint64_t raw() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal deviate. Box-Muller, one cached mate per pair.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Unbiased uniform integer in [0, bound). Rejection over the raw stream.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidConfig("uniform_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bvec
