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

// Random-hyperplane binary embedding. Each output bit is the sign of the
// input's projection onto an independent Gaussian direction; two inputs at
// angle theta agree on a given bit with probability 1 - theta/pi, which is
// the property the whole scheme rests on (and the one the tests measure).

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "bvec/binary_code.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/rng.hpp"

namespace bvec::lsh {

/// A sampled set of random hyperplanes: nbits rows of dimension dim_in,
/// row-major. Rows are left unnormalized; the encoded sign is invariant to
/// row scale. Immutable after sampling; safe to share across threads.
class RandomHyperplaneModel {
 public:
  RandomHyperplaneModel(std::size_t dim_in, std::size_t nbits, std::uint64_t seed,
                        std::vector<double> planes)
      : dim_in_(dim_in), nbits_(nbits), seed_(seed), planes_(std::move(planes)) {
    if (dim_in == 0 || nbits == 0) {
      throw InvalidConfig("RandomHyperplaneModel: dims and bits must be >= 1");
    }
    if (planes_.size() != dim_in * nbits) {
      throw InvalidConfig("RandomHyperplaneModel: plane matrix shape mismatch");
    }
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t nbits() const noexcept { return nbits_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::span<const double> planes() const noexcept { return planes_; }
  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(planes_).subspan(j * dim_in_, dim_in_);
  }

 private:
  std::size_t dim_in_;
  std::size_t nbits_;
  std::uint64_t seed_;
  std::vector<double> planes_;  // row-major nbits x dim_in
};

/// Samples nbits hyperplanes with i.i.d. standard-normal entries, row-major
/// draw order. The generator is GaussianRng (mt19937_64 + Box-Muller), so a
/// model is fully reproducible from (dim_in, nbits, seed).
inline RandomHyperplaneModel sample_model(std::size_t dim_in, std::size_t nbits,
                                          std::uint64_t seed) {
  if (dim_in == 0 || nbits == 0) {
    throw InvalidConfig("sample_model: dims and bits must be >= 1");
  }
  GaussianRng rng(seed);
  std::vector<double> planes(dim_in * nbits);
  for (auto& p : planes) p = rng.gaussian();
  return RandomHyperplaneModel(dim_in, nbits, seed, std::move(planes));
}

/// Bit j = 1 iff row_j . x >= 0. The boundary maps to 1, which keeps the
/// encoding exactly invariant under positive scaling of x.
inline BinaryCode encode(const RandomHyperplaneModel& model, const DenseVector& x) {
  if (x.dim() != model.dim_in()) {
    throw DimensionMismatch("lsh::encode: input dimension mismatch");
  }
  BinaryCode code(model.nbits());
  for (std::size_t j = 0; j < model.nbits(); ++j) {
    if (dot(model.row(j), x.values()) >= 0.0) code.set_bit(j, true);
  }
  return code;
}

/// Probability that a single random-hyperplane bit agrees for two vectors
/// at the given angle: 1 - theta/pi.
inline double collision_probability(AngleRadians theta) {
  return 1.0 - theta.value() / std::numbers::pi;
}

}  // namespace bvec::lsh
