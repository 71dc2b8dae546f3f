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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "bvec/errors.hpp"

namespace bvec {

/// Continuous speaker embedding: a finite real vector of dimension >= 1.
/// Immutable after construction; scoring loops expect callers to normalize
/// once up front rather than paying per-comparison normalization.
class DenseVector {
 public:
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidConfig("DenseVector: dimension must be >= 1");
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidConfig("DenseVector: non-finite element");
    }
  }
  DenseVector(std::initializer_list<double> values)
      : DenseVector(std::vector<double>(values)) {}

  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const DenseVector& other) const noexcept {
    return values_ == other.values_;
  }

 private:
  std::vector<double> values_;
};

/// Angle in radians, restricted to [0, pi].
class AngleRadians {
 public:
  explicit AngleRadians(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
      throw InvalidConfig("AngleRadians: theta must lie in [0, pi]");
    }
  }
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double euclidean_norm(std::span<const double> v) {
  return std::sqrt(dot(v, v));
}

/// Scales to unit Euclidean norm, preserving direction.
inline DenseVector normalize(const DenseVector& v) {
  const double norm = euclidean_norm(v.values());
  if (norm == 0.0) throw DegenerateInput("normalize: zero vector");
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] / norm;
  return DenseVector(std::move(out));
}

/// Cosine similarity a.b / (|a||b|), clamped into [-1, 1] so downstream
/// acos never sees a rounding overshoot.
inline double cosine(const DenseVector& a, const DenseVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("cosine: dimensions differ");
  }
  const double na = euclidean_norm(a.values());
  const double nb = euclidean_norm(b.values());
  if (na == 0.0 || nb == 0.0) throw DegenerateInput("cosine: zero vector");
  const double c = dot(a.values(), b.values()) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

inline AngleRadians angle_between(const DenseVector& a, const DenseVector& b) {
  return AngleRadians(std::acos(cosine(a, b)));
}

}  // namespace bvec
