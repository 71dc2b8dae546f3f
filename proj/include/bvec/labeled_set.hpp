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

// Parallel-array containers tying utterance ids and speaker labels to their
// representations. Kept as open structs so pipelines can assemble them
// incrementally; validate() enforces the invariants before use.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bvec/binary_code.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"

namespace bvec {

/// Utterance collection: ids unique, labels parallel, vectors of one
/// common dimension.
struct LabeledVectorSet {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<DenseVector> vectors;

  std::size_t size() const noexcept { return ids.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().dim(); }

  void validate() const {
    if (ids.size() != labels.size() || ids.size() != vectors.size()) {
      throw InvalidConfig("LabeledVectorSet: parallel arrays differ in length");
    }
    if (ids.empty()) throw InvalidConfig("LabeledVectorSet: empty set");
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw InvalidConfig("LabeledVectorSet: duplicate id '" + id + "'");
      }
    }
    const std::size_t d = vectors.front().dim();
    for (const auto& v : vectors) {
      if (v.dim() != d) {
        throw DimensionMismatch("LabeledVectorSet: inconsistent dimensions");
      }
    }
  }
};

/// Same shape for binary codes.
struct LabeledCodeSet {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<BinaryCode> codes;

  std::size_t size() const noexcept { return ids.size(); }
  std::size_t nbits() const { return codes.empty() ? 0 : codes.front().nbits(); }

  void validate() const {
    if (ids.size() != labels.size() || ids.size() != codes.size()) {
      throw InvalidConfig("LabeledCodeSet: parallel arrays differ in length");
    }
    if (ids.empty()) throw InvalidConfig("LabeledCodeSet: empty set");
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw InvalidConfig("LabeledCodeSet: duplicate id '" + id + "'");
      }
    }
    const std::size_t b = codes.front().nbits();
    for (const auto& c : codes) {
      if (c.nbits() != b) {
        throw DimensionMismatch("LabeledCodeSet: inconsistent code widths");
      }
    }
  }
};

}  // namespace bvec
