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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bvec/errors.hpp"

namespace bvec {

/// Fixed-width binary code, bit-packed into 64-bit words.
///
/// Bits are little-endian within words: logical bit i lives in
/// word[i / 64] at position (i % 64). Trailing pad bits of the last word
/// are zero at all times, so word-level equality and XOR+popcount scans
/// need no masking.
class BinaryCode {
 public:
  static constexpr std::size_t kWordBits = 64;

  /// All-zero code of the given width. Width must be >= 1.
  explicit BinaryCode(std::size_t nbits)
      : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {
    if (nbits == 0) throw InvalidConfig("BinaryCode: nbits must be >= 1");
  }

  std::size_t nbits() const noexcept { return nbits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool get_bit(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  void set_bit(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  /// Number of set bits.
  std::size_t popcount() const noexcept {
    std::size_t count = 0;
    for (std::uint64_t w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

  // Canonical padding makes word equality identical to logical equality.
  bool operator==(const BinaryCode& other) const noexcept {
    return nbits_ == other.nbits_ && words_ == other.words_;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= nbits_) throw std::out_of_range("BinaryCode: bit index out of range");
  }

  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

/// Packs a {0,1} sequence into a code. Rejects empty input and values
/// other than 0 or 1.
inline BinaryCode pack(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw InvalidConfig("pack: empty bit sequence");
  BinaryCode code(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InvalidConfig("pack: bit values must be 0 or 1");
    if (bits[i]) code.set_bit(i, true);
  }
  return code;
}

inline BinaryCode pack(const std::vector<std::uint8_t>& bits) {
  return pack(std::span<const std::uint8_t>(bits));
}

/// Inverse of pack.
inline std::vector<std::uint8_t> unpack(const BinaryCode& code) {
  std::vector<std::uint8_t> bits(code.nbits());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = code.get_bit(i) ? 1 : 0;
  }
  return bits;
}

/// Number of disagreeing bit positions. Word-wise XOR + popcount; the
/// zero-padding invariant keeps pad bits out of the count.
inline std::size_t hamming(const BinaryCode& a, const BinaryCode& b) {
  if (a.nbits() != b.nbits()) {
    throw DimensionMismatch("hamming: code widths differ");
  }
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t count = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    count += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return count;
}

}  // namespace bvec
