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
#include <stdexcept>
#include <string>

namespace bvec {

/// Root of the library's error hierarchy. Everything bvec throws derives
/// from this, so callers can catch one type at the boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is mathematically unusable (zero vector where a direction is needed).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Two operands whose dimensions/widths must agree do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A parameter or configuration value violates its contract.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Training or scoring produced a non-finite value.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A trial referenced an identifier absent from the backing store.
class MissingVector : public Error {
 public:
  explicit MissingVector(const std::string& id)
      : Error("no vector for id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Malformed input file. Carries the 1-based line number of the offence.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Model file failed its integrity check (bad checksum, truncation).
class CorruptModel : public Error {
 public:
  using Error::Error;
};

}  // namespace bvec
