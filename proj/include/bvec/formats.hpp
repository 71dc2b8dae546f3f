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

// File formats. All are line-oriented text, single-space separated, LF
// endings, doubles printed to 17 significant digits (lossless for IEEE
// doubles):
//
//   vectors   "BVEC 1 <count> <dim>" then per row
//             "<utt_id> <speaker_id> v1 ... vD"
//   codes     "BCODE 1 <count> <nbits>" then per row
//             "<utt_id> <speaker_id> <0/1 string of nbits chars>"
//   trials    "TRIALS 1" then per row
//             "<enroll_id> <test_id> <target|nontarget> [condition_label]"
//   models    "BMODEL 1 <lsh|full|block>", a metadata line, row-major
//             parameters, and a trailer "CRC32 <hex>" over every byte
//             before the trailer line.
//
// Parsers throw ParseError with a 1-based line number on malformed input
// and CorruptModel on failed integrity checks; they never crash on
// arbitrary bytes. Declared sizes are capped so hostile headers cannot
// trigger huge allocations.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bvec/binary_code.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/eval.hpp"
#include "bvec/hamlearn.hpp"
#include "bvec/labeled_set.hpp"
#include "bvec/lsh.hpp"

namespace bvec::io {

/// CRC-32 (IEEE 802.3, reflected, polynomial 0xEDB88320).
inline std::uint32_t crc32(std::string_view data) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xFFFFFFFFu;
  for (const char ch : data) {
    c = table[(c ^ static_cast<unsigned char>(ch)) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

enum class LshStorage { seed_only, matrix };

/// A deserialized model of any kind plus its recorded seed (generative for
/// seed-only LSH files, informational otherwise).
struct StoredModel {
  std::variant<lsh::RandomHyperplaneModel, hamlearn::FullLinearModel,
               hamlearn::BlockDiagonalModel>
      model;
  std::uint64_t seed = 0;
};

namespace detail {

// Declared counts/dims beyond this are rejected before any allocation.
inline constexpr std::size_t kMaxDeclared = 100'000'000;

class LineScanner {
 public:
  explicit LineScanner(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    ++line_no_;
    const std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) {
      line = text_.substr(pos_);
      pos_ = text_.size();
    } else {
      line = text_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
    }
    return true;
  }

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t space = line.find(' ', start);
    if (space == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, space - start));
    start = space + 1;
  }
  return fields;
}

inline bool parse_double(std::string_view t, double& out) {
  if (t.empty()) return false;
  const char* end = t.data() + t.size();
  const auto r = std::from_chars(t.data(), end, out);
  return r.ec == std::errc{} && r.ptr == end && std::isfinite(out);
}

inline bool parse_u64(std::string_view t, std::uint64_t& out) {
  if (t.empty()) return false;
  const char* end = t.data() + t.size();
  const auto r = std::from_chars(t.data(), end, out);
  return r.ec == std::errc{} && r.ptr == end;
}

inline bool parse_u64_hex(std::string_view t, std::uint64_t& out) {
  if (t.empty()) return false;
  const char* end = t.data() + t.size();
  const auto r = std::from_chars(t.data(), end, out, 16);
  return r.ec == std::errc{} && r.ptr == end;
}

inline bool parse_count(std::string_view t, std::size_t& out, std::size_t min_value) {
  std::uint64_t v = 0;
  if (!parse_u64(t, v) || v < min_value || v > kMaxDeclared) return false;
  out = static_cast<std::size_t>(v);
  return true;
}

inline void require_clean_line(std::string_view line, std::size_t line_no) {
  if (line.find('\r') != std::string_view::npos) {
    throw ParseError("carriage return in line (LF endings required)", line_no);
  }
}

// Tokens written into single-space formats must not break the format.
inline void check_token(std::string_view token, const char* what) {
  if (token.empty()) throw InvalidConfig(std::string(what) + " must be nonempty");
  if (token.find_first_of(" \t\r\n") != std::string_view::npos) {
    throw InvalidConfig(std::string(what) + " must not contain whitespace");
  }
}

inline void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read file: " + path);
  return std::move(buffer).str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw ParseError("cannot write file: " + path);
}

// Shared header check for BVEC/BCODE: returns (count, width).
inline std::pair<std::size_t, std::size_t> parse_set_header(LineScanner& scanner,
                                                            std::string_view magic) {
  std::string_view line;
  if (!scanner.next(line)) throw ParseError("empty file", 1);
  require_clean_line(line, scanner.line_no());
  const auto fields = split_fields(line);
  if (fields.size() != 4 || fields[0] != magic) {
    throw ParseError(std::string("expected header '") + std::string(magic) +
                         " 1 <count> <width>'",
                     scanner.line_no());
  }
  if (fields[1] != "1") throw ParseError("unsupported format version", scanner.line_no());
  std::size_t count = 0;
  std::size_t width = 0;
  if (!parse_count(fields[2], count, 1)) {
    throw ParseError("bad count in header", scanner.line_no());
  }
  if (!parse_count(fields[3], width, 1)) {
    throw ParseError("bad width in header", scanner.line_no());
  }
  return {count, width};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vectors (BVEC)

inline std::string format_vectors(const LabeledVectorSet& set) {
  set.validate();
  std::string out = "BVEC 1 " + std::to_string(set.size()) + " " +
                    std::to_string(set.dim()) + "\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    detail::check_token(set.ids[i], "utterance id");
    detail::check_token(set.labels[i], "speaker label");
    out += set.ids[i];
    out += ' ';
    out += set.labels[i];
    for (const double v : set.vectors[i].values()) {
      out += ' ';
      detail::append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

inline LabeledVectorSet parse_vectors(std::string_view content) {
  detail::LineScanner scanner(content);
  const auto [count, dim] = detail::parse_set_header(scanner, "BVEC");
  LabeledVectorSet set;
  std::set<std::string, std::less<>> seen;
  std::string_view line;
  std::vector<double> values(dim);
  for (std::size_t row = 0; row < count; ++row) {
    if (!scanner.next(line)) {
      throw ParseError("expected " + std::to_string(count) + " rows, got " +
                           std::to_string(row),
                       scanner.line_no());
    }
    detail::require_clean_line(line, scanner.line_no());
    const auto fields = detail::split_fields(line);
    if (fields.size() != 2 + dim) {
      throw ParseError("expected " + std::to_string(2 + dim) + " fields, got " +
                           std::to_string(fields.size()),
                       scanner.line_no());
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("empty id or label", scanner.line_no());
    }
    if (!seen.insert(std::string(fields[0])).second) {
      throw ParseError("duplicate utterance id '" + std::string(fields[0]) + "'",
                       scanner.line_no());
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!detail::parse_double(fields[2 + d], values[d])) {
        throw ParseError("bad value '" + std::string(fields[2 + d]) + "'",
                         scanner.line_no());
      }
    }
    set.ids.emplace_back(fields[0]);
    set.labels.emplace_back(fields[1]);
    set.vectors.emplace_back(values);
  }
  if (scanner.next(line)) throw ParseError("trailing data after last row", scanner.line_no());
  return set;
}

inline void write_vectors(const std::string& path, const LabeledVectorSet& set) {
  detail::write_file(path, format_vectors(set));
}

inline LabeledVectorSet read_vectors(const std::string& path) {
  return parse_vectors(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Codes (BCODE)

inline std::string format_codes(const LabeledCodeSet& set) {
  set.validate();
  std::string out = "BCODE 1 " + std::to_string(set.size()) + " " +
                    std::to_string(set.nbits()) + "\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    detail::check_token(set.ids[i], "utterance id");
    detail::check_token(set.labels[i], "speaker label");
    out += set.ids[i];
    out += ' ';
    out += set.labels[i];
    out += ' ';
    for (std::size_t j = 0; j < set.nbits(); ++j) {
      out += set.codes[i].get_bit(j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

inline LabeledCodeSet parse_codes(std::string_view content) {
  detail::LineScanner scanner(content);
  const auto [count, nbits] = detail::parse_set_header(scanner, "BCODE");
  LabeledCodeSet set;
  std::set<std::string, std::less<>> seen;
  std::string_view line;
  for (std::size_t row = 0; row < count; ++row) {
    if (!scanner.next(line)) {
      throw ParseError("expected " + std::to_string(count) + " rows, got " +
                           std::to_string(row),
                       scanner.line_no());
    }
    detail::require_clean_line(line, scanner.line_no());
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(fields.size()),
                       scanner.line_no());
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("empty id or label", scanner.line_no());
    }
    if (!seen.insert(std::string(fields[0])).second) {
      throw ParseError("duplicate utterance id '" + std::string(fields[0]) + "'",
                       scanner.line_no());
    }
    if (fields[2].size() != nbits) {
      throw ParseError("expected " + std::to_string(nbits) + " code characters",
                       scanner.line_no());
    }
    BinaryCode code(nbits);
    for (std::size_t j = 0; j < nbits; ++j) {
      const char c = fields[2][j];
      if (c != '0' && c != '1') {
        throw ParseError("code characters must be 0 or 1", scanner.line_no());
      }
      if (c == '1') code.set_bit(j, true);
    }
    set.ids.emplace_back(fields[0]);
    set.labels.emplace_back(fields[1]);
    set.codes.push_back(std::move(code));
  }
  if (scanner.next(line)) throw ParseError("trailing data after last row", scanner.line_no());
  return set;
}

inline void write_codes(const std::string& path, const LabeledCodeSet& set) {
  detail::write_file(path, format_codes(set));
}

inline LabeledCodeSet read_codes(const std::string& path) {
  return parse_codes(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Trials (TRIALS)

inline std::string format_trials(std::span<const eval::VerificationTrial> trials) {
  std::string out = "TRIALS 1\n";
  for (const auto& t : trials) {
    detail::check_token(t.enroll_id, "enroll id");
    detail::check_token(t.test_id, "test id");
    out += t.enroll_id;
    out += ' ';
    out += t.test_id;
    out += t.is_target ? " target" : " nontarget";
    if (!t.condition.empty()) {
      detail::check_token(t.condition, "condition label");
      out += ' ';
      out += t.condition;
    }
    out += '\n';
  }
  return out;
}

inline std::vector<eval::VerificationTrial> parse_trials(std::string_view content) {
  detail::LineScanner scanner(content);
  std::string_view line;
  if (!scanner.next(line)) throw ParseError("empty file", 1);
  detail::require_clean_line(line, scanner.line_no());
  if (line != "TRIALS 1") throw ParseError("expected header 'TRIALS 1'", scanner.line_no());
  std::vector<eval::VerificationTrial> trials;
  while (scanner.next(line)) {
    detail::require_clean_line(line, scanner.line_no());
    const auto fields = detail::split_fields(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("expected 3 or 4 fields, got " + std::to_string(fields.size()),
                       scanner.line_no());
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("empty id", scanner.line_no());
    }
    bool is_target = false;
    if (fields[2] == "target") {
      is_target = true;
    } else if (fields[2] == "nontarget") {
      is_target = false;
    } else {
      throw ParseError("trial class must be 'target' or 'nontarget'", scanner.line_no());
    }
    std::string condition;
    if (fields.size() == 4) {
      if (fields[3].empty()) throw ParseError("empty condition label", scanner.line_no());
      condition = std::string(fields[3]);
    }
    trials.push_back({std::string(fields[0]), std::string(fields[1]), is_target,
                      std::move(condition)});
  }
  return trials;
}

inline void write_trials(const std::string& path,
                         std::span<const eval::VerificationTrial> trials) {
  detail::write_file(path, format_trials(trials));
}

inline std::vector<eval::VerificationTrial> read_trials(const std::string& path) {
  return parse_trials(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Models (BMODEL)

namespace detail {

inline void append_row(std::string& out, std::span<const double> row) {
  bool first = true;
  for (const double v : row) {
    if (!first) out += ' ';
    first = false;
    append_double(out, v);
  }
  out += '\n';
}

inline std::string with_crc_trailer(std::string body) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", crc32(body));
  body += "CRC32 ";
  body += buf;
  body += '\n';
  return body;
}

// Splits off and validates the trailer; returns the body. Structural
// damage to the trailer or content reads as corruption, not parse failure.
inline std::string_view checked_body(std::string_view content) {
  if (content.empty()) throw CorruptModel("empty model file");
  if (content.back() != '\n') throw CorruptModel("model file is truncated");
  const std::size_t prev_nl = content.rfind('\n', content.size() - 2);
  const std::size_t trailer_at = prev_nl == std::string_view::npos ? 0 : prev_nl + 1;
  std::string_view trailer = content.substr(trailer_at);
  trailer.remove_suffix(1);  // final newline
  const auto fields = split_fields(trailer);
  std::uint64_t stated = 0;
  if (fields.size() != 2 || fields[0] != "CRC32" || fields[1].size() != 8 ||
      !parse_u64_hex(fields[1], stated)) {
    throw CorruptModel("missing or malformed CRC32 trailer");
  }
  const std::string_view body = content.substr(0, trailer_at);
  if (crc32(body) != static_cast<std::uint32_t>(stated)) {
    throw CorruptModel("checksum mismatch");
  }
  return body;
}

inline std::vector<double> parse_param_row(LineScanner& scanner, std::size_t expect) {
  std::string_view line;
  if (!scanner.next(line)) {
    throw ParseError("missing parameter row", scanner.line_no() + 1);
  }
  require_clean_line(line, scanner.line_no());
  const auto fields = split_fields(line);
  if (fields.size() != expect) {
    throw ParseError("expected " + std::to_string(expect) + " values, got " +
                         std::to_string(fields.size()),
                     scanner.line_no());
  }
  std::vector<double> row(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    if (!parse_double(fields[i], row[i])) {
      throw ParseError("bad value '" + std::string(fields[i]) + "'", scanner.line_no());
    }
  }
  return row;
}

}  // namespace detail

inline std::string format_model(const lsh::RandomHyperplaneModel& model,
                                LshStorage storage = LshStorage::seed_only) {
  std::string body = "BMODEL 1 lsh\n";
  body += std::to_string(model.dim_in()) + " " + std::to_string(model.nbits()) +
          (storage == LshStorage::seed_only ? " seed-only " : " matrix ") +
          std::to_string(model.seed()) + "\n";
  if (storage == LshStorage::matrix) {
    for (std::size_t j = 0; j < model.nbits(); ++j) detail::append_row(body, model.row(j));
  }
  return detail::with_crc_trailer(std::move(body));
}

inline std::string format_model(const hamlearn::FullLinearModel& model,
                                std::uint64_t seed) {
  std::string body = "BMODEL 1 full\n";
  body += std::to_string(model.dim_in()) + " " + std::to_string(model.nbits()) + " " +
          std::to_string(seed) + "\n";
  for (std::size_t j = 0; j < model.nbits(); ++j) detail::append_row(body, model.row(j));
  return detail::with_crc_trailer(std::move(body));
}

inline std::string format_model(const hamlearn::BlockDiagonalModel& model,
                                std::uint64_t seed) {
  std::string body = "BMODEL 1 block\n";
  body += std::to_string(model.dim_in()) + " " +
          std::to_string(model.allocation().nominal_bits) + " " + std::to_string(seed) +
          "\n";
  bool first = true;
  for (const std::uint32_t c : model.allocation().counts) {
    if (!first) body += ' ';
    first = false;
    body += std::to_string(c);
  }
  body += '\n';
  for (const auto& block : model.blocks()) {
    detail::append_row(body, block.weight);
    detail::append_row(body, block.bias);
  }
  return detail::with_crc_trailer(std::move(body));
}

inline StoredModel parse_model(std::string_view content) {
  const std::string_view body = detail::checked_body(content);
  detail::LineScanner scanner(body);
  std::string_view line;
  if (!scanner.next(line)) throw ParseError("empty model body", 1);
  detail::require_clean_line(line, scanner.line_no());
  const auto header = detail::split_fields(line);
  if (header.size() != 3 || header[0] != "BMODEL") {
    throw ParseError("expected header 'BMODEL 1 <kind>'", scanner.line_no());
  }
  if (header[1] != "1") throw ParseError("unsupported format version", scanner.line_no());
  const std::string_view kind = header[2];
  if (kind != "lsh" && kind != "full" && kind != "block") {
    throw ParseError("unknown model kind '" + std::string(kind) + "'", scanner.line_no());
  }

  if (!scanner.next(line)) throw ParseError("missing metadata line", scanner.line_no() + 1);
  detail::require_clean_line(line, scanner.line_no());
  const auto meta = detail::split_fields(line);
  const std::size_t meta_line = scanner.line_no();

  auto meta_count = [&](std::size_t index, const char* what) {
    std::size_t v = 0;
    if (!detail::parse_count(meta[index], v, 1)) {
      throw ParseError(std::string("bad ") + what + " in metadata", meta_line);
    }
    return v;
  };
  auto check_payload = [&](std::size_t rows, std::size_t cols) {
    if (cols != 0 && rows > detail::kMaxDeclared / cols) {
      throw ParseError("declared model size is implausibly large", meta_line);
    }
  };
  auto expect_end = [&] {
    std::string_view rest;
    if (scanner.next(rest)) {
      throw ParseError("trailing data after model parameters", scanner.line_no());
    }
  };

  if (kind == "lsh") {
    if (meta.size() != 4) throw ParseError("expected '<dim> <bits> <storage> <seed>'", meta_line);
    const std::size_t dim = meta_count(0, "dimension");
    const std::size_t nbits = meta_count(1, "bit count");
    std::uint64_t seed = 0;
    if (!detail::parse_u64(meta[3], seed)) throw ParseError("bad seed", meta_line);
    if (meta[2] == "seed-only") {
      expect_end();
      return {lsh::sample_model(dim, nbits, seed), seed};
    }
    if (meta[2] != "matrix") throw ParseError("unknown storage tag", meta_line);
    check_payload(nbits, dim);
    std::vector<double> planes;
    planes.reserve(nbits * dim);
    for (std::size_t j = 0; j < nbits; ++j) {
      const auto row = detail::parse_param_row(scanner, dim);
      planes.insert(planes.end(), row.begin(), row.end());
    }
    expect_end();
    return {lsh::RandomHyperplaneModel(dim, nbits, seed, std::move(planes)), seed};
  }

  if (kind == "full") {
    if (meta.size() != 3) throw ParseError("expected '<dim> <bits> <seed>'", meta_line);
    const std::size_t dim = meta_count(0, "dimension");
    const std::size_t nbits = meta_count(1, "bit count");
    std::uint64_t seed = 0;
    if (!detail::parse_u64(meta[2], seed)) throw ParseError("bad seed", meta_line);
    check_payload(nbits, dim);
    std::vector<double> weights;
    weights.reserve(nbits * dim);
    for (std::size_t j = 0; j < nbits; ++j) {
      const auto row = detail::parse_param_row(scanner, dim);
      weights.insert(weights.end(), row.begin(), row.end());
    }
    expect_end();
    return {hamlearn::FullLinearModel(dim, nbits, std::move(weights)), seed};
  }

  // kind == "block"
  if (meta.size() != 3) throw ParseError("expected '<dim> <bits> <seed>'", meta_line);
  const std::size_t dim = meta_count(0, "dimension");
  const std::size_t nominal = meta_count(1, "bit count");
  std::uint64_t seed = 0;
  if (!detail::parse_u64(meta[2], seed)) throw ParseError("bad seed", meta_line);
  hamlearn::BitAllocation alloc;
  try {
    alloc = hamlearn::allocate_bits(dim, nominal);
  } catch (const InvalidConfig& e) {
    throw ParseError(std::string("bad block shape: ") + e.what(), meta_line);
  }
  if (!scanner.next(line)) throw ParseError("missing allocation line", meta_line + 1);
  detail::require_clean_line(line, scanner.line_no());
  const auto counts = detail::split_fields(line);
  if (counts.size() != dim) {
    throw ParseError("expected " + std::to_string(dim) + " block widths",
                     scanner.line_no());
  }
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t c = 0;
    if (!detail::parse_u64(counts[i], c) || c != alloc.counts[i]) {
      throw ParseError("allocation does not match the declared bit budget",
                       scanner.line_no());
    }
  }
  std::vector<hamlearn::ScalarBlock> blocks(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    blocks[i].weight = detail::parse_param_row(scanner, alloc.counts[i]);
    blocks[i].bias = detail::parse_param_row(scanner, alloc.counts[i]);
  }
  std::string_view rest;
  if (scanner.next(rest)) {
    throw ParseError("trailing data after model parameters", scanner.line_no());
  }
  return {hamlearn::BlockDiagonalModel(dim, std::move(alloc), std::move(blocks)), seed};
}

inline void write_model(const std::string& path, const lsh::RandomHyperplaneModel& model,
                        LshStorage storage = LshStorage::seed_only) {
  detail::write_file(path, format_model(model, storage));
}

inline void write_model(const std::string& path, const hamlearn::FullLinearModel& model,
                        std::uint64_t seed) {
  detail::write_file(path, format_model(model, seed));
}

inline void write_model(const std::string& path,
                        const hamlearn::BlockDiagonalModel& model, std::uint64_t seed) {
  detail::write_file(path, format_model(model, seed));
}

inline StoredModel read_model(const std::string& path) {
  return parse_model(detail::read_file(path));
}

inline BinaryCode encode_with(const StoredModel& stored, const DenseVector& x) {
  return std::visit([&](const auto& model) { return encode(model, x); }, stored.model);
}

inline std::size_t model_dim(const StoredModel& stored) {
  return std::visit([](const auto& model) { return model.dim_in(); }, stored.model);
}

inline std::size_t model_nbits(const StoredModel& stored) {
  return std::visit([](const auto& model) { return model.nbits(); }, stored.model);
}

inline const char* model_kind(const StoredModel& stored) {
  struct Visitor {
    const char* operator()(const lsh::RandomHyperplaneModel&) const { return "lsh"; }
    const char* operator()(const hamlearn::FullLinearModel&) const { return "full"; }
    const char* operator()(const hamlearn::BlockDiagonalModel&) const { return "block"; }
  };
  return std::visit(Visitor{}, stored.model);
}

}  // namespace bvec::io
