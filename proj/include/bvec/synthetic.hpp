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

// Synthetic labeled corpora and triplet sampling. Everything here is a pure
// function of (spec, seed).
//
// Generation draws, in this fixed order from GaussianRng(seed): the channel
// mismatch direction (always consumed, so corpora with different shift
// magnitudes share their underlying utterances), then per speaker a
// centroid, then per utterance a noise vector. Each utterance is
//   normalize(centroid + within_spread * noise [+ channel_shift * direction])
// where the shift applies to the mismatch subset: the last
// floor(utterances_per_speaker / 2) utterances of every speaker.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/hamlearn.hpp"
#include "bvec/labeled_set.hpp"
#include "bvec/rng.hpp"

namespace bvec::synth {

struct SyntheticSpec {
  std::size_t n_speakers = 300;
  std::size_t utterances_per_speaker = 20;
  std::size_t dim = 150;
  // Within-speaker noise scale, relative to the unit between-speaker
  // spread. The default is wide enough that a few hundred code bits leave
  // measurable verification error instead of saturating at zero.
  double within_spread = 1.25;
  double channel_shift = 0.0;  // test-time mismatch magnitude, 0 disables
  std::uint64_t seed = 0;

  void validate() const {
    if (n_speakers < 1) throw InvalidConfig("SyntheticSpec: n_speakers must be >= 1");
    if (utterances_per_speaker < 1) {
      throw InvalidConfig("SyntheticSpec: utterances_per_speaker must be >= 1");
    }
    if (dim < 2) throw InvalidConfig("SyntheticSpec: dim must be >= 2");
    if (!(within_spread >= 0.0)) {
      throw InvalidConfig("SyntheticSpec: within_spread must be >= 0");
    }
    if (!(channel_shift >= 0.0)) {
      throw InvalidConfig("SyntheticSpec: channel_shift must be >= 0");
    }
  }
};

namespace detail {

// Zero-padded decimal suffixes keep lexicographic order equal to numeric
// order, so sorted galleries line up with generation order.
inline std::string padded(std::size_t value, std::size_t total) {
  std::string digits = std::to_string(value);
  std::size_t width = 1;
  for (std::size_t top = 10; top <= total - 1 && width < 20; top *= 10) ++width;
  while (digits.size() < width) digits.insert(digits.begin(), '0');
  return digits;
}

}  // namespace detail

inline std::string speaker_label(std::size_t index, const SyntheticSpec& spec) {
  return "spk" + detail::padded(index, spec.n_speakers);
}

inline std::string utterance_id(std::size_t speaker, std::size_t utt,
                                const SyntheticSpec& spec) {
  return speaker_label(speaker, spec) + "_u" +
         detail::padded(utt, spec.utterances_per_speaker);
}

/// First index of the channel-mismatch subset within a speaker's
/// utterances; indices at or past this get the shift.
inline std::size_t mismatch_start(const SyntheticSpec& spec) {
  return (spec.utterances_per_speaker + 1) / 2;
}

inline LabeledVectorSet generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  GaussianRng rng(spec.seed);

  std::vector<double> direction(spec.dim);
  for (auto& x : direction) x = rng.gaussian();
  if (spec.channel_shift > 0.0) {
    double norm = 0.0;
    for (const double x : direction) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw NumericalFailure("generate_synthetic: zero channel direction");
    for (auto& x : direction) x /= norm;
  }

  LabeledVectorSet set;
  set.ids.reserve(spec.n_speakers * spec.utterances_per_speaker);
  set.labels.reserve(set.ids.capacity());
  set.vectors.reserve(set.ids.capacity());

  const std::size_t shift_from = mismatch_start(spec);
  std::vector<double> centroid(spec.dim);
  std::vector<double> utt(spec.dim);
  for (std::size_t s = 0; s < spec.n_speakers; ++s) {
    for (auto& x : centroid) x = rng.gaussian();
    for (std::size_t u = 0; u < spec.utterances_per_speaker; ++u) {
      for (std::size_t d = 0; d < spec.dim; ++d) {
        utt[d] = centroid[d] + spec.within_spread * rng.gaussian();
      }
      if (spec.channel_shift > 0.0 && u >= shift_from) {
        for (std::size_t d = 0; d < spec.dim; ++d) {
          utt[d] += spec.channel_shift * direction[d];
        }
      }
      set.ids.push_back(utterance_id(s, u, spec));
      set.labels.push_back(speaker_label(s, spec));
      set.vectors.push_back(normalize(DenseVector(utt)));
    }
  }
  return set;
}

/// Uniform triplet sampler: the anchor speaker is uniform over speakers
/// with at least two utterances, the anchor and positive are distinct
/// uniform picks within it, and the negative is uniform over every
/// utterance of all other speakers.
inline std::vector<hamlearn::Triplet> sample_triplets(const LabeledVectorSet& set,
                                                      std::size_t count,
                                                      std::uint64_t seed) {
  set.validate();
  std::vector<std::string> speakers;
  std::vector<std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::size_t s = 0;
    while (s < speakers.size() && speakers[s] != set.labels[i]) ++s;
    if (s == speakers.size()) {
      speakers.push_back(set.labels[i]);
      by_speaker.emplace_back();
    }
    by_speaker[s].push_back(i);
  }
  if (speakers.size() < 2) {
    throw InvalidConfig("sample_triplets: need at least two speakers");
  }
  std::vector<std::size_t> eligible;  // anchor speakers: >= 2 utterances
  for (std::size_t s = 0; s < speakers.size(); ++s) {
    if (by_speaker[s].size() >= 2) eligible.push_back(s);
  }
  if (eligible.empty()) {
    throw InvalidConfig("sample_triplets: no speaker has two utterances");
  }

  GaussianRng rng(seed);
  std::vector<hamlearn::Triplet> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t s = eligible[rng.uniform_below(eligible.size())];
    const auto& utts = by_speaker[s];
    const std::size_t a = rng.uniform_below(utts.size());
    std::size_t p = rng.uniform_below(utts.size() - 1);
    if (p >= a) ++p;  // uniform over the other utterances
    // Uniform over all foreign utterances, by index into the complement.
    std::size_t neg = rng.uniform_below(set.size() - utts.size());
    for (const std::size_t own : utts) {
      if (own <= neg) ++neg;  // own indices are ascending
    }
    out.emplace_back(set.vectors[utts[a]], set.vectors[utts[p]], set.vectors[neg],
                     speakers[s], set.labels[neg]);
  }
  return out;
}

}  // namespace bvec::synth
