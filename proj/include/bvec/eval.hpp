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

// Evaluation protocol: verification EER over trial lists, closed-set
// identification by naive top-k scan, and a cosine-vs-Hamming scan
// benchmark.
//
// Both scorers produce similarities (higher = same speaker); Hamming
// distances are mapped through (nbits - d) / nbits so verification and
// identification share one threshold/ranking convention. EER is invariant
// under strictly monotone transforms, so the mapping changes nothing.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "bvec/binary_code.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/rng.hpp"

namespace bvec::eval {

/// One verification trial. The optional condition label groups trials for
/// per-condition reporting; empty means unconditioned.
struct VerificationTrial {
  std::string enroll_id;
  std::string test_id;
  bool is_target = false;
  std::string condition;
};

using VectorStore = std::map<std::string, DenseVector>;
using CodeStore = std::map<std::string, BinaryCode>;

struct RankedSpeaker {
  std::string speaker_id;
  double score = 0.0;
};

template <typename Repr>
struct GalleryEntry {
  std::string speaker_id;
  Repr repr;
};

enum class Scorer { cosine, hamming };

inline const char* scorer_name(Scorer s) {
  return s == Scorer::cosine ? "cosine" : "hamming";
}

struct VerificationReport {
  std::string scorer;
  std::size_t width = 0;  // vector dimension or code bits
  std::size_t target_trials = 0;
  std::size_t impostor_trials = 0;
  unsigned threads = 1;
  double scoring_seconds = 0.0;
  double eer = 0.0;
  // Per condition label, sorted; labels where one class is absent have no
  // defined EER and are skipped.
  std::vector<std::pair<std::string, double>> condition_eers;
};

struct IdentificationReport {
  std::string scorer;
  std::size_t width = 0;
  std::size_t gallery_size = 0;
  std::size_t probe_count = 0;
  unsigned threads = 1;
  double scan_seconds = 0.0;
  double comparisons_per_second = 0.0;
  std::vector<std::pair<std::size_t, double>> topk_accuracy;  // ascending k
};

struct BenchReport {
  std::string scorer;
  std::size_t width = 0;
  std::size_t gallery_size = 0;
  std::size_t repetitions = 0;
  unsigned threads = 1;
  double median_seconds = 0.0;
  double comparisons_per_second = 0.0;
  std::uint64_t checksum = 0;  // best-match index; keeps the scan observable
};

namespace detail {

inline std::size_t repr_width(const DenseVector& v) { return v.dim(); }
inline std::size_t repr_width(const BinaryCode& c) { return c.nbits(); }

inline double similarity(const DenseVector& a, const DenseVector& b) {
  return cosine(a, b);
}

inline double similarity(const BinaryCode& a, const BinaryCode& b) {
  return static_cast<double>(a.nbits() - hamming(a, b)) /
         static_cast<double>(a.nbits());
}

// Deterministic fan-out: contiguous index ranges, each index writes only
// its own slots, so results are independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads, n));
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <typename Repr>
const Repr& resolve(const std::map<std::string, Repr>& store, const std::string& id) {
  const auto it = store.find(id);
  if (it == store.end()) throw MissingVector(id);
  return it->second;
}

template <typename Fn>
double timed_seconds(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace detail

/// Scores every trial against the store; similarities, one per trial, in
/// trial order regardless of thread count.
template <typename Repr>
std::vector<double> score_trials(std::span<const VerificationTrial> trials,
                                 const std::map<std::string, Repr>& store,
                                 unsigned threads = 1) {
  std::vector<double> scores(trials.size());
  detail::parallel_for(trials.size(), threads, [&](std::size_t i) {
    const Repr& enroll = detail::resolve(store, trials[i].enroll_id);
    const Repr& test = detail::resolve(store, trials[i].test_id);
    scores[i] = detail::similarity(enroll, test);
  });
  return scores;
}

/// Equal error rate of two score sets. Thresholds sweep the union of
/// observed scores ascending; FAR(t) is the fraction of impostor scores
/// >= t and FRR(t) the fraction of target scores < t. At the first
/// threshold where FAR - FRR reaches zero or changes sign, the rate is
/// (FAR + FRR) / 2, linearly interpolated between the bracketing points
/// when the curves do not cross exactly. A virtual endpoint above the top
/// score (FAR 0, FRR 1) closes the sweep.
inline double compute_eer(std::span<const double> target_scores,
                          std::span<const double> impostor_scores) {
  if (target_scores.empty() || impostor_scores.empty()) {
    throw InvalidConfig("compute_eer: both score sets must be nonempty");
  }
  std::vector<double> thresholds;
  thresholds.reserve(target_scores.size() + impostor_scores.size());
  thresholds.insert(thresholds.end(), target_scores.begin(), target_scores.end());
  thresholds.insert(thresholds.end(), impostor_scores.begin(), impostor_scores.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<double> sorted_targets(target_scores.begin(), target_scores.end());
  std::vector<double> sorted_impostors(impostor_scores.begin(), impostor_scores.end());
  std::sort(sorted_targets.begin(), sorted_targets.end());
  std::sort(sorted_impostors.begin(), sorted_impostors.end());
  const double nt = static_cast<double>(sorted_targets.size());
  const double ni = static_cast<double>(sorted_impostors.size());

  auto far_at = [&](double t) {
    const auto it = std::lower_bound(sorted_impostors.begin(), sorted_impostors.end(), t);
    return static_cast<double>(sorted_impostors.end() - it) / ni;
  };
  auto frr_at = [&](double t) {
    const auto it = std::lower_bound(sorted_targets.begin(), sorted_targets.end(), t);
    return static_cast<double>(it - sorted_targets.begin()) / nt;
  };

  // The lowest threshold always yields (FAR 1, FRR 0); the virtual final
  // point is (0, 1), so a crossing exists.
  double prev_far = 1.0;
  double prev_frr = 0.0;
  for (std::size_t k = 0; k <= thresholds.size(); ++k) {
    const bool virtual_end = k == thresholds.size();
    const double far = virtual_end ? 0.0 : far_at(thresholds[k]);
    const double frr = virtual_end ? 1.0 : frr_at(thresholds[k]);
    const double diff = far - frr;
    if (diff <= 0.0) {
      if (diff == 0.0) return (far + frr) / 2.0;
      const double prev_diff = prev_far - prev_frr;
      const double alpha = prev_diff / (prev_diff - diff);
      const double eer_prev = (prev_far + prev_frr) / 2.0;
      const double eer_next = (far + frr) / 2.0;
      return (1.0 - alpha) * eer_prev + alpha * eer_next;
    }
    prev_far = far;
    prev_frr = frr;
  }
  return 0.5;  // unreachable; the virtual endpoint has diff = -1
}

/// Splits scores by trial class (overall and per condition label) and
/// computes EERs. Scoring time is the caller's measurement if any.
inline VerificationReport verification_report(std::span<const VerificationTrial> trials,
                                              std::span<const double> scores,
                                              std::string scorer, std::size_t width,
                                              unsigned threads = 1,
                                              double scoring_seconds = 0.0) {
  if (trials.size() != scores.size()) {
    throw InvalidConfig("verification_report: trial/score length mismatch");
  }
  VerificationReport report;
  report.scorer = std::move(scorer);
  report.width = width;
  report.threads = threads;
  report.scoring_seconds = scoring_seconds;

  std::vector<double> targets;
  std::vector<double> impostors;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_label;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    (trials[i].is_target ? targets : impostors).push_back(scores[i]);
    if (!trials[i].condition.empty()) {
      auto& bucket = by_label[trials[i].condition];
      (trials[i].is_target ? bucket.first : bucket.second).push_back(scores[i]);
    }
  }
  report.target_trials = targets.size();
  report.impostor_trials = impostors.size();
  report.eer = compute_eer(targets, impostors);
  for (const auto& [label, bucket] : by_label) {
    if (bucket.first.empty() || bucket.second.empty()) continue;
    report.condition_eers.emplace_back(label, compute_eer(bucket.first, bucket.second));
  }
  return report;
}

/// Exhaustive scan of the gallery; top k by similarity, ties broken by
/// ascending speaker id.
template <typename Repr>
std::vector<RankedSpeaker> identify_topk(std::span<const GalleryEntry<Repr>> gallery,
                                         const Repr& probe, std::size_t k) {
  if (gallery.empty()) throw InvalidConfig("identify_topk: empty gallery");
  if (k < 1 || k > gallery.size()) {
    throw InvalidConfig("identify_topk: k must be in [1, gallery size]");
  }
  const std::size_t width = detail::repr_width(probe);
  for (const auto& entry : gallery) {
    if (detail::repr_width(entry.repr) != width) {
      throw DimensionMismatch("identify_topk: probe width does not match gallery");
    }
  }
  std::vector<RankedSpeaker> ranked(gallery.size());
  for (std::size_t i = 0; i < gallery.size(); ++i) {
    ranked[i].speaker_id = gallery[i].speaker_id;
    ranked[i].score = detail::similarity(gallery[i].repr, probe);
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedSpeaker& a, const RankedSpeaker& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.speaker_id < b.speaker_id;
  });
  ranked.resize(k);
  return ranked;
}

/// Fraction of probes whose true speaker lands in the top k, for each
/// requested k. One scan per probe, shared across all ks.
template <typename Repr>
IdentificationReport topk_accuracy(std::span<const GalleryEntry<Repr>> gallery,
                                   std::span<const std::pair<Repr, std::string>> probes,
                                   std::span<const std::size_t> ks,
                                   unsigned threads = 1) {
  if (probes.empty()) throw InvalidConfig("topk_accuracy: no probes");
  if (ks.empty()) throw InvalidConfig("topk_accuracy: no k values");
  std::vector<std::size_t> sorted_ks(ks.begin(), ks.end());
  std::sort(sorted_ks.begin(), sorted_ks.end());
  const std::size_t max_k = sorted_ks.back();
  if (sorted_ks.front() < 1 || max_k > gallery.size()) {
    throw InvalidConfig("topk_accuracy: k must be in [1, gallery size]");
  }

  // 1-based rank of the true speaker within the top max_k, 0 on a miss.
  std::vector<std::size_t> hit_rank(probes.size(), 0);
  const double seconds = detail::timed_seconds([&] {
    detail::parallel_for(probes.size(), threads, [&](std::size_t p) {
      const auto ranked = identify_topk(gallery, probes[p].first, max_k);
      for (std::size_t r = 0; r < ranked.size(); ++r) {
        if (ranked[r].speaker_id == probes[p].second) {
          hit_rank[p] = r + 1;
          break;
        }
      }
    });
  });

  IdentificationReport report;
  report.scorer = std::is_same_v<Repr, BinaryCode> ? "hamming" : "cosine";
  report.width = detail::repr_width(gallery.front().repr);
  report.gallery_size = gallery.size();
  report.probe_count = probes.size();
  report.threads = threads;
  report.scan_seconds = seconds;
  report.comparisons_per_second =
      seconds > 0.0
          ? static_cast<double>(gallery.size()) * static_cast<double>(probes.size()) / seconds
          : 0.0;
  for (const std::size_t k : sorted_ks) {
    std::size_t correct = 0;
    for (const std::size_t rank : hit_rank) {
      if (rank >= 1 && rank <= k) ++correct;
    }
    report.topk_accuracy.emplace_back(
        k, static_cast<double>(correct) / static_cast<double>(probes.size()));
  }
  return report;
}

/// Groups vectors by speaker label and returns one length-normalized mean
/// per speaker, sorted by speaker id. Binary galleries encode these means
/// afterwards, one code per speaker.
inline std::vector<GalleryEntry<DenseVector>> speaker_means(
    std::span<const std::string> labels, std::span<const DenseVector> vectors) {
  if (labels.size() != vectors.size()) {
    throw InvalidConfig("speaker_means: label/vector length mismatch");
  }
  if (labels.empty()) throw InvalidConfig("speaker_means: empty input");
  const std::size_t dim = vectors.front().dim();
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (vectors[i].dim() != dim) {
      throw DimensionMismatch("speaker_means: inconsistent vector dimensions");
    }
    auto& [sum, count] = sums[labels[i]];
    if (sum.empty()) sum.assign(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) sum[d] += vectors[i][d];
    ++count;
  }
  std::vector<GalleryEntry<DenseVector>> out;
  out.reserve(sums.size());
  for (auto& [speaker, acc] : sums) {
    auto& [sum, count] = acc;
    for (double& x : sum) x /= static_cast<double>(count);
    DenseVector mean(std::move(sum));
    out.push_back({speaker, normalize(mean)});
  }
  return out;
}

/// Times one naive scan (a single probe against gallery_size random
/// representations of the given width) and reports the median over
/// repetitions, excluding one untimed warm-up pass. Very short scans are
/// repeated inside the clock window until at least a microsecond has
/// elapsed, so the duration is always positive.
inline BenchReport bench_scan(std::size_t gallery_size, std::size_t width, Scorer scorer,
                              std::size_t repetitions, std::uint64_t seed) {
  if (gallery_size < 1 || width < 1 || repetitions < 1) {
    throw InvalidConfig("bench_scan: sizes and repetitions must be >= 1");
  }
  GaussianRng rng(seed);
  std::uint64_t checksum = 0;

  auto run_timed = [&](auto&& scan) {
    std::vector<double> times(repetitions);
    scan();  // warm-up, untimed
    for (std::size_t r = 0; r < repetitions; ++r) {
      std::size_t iters = 1;
      double elapsed = 0.0;
      for (;;) {
        elapsed = detail::timed_seconds([&] {
          for (std::size_t i = 0; i < iters; ++i) scan();
        });
        if (elapsed >= 1e-6) break;
        iters *= 2;
      }
      times[r] = elapsed / static_cast<double>(iters);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };

  double median = 0.0;
  if (scorer == Scorer::hamming) {
    const std::size_t words = (width + BinaryCode::kWordBits - 1) / BinaryCode::kWordBits;
    const std::uint64_t last_mask =
        width % BinaryCode::kWordBits == 0
            ? ~std::uint64_t{0}
            : (std::uint64_t{1} << (width % BinaryCode::kWordBits)) - 1;
    std::vector<std::uint64_t> gallery(gallery_size * words);
    std::vector<std::uint64_t> probe(words);
    for (auto& w : gallery) w = rng.raw();
    for (auto& w : probe) w = rng.raw();
    for (std::size_t e = 0; e < gallery_size; ++e) gallery[e * words + words - 1] &= last_mask;
    probe[words - 1] &= last_mask;

    median = run_timed([&] {
      std::size_t best_index = 0;
      unsigned best_distance = ~0u;
      for (std::size_t e = 0; e < gallery_size; ++e) {
        const std::uint64_t* code = gallery.data() + e * words;
        unsigned d = 0;
        for (std::size_t w = 0; w < words; ++w) {
          d += static_cast<unsigned>(std::popcount(code[w] ^ probe[w]));
        }
        if (d < best_distance) {
          best_distance = d;
          best_index = e;
        }
      }
      checksum ^= best_index;
    });
  } else {
    std::vector<double> gallery(gallery_size * width);
    std::vector<double> probe(width);
    for (auto& x : gallery) x = rng.gaussian();
    for (auto& x : probe) x = rng.gaussian();
    double probe_norm = 0.0;
    for (const double x : probe) probe_norm += x * x;
    probe_norm = std::sqrt(probe_norm);

    median = run_timed([&] {
      std::size_t best_index = 0;
      double best_score = -2.0;
      for (std::size_t e = 0; e < gallery_size; ++e) {
        const double* vec = gallery.data() + e * width;
        double dot = 0.0;
        double norm2 = 0.0;
        for (std::size_t k = 0; k < width; ++k) {
          dot += vec[k] * probe[k];
          norm2 += vec[k] * vec[k];
        }
        const double score = dot / (std::sqrt(norm2) * probe_norm);
        if (score > best_score) {
          best_score = score;
          best_index = e;
        }
      }
      checksum ^= best_index;
    });
  }

  BenchReport report;
  report.scorer = scorer_name(scorer);
  report.width = width;
  report.gallery_size = gallery_size;
  report.repetitions = repetitions;
  report.threads = 1;
  report.median_seconds = median;
  report.comparisons_per_second = static_cast<double>(gallery_size) / median;
  report.checksum = checksum;
  return report;
}

namespace detail {

// Accuracy rows and timing rows are kept apart: timing varies run to run,
// so it renders under a "# timing" separator (tables) or a "timing." key
// prefix (key-value), letting golden comparisons strip it.
class ReportWriter {
 public:
  void row(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }
  void row(const std::string& key, std::size_t value) {
    row(key, std::to_string(value));
  }
  void row(const std::string& key, double value, int precision) {
    rows_.emplace_back(key, render(value, precision));
  }
  void timing_row(const std::string& key, double value, int precision) {
    timing_.emplace_back(key, render(value, precision));
  }
  void timing_row(const std::string& key, std::size_t value) {
    timing_.emplace_back(key, std::to_string(value));
  }

  std::string table() const {
    std::size_t key_width = 6;  // "metric"
    for (const auto& [k, v] : rows_) key_width = std::max(key_width, k.size());
    for (const auto& [k, v] : timing_) key_width = std::max(key_width, k.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(key_width)) << "metric" << "  value\n";
    for (const auto& [k, v] : rows_) {
      os << std::left << std::setw(static_cast<int>(key_width)) << k << "  " << v << "\n";
    }
    if (!timing_.empty()) {
      os << "# timing\n";
      for (const auto& [k, v] : timing_) {
        os << std::left << std::setw(static_cast<int>(key_width)) << k << "  " << v << "\n";
      }
    }
    return os.str();
  }

  std::string kv() const {
    std::ostringstream os;
    for (const auto& [k, v] : rows_) os << k << " " << v << "\n";
    for (const auto& [k, v] : timing_) os << "timing." << k << " " << v << "\n";
    return os.str();
  }

 private:
  static std::string render(double value, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << value;
    return os.str();
  }

  std::vector<std::pair<std::string, std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> timing_;
};

inline ReportWriter rows_for(const VerificationReport& r, int precision) {
  ReportWriter w;
  w.row("report", std::string("verification"));
  w.row("scorer", r.scorer);
  w.row("width", r.width);
  w.row("target_trials", r.target_trials);
  w.row("impostor_trials", r.impostor_trials);
  w.row("threads", std::size_t{r.threads});
  w.row("eer.overall", r.eer, precision);
  for (const auto& [label, eer] : r.condition_eers) w.row("eer." + label, eer, precision);
  w.timing_row("scoring_seconds", r.scoring_seconds, precision);
  return w;
}

inline ReportWriter rows_for(const IdentificationReport& r, int precision) {
  ReportWriter w;
  w.row("report", std::string("identification"));
  w.row("scorer", r.scorer);
  w.row("width", r.width);
  w.row("gallery_size", r.gallery_size);
  w.row("probe_count", r.probe_count);
  w.row("threads", std::size_t{r.threads});
  for (const auto& [k, acc] : r.topk_accuracy) {
    w.row("top" + std::to_string(k), acc, precision);
  }
  w.timing_row("scan_seconds", r.scan_seconds, precision);
  w.timing_row("comparisons_per_second", r.comparisons_per_second, precision);
  return w;
}

inline ReportWriter rows_for(const BenchReport& r, int precision) {
  ReportWriter w;
  w.row("report", std::string("bench"));
  w.row("scorer", r.scorer);
  w.row("width", r.width);
  w.row("gallery_size", r.gallery_size);
  w.row("repetitions", r.repetitions);
  w.row("threads", std::size_t{r.threads});
  w.row("checksum", std::size_t{r.checksum});
  w.timing_row("median_seconds", r.median_seconds, precision);
  w.timing_row("comparisons_per_second", r.comparisons_per_second, precision);
  return w;
}

}  // namespace detail

template <typename Report>
std::string format_table(const Report& report) {
  return detail::rows_for(report, 6).table();
}

template <typename Report>
std::string format_kv(const Report& report) {
  return detail::rows_for(report, 17).kv();
}

}  // namespace bvec::eval
