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

// bvec command line: synthesize corpora, train binarization models, encode
// vectors, and evaluate verification accuracy, identification accuracy, and
// scan throughput. Every run echoes its resolved configuration first; all
// wall-clock readings stay in the timing section so repeated runs compare
// byte for byte everywhere else.

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "bvec/binary_code.hpp"
#include "bvec/dense_vector.hpp"
#include "bvec/errors.hpp"
#include "bvec/eval.hpp"
#include "bvec/formats.hpp"
#include "bvec/hamlearn.hpp"
#include "bvec/labeled_set.hpp"
#include "bvec/lsh.hpp"
#include "bvec/rng.hpp"
#include "bvec/synthetic.hpp"

namespace {

using bvec::BinaryCode;
using bvec::DenseVector;
using bvec::LabeledCodeSet;
using bvec::LabeledVectorSet;
using bvec::eval::detail::ReportWriter;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string render_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Resolved-configuration echo, printed before any work begins.
class ConfigEcho {
 public:
  explicit ConfigEcho(const std::string& command) { add("command", command); }
  void add(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value.empty() ? "-" : value);
  }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  template <std::integral T>
  void add(const std::string& key, T value) {
    rows_.emplace_back(key, std::to_string(value));
  }
  void add(const std::string& key, double value) {
    rows_.emplace_back(key, render_double(value));
  }
  void print() const {
    std::cout << "# config\n";
    for (const auto& [k, v] : rows_) std::cout << k << " " << v << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

void emit_writer(const ReportWriter& table_form, const ReportWriter& kv_form,
                 const std::string& report_path) {
  std::cout << "\n" << table_form.table();
  if (!report_path.empty()) bvec::io::detail::write_file(report_path, kv_form.kv());
}

template <typename Report>
void emit_report(const Report& report, const std::string& report_path) {
  std::cout << "\n" << bvec::eval::format_table(report);
  if (!report_path.empty()) {
    bvec::io::detail::write_file(report_path, bvec::eval::format_kv(report));
  }
}

// --- gen -------------------------------------------------------------------

struct GenOpts {
  std::size_t speakers = 300;
  std::size_t utterances = 20;
  std::size_t dim = 150;
  double within_spread = 1.25;
  double channel_shift = 0.0;
  std::uint64_t seed = 0;
  std::size_t enroll_utts = 0;  // 0 resolves to half the utterances
  std::size_t impostors = 4;
  std::string out;
  std::string enroll_out;
  std::string test_out;
  std::string trials_out;
};

void run_gen(const GenOpts& o) {
  bvec::synth::SyntheticSpec spec;
  spec.n_speakers = o.speakers;
  spec.utterances_per_speaker = o.utterances;
  spec.dim = o.dim;
  spec.within_spread = o.within_spread;
  spec.channel_shift = o.channel_shift;
  spec.seed = o.seed;
  spec.validate();

  if (o.out.empty() && o.enroll_out.empty() && o.test_out.empty()) {
    throw bvec::InvalidConfig("gen: no output requested");
  }
  if (!o.trials_out.empty() && (o.enroll_out.empty() || o.test_out.empty())) {
    throw bvec::InvalidConfig("gen: --trials-out requires --enroll-out and --test-out");
  }
  const bool split = !o.enroll_out.empty() || !o.test_out.empty();
  const std::size_t enroll_utts = o.enroll_utts != 0 ? o.enroll_utts : o.utterances / 2;
  if (split && (enroll_utts < 1 || enroll_utts >= o.utterances)) {
    throw bvec::InvalidConfig("gen: enrollment utterances must be in [1, utterances-1]");
  }
  if (!o.trials_out.empty()) {
    if (o.speakers < 2) throw bvec::InvalidConfig("gen: trials need at least 2 speakers");
    if (o.impostors < 1 || o.impostors > o.speakers - 1) {
      throw bvec::InvalidConfig("gen: impostors per target must be in [1, speakers-1]");
    }
  }

  ConfigEcho echo("gen");
  echo.add("speakers", o.speakers);
  echo.add("utterances", o.utterances);
  echo.add("dim", o.dim);
  echo.add("within_spread", o.within_spread);
  echo.add("channel_shift", o.channel_shift);
  echo.add("seed", o.seed);
  echo.add("enroll_utterances", split ? enroll_utts : 0);
  echo.add("impostors_per_target", o.impostors);
  echo.add("out", o.out);
  echo.add("enroll_out", o.enroll_out);
  echo.add("test_out", o.test_out);
  echo.add("trials_out", o.trials_out);
  echo.print();

  Timer timer;
  const LabeledVectorSet set = bvec::synth::generate_synthetic(spec);
  if (!o.out.empty()) bvec::io::write_vectors(o.out, set);

  std::size_t enroll_rows = 0;
  std::size_t test_rows = 0;
  std::size_t trial_rows = 0;
  if (split) {
    std::vector<std::string> enroll_labels;
    std::vector<DenseVector> enroll_vectors;
    LabeledVectorSet test_set;
    for (std::size_t s = 0; s < o.speakers; ++s) {
      for (std::size_t u = 0; u < o.utterances; ++u) {
        const std::size_t i = s * o.utterances + u;
        if (u < enroll_utts) {
          enroll_labels.push_back(set.labels[i]);
          enroll_vectors.push_back(set.vectors[i]);
        } else {
          test_set.ids.push_back(set.ids[i]);
          test_set.labels.push_back(set.labels[i]);
          test_set.vectors.push_back(set.vectors[i]);
        }
      }
    }
    // Enrollment rows are speaker means; model ids are the speaker labels.
    const auto means = bvec::eval::speaker_means(enroll_labels, enroll_vectors);
    LabeledVectorSet enroll_set;
    for (const auto& entry : means) {
      enroll_set.ids.push_back(entry.speaker_id);
      enroll_set.labels.push_back(entry.speaker_id);
      enroll_set.vectors.push_back(entry.repr);
    }
    if (!o.enroll_out.empty()) bvec::io::write_vectors(o.enroll_out, enroll_set);
    if (!o.test_out.empty()) bvec::io::write_vectors(o.test_out, test_set);
    enroll_rows = enroll_set.size();
    test_rows = test_set.size();

    if (!o.trials_out.empty()) {
      const std::size_t shift_from = bvec::synth::mismatch_start(spec);
      bvec::GaussianRng trial_rng(bvec::derive_stream(o.seed, 1));
      std::vector<bvec::eval::VerificationTrial> trials;
      for (std::size_t s = 0; s < o.speakers; ++s) {
        const std::string& speaker = set.labels[s * o.utterances];
        for (std::size_t u = enroll_utts; u < o.utterances; ++u) {
          const std::string& test_id = set.ids[s * o.utterances + u];
          std::string condition;
          if (o.channel_shift > 0.0) {
            condition = u >= shift_from ? "shifted" : "clean";
          }
          trials.push_back({speaker, test_id, true, condition});
          std::set<std::size_t> chosen;
          while (chosen.size() < o.impostors) {
            std::size_t other = trial_rng.uniform_below(o.speakers - 1);
            if (other >= s) ++other;
            if (chosen.insert(other).second) {
              trials.push_back(
                  {set.labels[other * o.utterances], test_id, false, condition});
            }
          }
        }
      }
      bvec::io::write_trials(o.trials_out, trials);
      trial_rows = trials.size();
    }
  }
  const double seconds = timer.seconds();

  auto make = [&](int precision) {
    ReportWriter w;
    w.row("report", std::string("gen"));
    w.row("corpus_rows", set.size());
    w.row("enroll_rows", enroll_rows);
    w.row("test_rows", test_rows);
    w.row("trial_rows", trial_rows);
    w.timing_row("generate_seconds", seconds, precision);
    return w;
  };
  emit_writer(make(6), make(17), "");
}

// --- train -----------------------------------------------------------------

struct TrainOpts {
  std::string vectors_path;
  std::string out;
  std::string kind = "lsh";
  std::string store = "seed-only";
  std::size_t bits = 300;
  std::size_t triplets = 20000;
  std::size_t epochs = bvec::hamlearn::TrainConfig{}.epochs;
  std::size_t batch = bvec::hamlearn::TrainConfig{}.batch_size;
  double learning_rate = bvec::hamlearn::TrainConfig{}.learning_rate;
  double lambda = bvec::hamlearn::TrainConfig{}.lambda;
  double margin = bvec::hamlearn::TrainConfig{}.margin;
  double beta = bvec::hamlearn::TrainConfig{}.relaxation_beta;
  std::uint64_t seed = 0;
};

void run_train(const TrainOpts& o) {
  ConfigEcho echo("train");
  echo.add("vectors", o.vectors_path);
  echo.add("out", o.out);
  echo.add("kind", o.kind);
  echo.add("store", o.store);
  echo.add("bits", o.bits);
  echo.add("triplets", o.triplets);
  echo.add("epochs", o.epochs);
  echo.add("batch", o.batch);
  echo.add("learning_rate", o.learning_rate);
  echo.add("lambda", o.lambda);
  echo.add("margin", o.margin);
  echo.add("beta", o.beta);
  echo.add("seed", o.seed);
  echo.print();

  const LabeledVectorSet set = bvec::io::read_vectors(o.vectors_path);
  const std::size_t dim = set.dim();

  Timer timer;
  std::size_t actual_bits = o.bits;
  std::size_t triplet_count = 0;
  if (o.kind == "lsh") {
    const auto model = bvec::lsh::sample_model(dim, o.bits, o.seed);
    const auto storage = o.store == "matrix" ? bvec::io::LshStorage::matrix
                                             : bvec::io::LshStorage::seed_only;
    bvec::io::write_model(o.out, model, storage);
  } else {
    const auto triplets =
        bvec::synth::sample_triplets(set, o.triplets, bvec::derive_stream(o.seed, 1));
    triplet_count = triplets.size();
    bvec::hamlearn::TrainConfig cfg;
    cfg.epochs = o.epochs;
    cfg.batch_size = o.batch;
    cfg.learning_rate = o.learning_rate;
    cfg.lambda = o.lambda;
    cfg.margin = o.margin;
    cfg.relaxation_beta = o.beta;
    cfg.seed = o.seed;
    if (o.kind == "full") {
      const auto model = bvec::hamlearn::train_full(triplets, dim, o.bits, cfg);
      bvec::io::write_model(o.out, model, o.seed);
    } else {
      const auto model = bvec::hamlearn::train_block(triplets, dim, o.bits, cfg);
      actual_bits = model.nbits();
      bvec::io::write_model(o.out, model, o.seed);
    }
  }
  const double seconds = timer.seconds();

  auto make = [&](int precision) {
    ReportWriter w;
    w.row("report", std::string("train"));
    w.row("kind", o.kind);
    w.row("dim", dim);
    w.row("bits", o.bits);
    w.row("bits_actual", actual_bits);
    w.row("triplets", triplet_count);
    w.timing_row("train_seconds", seconds, precision);
    return w;
  };
  emit_writer(make(6), make(17), "");
}

// --- encode ----------------------------------------------------------------

struct EncodeOpts {
  std::string model_path;
  std::string vectors_path;
  std::string out;
};

void run_encode(const EncodeOpts& o) {
  ConfigEcho echo("encode");
  echo.add("model", o.model_path);
  echo.add("vectors", o.vectors_path);
  echo.add("out", o.out);
  echo.print();

  const auto model = bvec::io::read_model(o.model_path);
  const LabeledVectorSet set = bvec::io::read_vectors(o.vectors_path);
  if (bvec::io::model_dim(model) != set.dim()) {
    throw bvec::DimensionMismatch(
        "encode: model expects dim " + std::to_string(bvec::io::model_dim(model)) +
        " but vectors have dim " + std::to_string(set.dim()));
  }

  Timer timer;
  LabeledCodeSet codes;
  codes.ids = set.ids;
  codes.labels = set.labels;
  codes.codes.reserve(set.size());
  for (const auto& v : set.vectors) codes.codes.push_back(bvec::io::encode_with(model, v));
  bvec::io::write_codes(o.out, codes);
  const double seconds = timer.seconds();

  auto make = [&](int precision) {
    ReportWriter w;
    w.row("report", std::string("encode"));
    w.row("kind", std::string(bvec::io::model_kind(model)));
    w.row("rows", codes.size());
    w.row("nbits", bvec::io::model_nbits(model));
    w.timing_row("encode_seconds", seconds, precision);
    return w;
  };
  emit_writer(make(6), make(17), "");
}

// --- eval-verify -----------------------------------------------------------

struct VerifyOpts {
  std::string trials_path;
  std::string enroll_path;
  std::string test_path;
  std::string scorer = "cosine";
  unsigned threads = 1;
  std::string report_path;
};

template <typename Set, typename Repr>
std::map<std::string, Repr> merge_stores(const Set& enroll, const Set& test,
                                         std::vector<Repr> Set::* field) {
  std::map<std::string, Repr> store;
  for (std::size_t i = 0; i < enroll.ids.size(); ++i) {
    store.emplace(enroll.ids[i], (enroll.*field)[i]);
  }
  for (std::size_t i = 0; i < test.ids.size(); ++i) {
    if (!store.emplace(test.ids[i], (test.*field)[i]).second) {
      throw bvec::InvalidConfig("duplicate id across enroll and test sets: " +
                                test.ids[i]);
    }
  }
  return store;
}

void run_verify(const VerifyOpts& o) {
  ConfigEcho echo("eval-verify");
  echo.add("trials", o.trials_path);
  echo.add("enroll", o.enroll_path);
  echo.add("test", o.test_path);
  echo.add("scorer", o.scorer);
  echo.add("threads", o.threads);
  echo.add("report", o.report_path);
  echo.print();

  const auto trials = bvec::io::read_trials(o.trials_path);
  bvec::eval::VerificationReport report;
  if (o.scorer == "cosine") {
    const auto enroll = bvec::io::read_vectors(o.enroll_path);
    const auto test = bvec::io::read_vectors(o.test_path);
    if (enroll.dim() != test.dim()) {
      throw bvec::DimensionMismatch("eval-verify: enroll and test dims differ");
    }
    const auto store = merge_stores(enroll, test, &LabeledVectorSet::vectors);
    Timer timer;
    const auto scores = bvec::eval::score_trials<DenseVector>(trials, store, o.threads);
    report = bvec::eval::verification_report(trials, scores, o.scorer, enroll.dim(),
                                             o.threads, timer.seconds());
  } else {
    const auto enroll = bvec::io::read_codes(o.enroll_path);
    const auto test = bvec::io::read_codes(o.test_path);
    if (enroll.nbits() != test.nbits()) {
      throw bvec::DimensionMismatch("eval-verify: enroll and test widths differ");
    }
    const auto store = merge_stores(enroll, test, &LabeledCodeSet::codes);
    Timer timer;
    const auto scores = bvec::eval::score_trials<BinaryCode>(trials, store, o.threads);
    report = bvec::eval::verification_report(trials, scores, o.scorer, enroll.nbits(),
                                             o.threads, timer.seconds());
  }
  emit_report(report, o.report_path);
}

// --- eval-identify ---------------------------------------------------------

struct IdentifyOpts {
  std::string gallery_path;
  std::string probes_path;
  std::vector<std::size_t> ks = {1, 5};
  unsigned threads = 1;
  std::string report_path;
};

bool is_code_text(const std::string& text) {
  if (text.rfind("BCODE ", 0) == 0) return true;
  if (text.rfind("BVEC ", 0) == 0) return false;
  throw bvec::ParseError("unrecognized set format", 1);
}

void run_identify(const IdentifyOpts& o) {
  ConfigEcho echo("eval-identify");
  echo.add("gallery", o.gallery_path);
  echo.add("probes", o.probes_path);
  std::string k_list;
  for (const auto k : o.ks) {
    if (!k_list.empty()) k_list += ",";
    k_list += std::to_string(k);
  }
  echo.add("k", k_list);
  echo.add("threads", o.threads);
  echo.add("report", o.report_path);
  echo.print();

  std::vector<std::size_t> ks = o.ks;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) throw bvec::InvalidConfig("eval-identify: --k must list at least one rank");

  const std::string gallery_text = bvec::io::detail::read_file(o.gallery_path);
  const std::string probes_text = bvec::io::detail::read_file(o.probes_path);
  const bool codes = is_code_text(gallery_text);
  if (codes != is_code_text(probes_text)) {
    throw bvec::InvalidConfig("eval-identify: gallery and probes must share a format");
  }

  bvec::eval::IdentificationReport report;
  if (codes) {
    const auto gallery_set = bvec::io::parse_codes(gallery_text);
    const auto probe_set = bvec::io::parse_codes(probes_text);
    std::vector<bvec::eval::GalleryEntry<BinaryCode>> gallery;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < gallery_set.size(); ++i) {
      if (!seen.insert(gallery_set.labels[i]).second) {
        throw bvec::InvalidConfig("eval-identify: gallery repeats speaker " +
                                  gallery_set.labels[i]);
      }
      gallery.push_back({gallery_set.labels[i], gallery_set.codes[i]});
    }
    std::vector<std::pair<BinaryCode, std::string>> probes;
    for (std::size_t i = 0; i < probe_set.size(); ++i) {
      probes.emplace_back(probe_set.codes[i], probe_set.labels[i]);
    }
    report = bvec::eval::topk_accuracy<BinaryCode>(gallery, probes, ks, o.threads);
  } else {
    const auto gallery_set = bvec::io::parse_vectors(gallery_text);
    const auto probe_set = bvec::io::parse_vectors(probes_text);
    std::vector<bvec::eval::GalleryEntry<DenseVector>> gallery;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < gallery_set.size(); ++i) {
      if (!seen.insert(gallery_set.labels[i]).second) {
        throw bvec::InvalidConfig("eval-identify: gallery repeats speaker " +
                                  gallery_set.labels[i]);
      }
      gallery.push_back({gallery_set.labels[i], gallery_set.vectors[i]});
    }
    std::vector<std::pair<DenseVector, std::string>> probes;
    for (std::size_t i = 0; i < probe_set.size(); ++i) {
      probes.emplace_back(probe_set.vectors[i], probe_set.labels[i]);
    }
    report = bvec::eval::topk_accuracy<DenseVector>(gallery, probes, ks, o.threads);
  }
  emit_report(report, o.report_path);
}

// --- bench -----------------------------------------------------------------

struct BenchOpts {
  std::size_t bits = 150;
  std::size_t dim = 150;
  std::size_t gallery_size = 100000;
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  std::string report_path;
};

void run_bench(const BenchOpts& o) {
  ConfigEcho echo("bench");
  echo.add("bits", o.bits);
  echo.add("dim", o.dim);
  echo.add("gallery_size", o.gallery_size);
  echo.add("reps", o.reps);
  echo.add("seed", o.seed);
  echo.add("report", o.report_path);
  echo.print();

  const auto hamming = bvec::eval::bench_scan(o.gallery_size, o.bits,
                                              bvec::eval::Scorer::hamming, o.reps, o.seed);
  const auto cosine = bvec::eval::bench_scan(o.gallery_size, o.dim,
                                             bvec::eval::Scorer::cosine, o.reps, o.seed);
  const double speedup = cosine.median_seconds / hamming.median_seconds;

  auto make = [&](int precision) {
    ReportWriter w;
    w.row("report", std::string("bench"));
    w.row("gallery_size", o.gallery_size);
    w.row("repetitions", o.reps);
    w.row("hamming.width", hamming.width);
    w.row("hamming.checksum", static_cast<std::size_t>(hamming.checksum));
    w.row("cosine.width", cosine.width);
    w.row("cosine.checksum", static_cast<std::size_t>(cosine.checksum));
    w.timing_row("hamming.median_seconds", hamming.median_seconds, precision);
    w.timing_row("hamming.comparisons_per_second", hamming.comparisons_per_second,
                 precision);
    w.timing_row("cosine.median_seconds", cosine.median_seconds, precision);
    w.timing_row("cosine.comparisons_per_second", cosine.comparisons_per_second,
                 precision);
    w.timing_row("speedup", speedup, precision);
    return w;
  };
  emit_writer(make(6), make(17), o.report_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary speaker embedding toolkit"};
  app.require_subcommand(1);

  GenOpts gen_opts;
  auto* gen = app.add_subcommand("gen", "synthesize a labeled vector corpus");
  gen->add_option("--speakers", gen_opts.speakers, "number of speakers")
      ->capture_default_str();
  gen->add_option("--utts", gen_opts.utterances, "utterances per speaker")
      ->capture_default_str();
  gen->add_option("--dim", gen_opts.dim, "vector dimension")->capture_default_str();
  gen->add_option("--within-spread", gen_opts.within_spread,
                  "within-speaker noise scale")
      ->capture_default_str();
  gen->add_option("--channel-shift", gen_opts.channel_shift,
                  "channel offset applied to the later utterances")
      ->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "corpus seed")->capture_default_str();
  gen->add_option("--enroll-utts", gen_opts.enroll_utts,
                  "utterances reserved for enrollment (0 selects half)")
      ->capture_default_str();
  gen->add_option("--impostors-per-target", gen_opts.impostors,
                  "impostor trials sampled per target trial")
      ->capture_default_str();
  gen->add_option("--out", gen_opts.out, "write the full corpus here");
  gen->add_option("--enroll-out", gen_opts.enroll_out,
                  "write speaker-mean enrollment vectors here");
  gen->add_option("--test-out", gen_opts.test_out, "write held-out test vectors here");
  gen->add_option("--trials-out", gen_opts.trials_out, "write a trial list here");

  TrainOpts train_opts;
  auto* train = app.add_subcommand("train", "fit a binarization model");
  train->add_option("--vectors", train_opts.vectors_path, "labeled training vectors")
      ->required();
  train->add_option("--out", train_opts.out, "model output path")->required();
  train->add_option("--kind", train_opts.kind, "model family")
      ->check(CLI::IsMember({"lsh", "full", "block"}))
      ->capture_default_str();
  train->add_option("--store", train_opts.store, "lsh storage form")
      ->check(CLI::IsMember({"seed-only", "matrix"}))
      ->capture_default_str();
  train->add_option("--bits", train_opts.bits, "code width in bits")
      ->capture_default_str();
  train->add_option("--triplets", train_opts.triplets,
                    "triplets sampled for learned kinds")
      ->capture_default_str();
  train->add_option("--epochs", train_opts.epochs, "training epochs")
      ->capture_default_str();
  train->add_option("--batch", train_opts.batch, "minibatch size")->capture_default_str();
  train->add_option("--learning-rate", train_opts.learning_rate, "subgradient step size")
      ->capture_default_str();
  train->add_option("--lambda", train_opts.lambda, "L2 regularization strength")
      ->capture_default_str();
  train->add_option("--margin", train_opts.margin, "triplet margin in bits")
      ->capture_default_str();
  train->add_option("--beta", train_opts.beta, "tanh relaxation sharpness")
      ->capture_default_str();
  train->add_option("--seed", train_opts.seed, "training seed")->capture_default_str();

  EncodeOpts encode_opts;
  auto* encode = app.add_subcommand("encode", "binarize vectors with a stored model");
  encode->add_option("--model", encode_opts.model_path, "model path")->required();
  encode->add_option("--vectors", encode_opts.vectors_path, "vectors to encode")
      ->required();
  encode->add_option("--out", encode_opts.out, "code output path")->required();

  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("eval-verify", "score a verification trial list");
  verify->add_option("--trials", verify_opts.trials_path, "trial list")->required();
  verify->add_option("--enroll", verify_opts.enroll_path, "enrollment set")->required();
  verify->add_option("--test", verify_opts.test_path, "test set")->required();
  verify->add_option("--scorer", verify_opts.scorer, "similarity backend")
      ->check(CLI::IsMember({"cosine", "hamming"}))
      ->capture_default_str();
  verify->add_option("--threads", verify_opts.threads, "worker threads")
      ->capture_default_str();
  verify->add_option("--report", verify_opts.report_path, "write a key-value report here");

  IdentifyOpts identify_opts;
  auto* identify = app.add_subcommand("eval-identify", "closed-set identification");
  identify->add_option("--gallery", identify_opts.gallery_path,
                       "one enrolled row per speaker")
      ->required();
  identify->add_option("--probes", identify_opts.probes_path, "labeled probe set")
      ->required();
  identify->add_option("--k", identify_opts.ks, "top-k ranks to report")
      ->delimiter(',')
      ->capture_default_str();
  identify->add_option("--threads", identify_opts.threads, "worker threads")
      ->capture_default_str();
  identify->add_option("--report", identify_opts.report_path,
                       "write a key-value report here");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "compare Hamming and cosine scan speed");
  bench->add_option("--bits", bench_opts.bits, "code width for the Hamming scan")
      ->capture_default_str();
  bench->add_option("--dim", bench_opts.dim, "vector dimension for the cosine scan")
      ->capture_default_str();
  bench->add_option("--gallery-size", bench_opts.gallery_size, "entries per gallery")
      ->capture_default_str();
  bench->add_option("--reps", bench_opts.reps, "timing repetitions (median reported)")
      ->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "gallery seed")->capture_default_str();
  bench->add_option("--report", bench_opts.report_path, "write a key-value report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (gen->parsed()) run_gen(gen_opts);
    if (train->parsed()) run_train(train_opts);
    if (encode->parsed()) run_encode(encode_opts);
    if (verify->parsed()) run_verify(verify_opts);
    if (identify->parsed()) run_identify(identify_opts);
    if (bench->parsed()) run_bench(bench_opts);
  } catch (const bvec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bvec::CorruptModel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bvec::MissingVector& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bvec::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bvec::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bvec::DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bvec::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
