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

// Drives the installed binary end to end through std::system; every check
// reads real files and real exit codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "bvec/eval.hpp"
#include "bvec/formats.hpp"

namespace {

namespace fs = std::filesystem;

const std::string& work_dir() {
  static const std::string dir = [] {
    const auto d = fs::temp_directory_path() / "bvec_cli_tests";
    fs::create_directories(d);
    return d.string();
  }();
  return dir;
}

std::string path_of(const std::string& name) { return work_dir() + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = path_of("last_stdout.txt");
  const std::string err_path = path_of("last_stderr.txt");
  const std::string cmd =
      std::string(BVEC_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

// Table and key-value reports segregate wall-clock readings; everything
// before the timing markers must be reproducible byte for byte.
std::string strip_timing(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  bool in_timing = false;
  while (std::getline(is, line)) {
    if (line == "# timing") {
      in_timing = true;
      continue;
    }
    if (line.rfind("timing.", 0) == 0) continue;
    if (!in_timing) os << line << "\n";
  }
  return os.str();
}

double kv_value(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(key.size() + 1));
  }
  FAIL("key not found in report: " << key);
  return 0.0;
}

// Shared small corpus pipeline; generated once per process.
struct Pipeline {
  std::string corpus = path_of("corpus.bvec");
  std::string enroll = path_of("enroll.bvec");
  std::string test = path_of("test.bvec");
  std::string trials = path_of("list.trials");
  Pipeline() {
    const auto r = run_cli(
        "gen --speakers 12 --utts 6 --dim 16 --within-spread 0.6 --seed 3"
        " --out " + corpus + " --enroll-out " + enroll + " --test-out " + test +
        " --trials-out " + trials + " --impostors-per-target 3");
    REQUIRE(r.exit_code == 0);
  }
};

const Pipeline& pipeline() {
  static const Pipeline p;
  return p;
}

}  // namespace

TEST_CASE("help text lists every subcommand and exits cleanly", "[cli]") {
  const auto r = run_cli("--help");
  REQUIRE(r.exit_code == 0);
  for (const char* name :
       {"gen", "train", "encode", "eval-verify", "eval-identify", "bench"}) {
    REQUIRE(r.out.find(name) != std::string::npos);
  }
  REQUIRE(run_cli("").exit_code == 3);
  REQUIRE(run_cli("gen --bogus 1").exit_code == 3);
  REQUIRE(run_cli("frobnicate").exit_code == 3);
}

TEST_CASE("gen writes corpus, splits, and trials with echoed config", "[cli]") {
  const auto& p = pipeline();
  const auto corpus = bvec::io::read_vectors(p.corpus);
  REQUIRE(corpus.size() == 72);
  REQUIRE(corpus.dim() == 16);

  const auto enroll = bvec::io::read_vectors(p.enroll);
  REQUIRE(enroll.size() == 12);  // one mean per speaker
  REQUIRE(enroll.ids == enroll.labels);

  const auto test = bvec::io::read_vectors(p.test);
  REQUIRE(test.size() == 36);  // three held-out utterances per speaker

  const auto trials = bvec::io::read_trials(p.trials);
  REQUIRE(trials.size() == 144);  // 36 targets, 3 impostors each
  std::size_t targets = 0;
  for (const auto& t : trials) targets += t.is_target ? 1 : 0;
  REQUIRE(targets == 36);
}

TEST_CASE("gen output is deterministic and stdout is stable modulo timing", "[cli]") {
  const std::string again = path_of("corpus_again.bvec");
  const std::string args =
      "gen --speakers 12 --utts 6 --dim 16 --within-spread 0.6 --seed 3 --out ";
  const auto r1 = run_cli(args + again);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(slurp(again) == slurp(pipeline().corpus));

  const auto r2 = run_cli(args + again);
  REQUIRE(r2.exit_code == 0);
  REQUIRE(strip_timing(r1.out) == strip_timing(r2.out));
  REQUIRE(r1.out.find("# config") != std::string::npos);
  REQUIRE(r1.out.find("command gen") != std::string::npos);
  REQUIRE(r1.out.find("seed 3") != std::string::npos);
  REQUIRE(r1.out.find("within_spread 0.59999999999999998") != std::string::npos);
}

TEST_CASE("trained models rewrite identically across runs", "[cli]") {
  const auto& p = pipeline();
  const std::string m1 = path_of("lsh_a.bmodel");
  const std::string m2 = path_of("lsh_b.bmodel");
  const std::string args = " --vectors " + p.corpus + " --kind lsh --bits 64 --seed 9";
  REQUIRE(run_cli("train" + args + " --out " + m1).exit_code == 0);
  REQUIRE(run_cli("train" + args + " --out " + m2).exit_code == 0);
  REQUIRE(slurp(m1) == slurp(m2));
  REQUIRE_FALSE(slurp(m1).empty());

  const std::string b1 = path_of("block_a.bmodel");
  const std::string b2 = path_of("block_b.bmodel");
  const std::string bargs = " --vectors " + p.corpus +
                            " --kind block --bits 48 --epochs 2 --triplets 400 --seed 9";
  REQUIRE(run_cli("train" + bargs + " --out " + b1).exit_code == 0);
  REQUIRE(run_cli("train" + bargs + " --out " + b2).exit_code == 0);
  REQUIRE(slurp(b1) == slurp(b2));
}

TEST_CASE("verification pipeline reports an EER for both scorers", "[cli]") {
  const auto& p = pipeline();
  const std::string model = path_of("verify_lsh.bmodel");
  REQUIRE(run_cli("train --vectors " + p.corpus + " --kind lsh --bits 128 --seed 11" +
                  " --out " + model)
              .exit_code == 0);

  const std::string enroll_codes = path_of("enroll.bcode");
  const std::string test_codes = path_of("test.bcode");
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.enroll + " --out " +
                  enroll_codes)
              .exit_code == 0);
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.test + " --out " +
                  test_codes)
              .exit_code == 0);

  const std::string cos_report = path_of("verify_cosine.kv");
  const auto cos = run_cli("eval-verify --trials " + p.trials + " --enroll " + p.enroll +
                           " --test " + p.test + " --scorer cosine --report " +
                           cos_report);
  REQUIRE(cos.exit_code == 0);
  REQUIRE(cos.out.find("eer.overall") != std::string::npos);
  const double cos_eer = kv_value(slurp(cos_report), "eer.overall");
  REQUIRE(cos_eer >= 0.0);
  REQUIRE(cos_eer <= 0.5);

  const std::string ham_report = path_of("verify_hamming.kv");
  const auto ham = run_cli("eval-verify --trials " + p.trials + " --enroll " +
                           enroll_codes + " --test " + test_codes +
                           " --scorer hamming --report " + ham_report);
  REQUIRE(ham.exit_code == 0);
  const double ham_eer = kv_value(slurp(ham_report), "eer.overall");
  REQUIRE(ham_eer >= 0.0);
  REQUIRE(ham_eer <= 0.5);
  REQUIRE(slurp(ham_report).find("timing.scoring_seconds") != std::string::npos);
}

TEST_CASE("thread count changes speed only, never scores", "[cli]") {
  const auto& p = pipeline();
  const std::string r1 = path_of("threads1.kv");
  const std::string r4 = path_of("threads4.kv");
  const std::string base = "eval-verify --trials " + p.trials + " --enroll " + p.enroll +
                           " --test " + p.test + " --scorer cosine";
  REQUIRE(run_cli(base + " --threads 1 --report " + r1).exit_code == 0);
  REQUIRE(run_cli(base + " --threads 4 --report " + r4).exit_code == 0);
  const std::string kv1 = strip_timing(slurp(r1));
  std::string kv4 = strip_timing(slurp(r4));
  // Only the echoed thread count may differ once timing is stripped.
  const auto fix = [](std::string s) {
    const auto pos = s.find("threads 4");
    if (pos != std::string::npos) s.replace(pos, 9, "threads 1");
    return s;
  };
  REQUIRE(kv1 == fix(kv4));
}

TEST_CASE("well separated speakers reach an exact zero EER", "[cli]") {
  const std::string enroll = path_of("sep_enroll.bvec");
  const std::string test = path_of("sep_test.bvec");
  const std::string trials = path_of("sep.trials");
  REQUIRE(run_cli("gen --speakers 10 --utts 4 --dim 32 --within-spread 0.05 --seed 5"
                  " --enroll-out " + enroll + " --test-out " + test + " --trials-out " +
                  trials)
              .exit_code == 0);
  const std::string report = path_of("sep.kv");
  REQUIRE(run_cli("eval-verify --trials " + trials + " --enroll " + enroll + " --test " +
                  test + " --scorer cosine --report " + report)
              .exit_code == 0);
  REQUIRE(kv_value(slurp(report), "eer.overall") == 0.0);
}

TEST_CASE("identification accuracy grows with k", "[cli]") {
  const auto& p = pipeline();
  const std::string model = path_of("ident_block.bmodel");
  REQUIRE(run_cli("train --vectors " + p.corpus +
                  " --kind block --bits 96 --epochs 3 --triplets 600 --seed 4 --out " +
                  model)
              .exit_code == 0);
  const std::string gallery_codes = path_of("gallery.bcode");
  const std::string probe_codes = path_of("probes.bcode");
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.enroll + " --out " +
                  gallery_codes)
              .exit_code == 0);
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.test + " --out " +
                  probe_codes)
              .exit_code == 0);

  const std::string report = path_of("identify.kv");
  const auto r = run_cli("eval-identify --gallery " + gallery_codes + " --probes " +
                         probe_codes + " --k 1,5 --report " + report);
  REQUIRE(r.exit_code == 0);
  const std::string kv = slurp(report);
  const double top1 = kv_value(kv, "top1");
  const double top5 = kv_value(kv, "top5");
  REQUIRE(top1 >= 0.0);
  REQUIRE(top5 >= top1);
  REQUIRE(top5 <= 1.0);
  REQUIRE(kv.find("scorer hamming") != std::string::npos);

  // Dense gallery goes through the cosine path.
  const auto dense = run_cli("eval-identify --gallery " + p.enroll + " --probes " +
                             p.test + " --k 1");
  REQUIRE(dense.exit_code == 0);
  REQUIRE(dense.out.find("cosine") != std::string::npos);
}

TEST_CASE("bench reports medians for both scans and a speedup", "[cli]") {
  const std::string report = path_of("bench.kv");
  const auto r = run_cli(
      "bench --bits 64 --dim 16 --gallery-size 2000 --reps 3 --seed 1 --report " +
      report);
  REQUIRE(r.exit_code == 0);
  const std::string kv = slurp(report);
  REQUIRE(kv_value(kv, "timing.hamming.median_seconds") > 0.0);
  REQUIRE(kv_value(kv, "timing.cosine.median_seconds") > 0.0);
  REQUIRE(kv_value(kv, "timing.speedup") > 0.0);
  REQUIRE(r.out.find("# timing") != std::string::npos);
}

TEST_CASE("file and data problems exit with code 2", "[cli]") {
  const auto& p = pipeline();
  REQUIRE(run_cli("encode --model " + path_of("missing.bmodel") + " --vectors " +
                  p.corpus + " --out " + path_of("x.bcode"))
              .exit_code == 2);
  REQUIRE(run_cli("eval-verify --trials " + path_of("missing.trials") + " --enroll " +
                  p.enroll + " --test " + p.test + " --scorer cosine")
              .exit_code == 2);

  // Feeding dense vectors to the hamming scorer is a parse failure.
  REQUIRE(run_cli("eval-verify --trials " + p.trials + " --enroll " + p.enroll +
                  " --test " + p.test + " --scorer hamming")
              .exit_code == 2);

  // A trial referencing an absent id is a data failure.
  const std::string ghost_trials = path_of("ghost.trials");
  spit(ghost_trials, "TRIALS 1\nghost spk00_u3 target\n");
  const auto r = run_cli("eval-verify --trials " + ghost_trials + " --enroll " +
                         p.enroll + " --test " + p.test + " --scorer cosine");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.err.find("ghost") != std::string::npos);

  // A flipped byte in a stored model is detected by the checksum.
  const std::string model = path_of("corrupt.bmodel");
  REQUIRE(run_cli("train --vectors " + p.corpus + " --kind lsh --bits 32 --out " + model)
              .exit_code == 0);
  std::string text = slurp(model);
  text[text.size() / 2] ^= 0x2;
  spit(model, text);
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.corpus + " --out " +
                  path_of("y.bcode"))
              .exit_code == 2);
}

TEST_CASE("configuration problems exit with code 3", "[cli]") {
  const auto& p = pipeline();
  REQUIRE(run_cli("gen --speakers 4").exit_code == 3);  // no output requested
  REQUIRE(run_cli("gen --speakers 4 --trials-out " + path_of("t.trials")).exit_code == 3);
  REQUIRE(run_cli("gen --speakers 0 --out " + path_of("z.bvec")).exit_code == 3);
  REQUIRE(run_cli("train --vectors " + p.corpus + " --kind full --bits 0 --out " +
                  path_of("z.bmodel"))
              .exit_code == 3);

  // The corpus repeats labels, so it cannot serve as a gallery.
  REQUIRE(run_cli("eval-identify --gallery " + p.corpus + " --probes " + p.test +
                  " --k 1")
              .exit_code == 3);
  REQUIRE(run_cli("eval-identify --gallery " + p.enroll + " --probes " + p.test +
                  " --k 0")
              .exit_code == 3);
  REQUIRE(run_cli("eval-identify --gallery " + p.enroll + " --probes " + p.test +
                  " --k 100")
              .exit_code == 3);

  // Mixed representations cannot be compared.
  const std::string model = path_of("mix_lsh.bmodel");
  REQUIRE(run_cli("train --vectors " + p.corpus + " --kind lsh --bits 32 --out " + model)
              .exit_code == 0);
  const std::string codes = path_of("mix.bcode");
  REQUIRE(run_cli("encode --model " + model + " --vectors " + p.enroll + " --out " +
                  codes)
              .exit_code == 0);
  REQUIRE(run_cli("eval-identify --gallery " + codes + " --probes " + p.test + " --k 1")
              .exit_code == 3);

  // Encoding vectors of the wrong width is a dimension mismatch.
  const std::string narrow = path_of("narrow.bvec");
  REQUIRE(run_cli("gen --speakers 4 --utts 2 --dim 8 --out " + narrow).exit_code == 0);
  REQUIRE(run_cli("encode --model " + model + " --vectors " + narrow + " --out " +
                  path_of("n.bcode"))
              .exit_code == 3);
}

TEST_CASE("diverging training exits with code 4", "[cli]") {
  const auto& p = pipeline();
  const auto r = run_cli("train --vectors " + p.corpus +
                         " --kind full --bits 16 --epochs 3 --batch 4 --triplets 50"
                         " --learning-rate 1e155 --lambda 1.0 --margin 50 --out " +
                         path_of("diverged.bmodel"));
  REQUIRE(r.exit_code == 4);
  REQUIRE(r.err.find("error:") != std::string::npos);
}
