// Copyright 2026 The Emokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Release gate: eight independent end-to-end checks, one PASS/FAIL line
// each. Exits nonzero when any check fails. Pass a number to run a
// single check.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"
#include "emokit/dsp.hpp"
#include "emokit/fusion.hpp"
#include "emokit/fusion_train.hpp"
#include "emokit/manifest.hpp"
#include "emokit/metrics.hpp"
#include "emokit/rng.hpp"
#include "emokit/scorers.hpp"
#include "emokit/stats.hpp"
#include "emokit/synth.hpp"
#include "emokit/text.hpp"
#include "oracles.hpp"

#ifndef EMOKIT_CLI_PATH
#error "EMOKIT_CLI_PATH must point at the command-line binary"
#endif

namespace fs = std::filesystem;
using namespace emokit;
namespace oracle = emokit_test::oracle;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Spectrogram front end against brute-force oracles.

// Reflect index without edge duplication: ... 2 1 | 0 1 2 ... n-1 | n-2 ...
double sample_reflected(const Vector& x, long long idx) {
  const long long n = x.size();
  while (idx < 0 || idx >= n) {
    if (idx < 0) idx = -idx;
    if (idx >= n) idx = 2 * (n - 1) - idx;
  }
  return x[idx];
}

Outcome check_frontend_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst_stft = 0.0;
  double worst_logmel = 0.0;
  const double pi = std::acos(-1.0);

  for (int trial = 0; trial < 50; ++trial) {
    const int n_fft = 64 << rng.uniform_int(3);  // 64, 128 or 256
    const int hop = n_fft / (rng.uniform_int(2) == 0 ? 4 : 2);
    const bool center = trial % 2 == 0;
    const int min_len = center ? n_fft / 2 + 1 : n_fft;
    const int len =
        min_len + static_cast<int>(rng.uniform_int(
                      static_cast<uint64_t>(1024 - min_len + 1)));

    Waveform w;
    w.sample_rate = 16000;
    w.samples = Vector(len);
    for (int i = 0; i < len; ++i) w.samples[i] = rng.gaussian();

    dsp::StftParams p;
    p.n_fft = n_fft;
    p.hop = hop;
    p.center_pad = center;

    const ComplexMatrix fast = dsp::stft(w, p);
    const int n_bins = n_fft / 2 + 1;
    const int n_frames = static_cast<int>(fast.cols());

    dsp::MelParams m;
    m.n_mels = n_fft / 8;
    m.fmin = 50.0;
    m.fmax = 8000.0;
    const Matrix fast_logmel = dsp::log_mel_spectrogram(w, p, m).values;
    const auto bank = oracle::naive_mel_filterbank(m.n_mels, n_fft,
                                                   w.sample_rate, m.fmin,
                                                   m.fmax);

    for (int t = 0; t < n_frames; ++t) {
      std::vector<double> frame(static_cast<size_t>(n_fft));
      for (int j = 0; j < n_fft; ++j) {
        const long long src =
            static_cast<long long>(t) * hop + j - (center ? n_fft / 2 : 0);
        const double window =
            0.5 - 0.5 * std::cos(2.0 * pi * j / static_cast<double>(n_fft));
        frame[static_cast<size_t>(j)] =
            window * sample_reflected(w.samples, src);
      }
      const auto spectrum = oracle::naive_dft(frame);
      for (int k = 0; k < n_bins; ++k) {
        worst_stft = std::max(
            worst_stft,
            std::abs(fast(k, t) - spectrum[static_cast<size_t>(k)]));
      }
      for (int band = 0; band < m.n_mels; ++band) {
        double power = 0.0;
        for (int k = 0; k < n_bins; ++k) {
          power += bank[static_cast<size_t>(band)][static_cast<size_t>(k)] *
                   std::norm(spectrum[static_cast<size_t>(k)]);
        }
        const double expected = std::log(std::max(power, dsp::kPowerFloor));
        worst_logmel =
            std::max(worst_logmel, std::abs(fast_logmel(band, t) - expected));
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  Outcome out;
  out.pass = worst_stft <= 1e-9 && worst_logmel <= 1e-6 && elapsed < 30.0;
  out.detail = fmt("max stft err %.3g (limit 1e-9), max log-mel err %.3g "
                   "(limit 1e-6), %.1fs (limit 30s)",
                   worst_stft, worst_logmel, elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 2. Analytic gradients against central finite differences.

fusion::FusionInput random_fusion_input(const fusion::FusionConfig& config,
                                        int vocab_size, Rng& rng) {
  fusion::FusionInput in;
  const int len =
      static_cast<int>(rng.uniform_int(
          static_cast<uint64_t>(config.max_text_tokens) + 1));
  for (int j = 0; j < len; ++j) {
    in.token_ids.push_back(
        static_cast<int>(rng.uniform_int(static_cast<uint64_t>(vocab_size))));
    in.text_mask.push_back(rng.uniform() < 0.8);
  }
  const int per_side = dsp::kImageSize / config.patch_size;
  const int n_patches = per_side * per_side;
  const int patch_dim = config.patch_size * config.patch_size;
  in.patches = Matrix(n_patches, patch_dim);
  for (int p = 0; p < n_patches; ++p) {
    for (int d = 0; d < patch_dim; ++d) in.patches(p, d) = rng.uniform();
  }
  return in;
}

Outcome check_gradients() {
  const auto t0 = std::chrono::steady_clock::now();
  fusion::FusionConfig config;
  config.d_model = 8;
  config.n_layers = 1;
  config.n_heads = 2;
  config.d_ff = 16;
  config.max_text_tokens = 6;
  config.patch_size = 16;
  config.seed = 2024;
  const int vocab_size = 12;

  fusion::FusionModel model = fusion::init_model(config, vocab_size);
  auto params = model.tensors();

  Rng rng(77);
  const double h = 1e-5;
  double worst_rel = 0.0;
  long long entries = 0;

  for (int point = 0; point < 20; ++point) {
    const fusion::FusionInput input =
        random_fusion_input(config, vocab_size, rng);
    const Vector6 target = fusion::one_hot(
        static_cast<int>(rng.uniform_int(static_cast<uint64_t>(kNumClasses))));

    const auto loss_grad = fusion::loss_and_gradient(model, input, target);
    const auto grad_tensors = loss_grad.second.tensors();

    for (size_t t = 0; t < params.size(); ++t) {
      Matrix& w = *params[t].second;
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
          const double orig = w(r, c);
          w(r, c) = orig + h;
          const double up = fusion::loss_from_logits(
              fusion::forward(model, input).logits, target);
          w(r, c) = orig - h;
          const double down = fusion::loss_from_logits(
              fusion::forward(model, input).logits, target);
          w(r, c) = orig;
          const double fd = (up - down) / (2.0 * h);
          const double analytic = (*grad_tensors[t].second)(r, c);
          const double rel =
              std::abs(analytic - fd) /
              std::max({std::abs(analytic), std::abs(fd), 1e-5});
          worst_rel = std::max(worst_rel, rel);
          ++entries;
        }
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  Outcome out;
  out.pass = worst_rel <= 1e-4 && elapsed < 120.0;
  out.detail = fmt("max relative err %.3g (limit 1e-4) over %.0f entries, "
                   "%.1fs (limit 120s)",
                   worst_rel, static_cast<double>(entries), elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Attention rows normalized; masked slots carry zero mass.

Outcome check_attention_invariants() {
  Rng rng(303);
  double worst_row = 0.0;
  int configs_checked = 0;

  for (int trial = 0; trial < 100; ++trial) {
    fusion::FusionConfig config;
    const int d_choices[] = {4, 8, 12, 16};
    config.d_model = d_choices[rng.uniform_int(4)];
    const int head_choices[] = {1, 2, 4};
    do {
      config.n_heads = head_choices[rng.uniform_int(3)];
    } while (config.d_model % config.n_heads != 0);
    config.n_layers = 1 + static_cast<int>(rng.uniform_int(3));
    config.d_ff = 8 << rng.uniform_int(3);
    config.max_text_tokens = 1 + static_cast<int>(rng.uniform_int(8));
    const int patch_choices[] = {16, 32, 64};
    config.patch_size = patch_choices[rng.uniform_int(3)];
    config.seed = 7000 + trial;
    const int vocab_size = 5 + static_cast<int>(rng.uniform_int(36));

    const fusion::FusionModel model = fusion::init_model(config, vocab_size);
    const fusion::FusionInput input =
        random_fusion_input(config, vocab_size, rng);
    const auto result = fusion::forward(model, input);

    const int len = static_cast<int>(input.token_ids.size());
    const int per_side = dsp::kImageSize / config.patch_size;
    const int s_total = 1 + len + per_side * per_side;
    std::vector<bool> active(static_cast<size_t>(s_total), true);
    for (int j = 0; j < len; ++j) {
      active[static_cast<size_t>(1 + j)] = input.text_mask[static_cast<size_t>(j)];
    }

    for (const auto& layer : result.attn) {
      for (const Matrix& a : layer) {
        if (a.rows() != s_total || a.cols() != s_total) {
          return {false, "attention matrix has wrong shape"};
        }
        for (int q = 0; q < s_total; ++q) {
          if (!active[static_cast<size_t>(q)]) {
            if (a.row(q).cwiseAbs().maxCoeff() != 0.0) {
              return {false, "masked query row carries mass"};
            }
            continue;
          }
          worst_row = std::max(worst_row, std::abs(a.row(q).sum() - 1.0));
          for (int k = 0; k < s_total; ++k) {
            if (!active[static_cast<size_t>(k)] && a(q, k) != 0.0) {
              return {false, "masked key column carries mass"};
            }
          }
        }
      }
    }
    ++configs_checked;
  }

  Outcome out;
  out.pass = worst_row <= 1e-6 && configs_checked == 100;
  out.detail = fmt("max |row sum - 1| = %.3g (limit 1e-6) across %.0f configs,"
                   " masked slots all exactly zero",
                   worst_row, static_cast<double>(configs_checked));
  return out;
}

// ---------------------------------------------------------------------------
// 4. Fused classifier beats both unimodal baselines on complementary data.

double argmax_accuracy(const ScoreMatrix& scores,
                       const std::vector<int>& gold) {
  int correct = 0;
  for (int i = 0; i < scores.n_items(); ++i) {
    int best = 0;
    for (int c = 1; c < kNumClasses; ++c) {
      if (scores.values()(c, i) > scores.values()(best, i)) best = c;
    }
    if (best == gold[static_cast<size_t>(i)]) ++correct;
  }
  return static_cast<double>(correct) / scores.n_items();
}

std::vector<int> gold_of(const std::vector<MediaRecord>& records) {
  std::vector<int> gold;
  for (const auto& r : records) gold.push_back(*r.gold_label);
  return gold;
}

Outcome check_fusion_advantage() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir =
      fs::temp_directory_path() /
      ("emokit-acceptance-fusion-" + std::to_string(getpid()));
  fs::remove_all(dir);

  synth::SyntheticSpec spec;
  spec.n_items = 600;
  spec.seed = 42;
  spec.text_informativeness = 0.6;
  spec.audio_informativeness = 0.6;
  const auto records = synth::make_synthetic_dataset(spec, dir.string());

  const auto train_records = filter_split(records, Split::train);
  const auto val_records = filter_split(records, Split::validation);
  const auto test_records = filter_split(records, Split::test);
  const auto test_gold = gold_of(test_records);

  const logreg::Hyper baseline_hyper;
  const auto text_model =
      scorers::train_text_baseline(train_records, baseline_hyper,
                                   Taxonomy::youtube);
  const double text_acc =
      argmax_accuracy(scorers::score_text(text_model, test_records), test_gold);

  const auto audio_model = scorers::train_audio_baseline(
      train_records, baseline_hyper, Taxonomy::youtube, dir.string());
  const double audio_acc = argmax_accuracy(
      scorers::score_audio(audio_model, test_records, dir.string()),
      test_gold);

  fusion::FusionConfig config;
  config.d_model = 32;
  config.n_layers = 2;
  config.n_heads = 4;
  config.d_ff = 64;
  config.max_text_tokens = 24;
  config.patch_size = 16;
  config.seed = 1;

  const auto vocab = fusion::build_transcript_vocab(train_records);
  const auto train_inputs =
      fusion::build_inputs(train_records, vocab, config, dir.string());
  const auto val_inputs =
      fusion::build_inputs(val_records, vocab, config, dir.string());
  const auto test_inputs =
      fusion::build_inputs(test_records, vocab, config, dir.string());

  fusion::TrainHyper hyper;
  hyper.lr = 1e-3;
  hyper.batch = 16;
  hyper.epochs = 40;
  hyper.seed = 1;
  const auto result = fusion::train(config, vocab.size(), train_inputs,
                                    gold_of(train_records), val_inputs,
                                    gold_of(val_records), hyper);
  const double fused_acc =
      fusion::accuracy(result.best_model, test_inputs, test_gold);
  fs::remove_all(dir);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const double margin = fused_acc - std::max(text_acc, audio_acc);
  Outcome out;
  out.pass = margin >= 0.05 && text_acc >= 0.45 && audio_acc >= 0.45 &&
             elapsed <= 600.0;
  out.detail = fmt("text %.3f, audio %.3f (each needs >= 0.45), ", text_acc,
                   audio_acc) +
               fmt("fused %.3f, margin %+.3f (needs >= +0.05), %.0fs "
                   "(limit 600s)",
                   fused_acc, margin, elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 5. Planted cross-modal correlations recovered through the score pipeline.

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Outcome check_coherence_recovery() {
  const int n = 1000;
  const std::array<double, kNumClasses> target = {0.8, 0.8, 0.7,
                                                  0.95, 0.05, 0.0};
  // Classes 0..3 and 5 vary independently; class 4 absorbs the budget so
  // every column sums to exactly 1. Its deviation is minus the sum of the
  // others, which makes its cross-modal correlation the amplitude-squared
  // weighted mean of theirs; the amplitudes below place that mean at 0.05.
  const std::array<double, kNumClasses> amp = {0.02, 0.02, 0.02,
                                               0.02, 0.0,  0.155};
  const std::array<double, kNumClasses> base = {0.0875, 0.0875, 0.0875,
                                                0.0875, 0.35,   0.3};
  const double pi = std::acos(-1.0);

  Matrix text(kNumClasses, n);
  Matrix audio(kNumClasses, n);
  std::vector<std::string> ids;
  Rng rng(4);
  for (int i = 0; i < n; ++i) {
    double dev_text_sum = 0.0;
    double dev_audio_sum = 0.0;
    for (const int c : {0, 1, 2, 3, 5}) {
      // Gaussian copula: uniforms built this way carry Pearson correlation
      // (6/pi) asin(rho/2), so rho = 2 sin(pi r / 6) plants r exactly.
      const double rho =
          2.0 * std::sin(pi * target[static_cast<size_t>(c)] / 6.0);
      const double g1 = rng.gaussian();
      const double g2 = rho * g1 + std::sqrt(1.0 - rho * rho) * rng.gaussian();
      const double u_text = 2.0 * normal_cdf(g1) - 1.0;
      const double u_audio = 2.0 * normal_cdf(g2) - 1.0;
      const double dev_text = amp[static_cast<size_t>(c)] * u_text;
      const double dev_audio = amp[static_cast<size_t>(c)] * u_audio;
      text(c, i) = base[static_cast<size_t>(c)] + dev_text;
      audio(c, i) = base[static_cast<size_t>(c)] + dev_audio;
      dev_text_sum += dev_text;
      dev_audio_sum += dev_audio;
    }
    text(4, i) = base[4] - dev_text_sum;
    audio(4, i) = base[4] - dev_audio_sum;
    ids.push_back("item" + std::to_string(i));
  }

  const ScoreMatrix text_scores(text, Modality::text, ids, Taxonomy::youtube);
  const ScoreMatrix audio_scores(audio, Modality::audio, ids,
                                 Taxonomy::youtube);
  const auto report = stats::coherence_report(text_scores, audio_scores, 0.5);

  double worst = 0.0;
  std::string rs;
  bool verdicts_ok = true;
  for (int c = 0; c < kNumClasses; ++c) {
    const auto& e = report.per_emotion[static_cast<size_t>(c)];
    worst = std::max(worst, std::abs(e.r - target[static_cast<size_t>(c)]));
    rs += fmt("%.3f ", e.r);
    const bool want_coherent = c <= 3;
    if (want_coherent != (e.verdict == stats::Verdict::coherent)) {
      verdicts_ok = false;
    }
  }

  Outcome out;
  out.pass = worst <= 0.05 && verdicts_ok;
  out.detail = "recovered r = [ " + rs + "] vs planted " +
               "[ 0.800 0.800 0.700 0.950 0.050 0.000 ], " +
               fmt("max err %.3f (limit 0.05), ", worst) +
               (verdicts_ok ? "verdicts split correctly at 0.5"
                            : "verdict split WRONG");
  return out;
}

// ---------------------------------------------------------------------------
// 6. Trapezoidal AUROC equals the pairwise win-rate oracle.

Outcome check_auroc_exactness() {
  Rng rng(606);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(199));
    Vector scores(n);
    std::vector<double> scores_vec(static_cast<size_t>(n));
    std::vector<bool> positive(static_cast<size_t>(n));
    int n_pos = 0;
    for (int i = 0; i < n; ++i) {
      double s = rng.gaussian();
      if (trial % 2 == 0) {
        // Tie-heavy: quantize onto a handful of levels.
        const double levels = 2.0 + static_cast<double>(rng.uniform_int(7));
        s = std::floor(normal_cdf(s) * levels) / levels;
      }
      scores[i] = s;
      scores_vec[static_cast<size_t>(i)] = s;
      positive[static_cast<size_t>(i)] = rng.uniform() < 0.4;
      if (positive[static_cast<size_t>(i)]) ++n_pos;
    }
    if (n_pos == 0) positive[0] = true;
    if (n_pos == n) positive[0] = false;

    const double fast = metrics::roc_auc(scores, positive).auc;
    const double slow = oracle::mann_whitney(scores_vec, positive);
    worst = std::max(worst, std::abs(fast - slow));
  }
  Outcome out;
  out.pass = worst <= 1e-12;
  out.detail = fmt("max |auc - pairwise win rate| = %.3g (limit 1e-12) "
                   "over 100 instances including tie-heavy ones",
                   worst);
  return out;
}

// ---------------------------------------------------------------------------
// 7. Central-tendency statistics and correlation against brute force.

Outcome check_summary_stats() {
  Rng rng(707);
  long long rows_checked = 0;
  long long exact_mismatches = 0;
  double worst_pearson = 0.0;

  const double widths[] = {0.05, 0.1, 0.07, 0.03};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(29));
    Matrix values(kNumClasses, n);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int c = 0; c < kNumClasses; ++c) {
        double v = rng.uniform();
        if (trial % 3 == 0) v = std::floor(v * 8.0) / 8.0 + 0.01;
        values(c, i) = v + 1e-6;
        sum += values(c, i);
      }
      values.col(i) /= sum;
      ids.push_back("item" + std::to_string(i));
    }
    const ScoreMatrix m(values, Modality::text, ids, Taxonomy::youtube);
    const double w = widths[trial % 4];
    const auto summary = stats::tendency_summary(m, w);
    for (int c = 0; c < kNumClasses; ++c) {
      std::vector<double> row(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = values(c, i);
      const auto brute = oracle::brute_tendency(row, w);
      const auto& fast = summary.per_emotion[static_cast<size_t>(c)];
      if (fast.mean != brute.mean || fast.median != brute.median ||
          fast.mode != brute.mode || fast.range != brute.range) {
        ++exact_mismatches;
      }
      ++rows_checked;
    }
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(49));
    Vector x(n), y(n);
    std::vector<double> xv(static_cast<size_t>(n)), yv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      x[i] = rng.gaussian();
      y[i] = 0.3 * x[i] + rng.gaussian();
      xv[static_cast<size_t>(i)] = x[i];
      yv[static_cast<size_t>(i)] = y[i];
    }
    const double fast = stats::pearson(x, y);
    const double slow = oracle::brute_pearson(xv, yv);
    worst_pearson = std::max(worst_pearson, std::abs(fast - slow));
  }

  Outcome out;
  out.pass = rows_checked >= 1000 && exact_mismatches == 0 &&
             worst_pearson <= 1e-12;
  out.detail = fmt("%.0f rows compared, %.0f exact mismatches, ",
                   static_cast<double>(rows_checked),
                   static_cast<double>(exact_mismatches)) +
               fmt("max pearson err %.3g (limit 1e-12)", worst_pearson);
  return out;
}

// ---------------------------------------------------------------------------
// 8. The whole command-line pipeline is byte-reproducible.

int run_cli(const std::vector<std::string>& args) {
  std::string cmd = "'";
  cmd += EMOKIT_CLI_PATH;
  cmd += "'";
  for (const auto& a : args) {
    cmd += " '" + a + "'";
  }
  cmd += " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::map<std::string, std::string> snapshot_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[fs::relative(entry.path(), dir).string()] = ss.str();
  }
  return files;
}

bool run_pipeline(const fs::path& dir, std::string* failed_step) {
  const auto step = [&](const char* name,
                        const std::vector<std::string>& args) {
    if (run_cli(args) != 0) {
      *failed_step = name;
      return false;
    }
    return true;
  };
  const std::string data = (dir / "data").string();
  const std::string manifest = data + "/manifest.json";
  const std::string text_csv = (dir / "text.csv").string();
  const std::string audio_csv = (dir / "audio.csv").string();
  const std::string fused_csv = (dir / "fused.csv").string();
  const std::string fusion_dir = (dir / "fusion").string();

  return step("synth", {"synth", "--n", "40", "--seed", "12", "--out", data}) &&
         step("score-text",
              {"score", "--manifest", manifest, "--modality", "text",
               "--model", (dir / "models/text").string(), "--fit", "--out",
               text_csv, "--seed", "12"}) &&
         step("score-audio",
              {"score", "--manifest", manifest, "--modality", "audio",
               "--model", (dir / "models/audio").string(), "--fit", "--out",
               audio_csv, "--seed", "12"}) &&
         step("train-fusion",
              {"train-fusion", "--manifest", manifest, "--d-model", "8",
               "--n-layers", "1", "--n-heads", "2", "--d-ff", "16",
               "--max-text-tokens", "12", "--patch-size", "16", "--epochs",
               "2", "--batch", "8", "--lr", "1e-3", "--seed", "12", "--out",
               fusion_dir}) &&
         step("predict",
              {"predict", "--manifest", manifest, "--checkpoint",
               fusion_dir + "/checkpoint", "--out", fused_csv, "--seed",
               "12"}) &&
         step("evaluate",
              {"evaluate", "--scores", fused_csv, "--manifest", manifest,
               "--split", "test", "--out", (dir / "eval/fused").string(),
               "--seed", "12"}) &&
         step("compare",
              {"compare", "--text", text_csv, "--audio", audio_csv, "--fused",
               fused_csv, "--manifest", manifest, "--out",
               (dir / "cmp/report").string(), "--seed", "12"}) &&
         step("coherence",
              {"coherence", "--text", text_csv, "--audio", audio_csv, "--out",
               (dir / "coh/report").string(), "--seed", "12"}) &&
         step("plot-roc",
              {"plot", "--kind", "roc", "--in",
               (dir / "eval/fused_roc_points.csv").string(), "--out",
               (dir / "plots/roc.svg").string(), "--seed", "12"}) &&
         step("plot-confusion",
              {"plot", "--kind", "confusion", "--in",
               (dir / "eval/fused_confusion.csv").string(), "--out",
               (dir / "plots/confusion.svg").string(), "--seed", "12"}) &&
         step("plot-scatter",
              {"plot", "--kind", "scatter", "--in", text_csv, "--in2",
               audio_csv, "--out", (dir / "plots/scatter.svg").string(),
               "--seed", "12"}) &&
         step("plot-tendency",
              {"plot", "--kind", "tendency", "--in", text_csv, "--in2",
               audio_csv, "--in3", fused_csv, "--out",
               (dir / "plots/tendency.svg").string(), "--seed", "12"});
}

Outcome check_pipeline_determinism() {
  const fs::path dir =
      fs::temp_directory_path() /
      ("emokit-acceptance-pipeline-" + std::to_string(getpid()));
  std::string failed_step;

  fs::remove_all(dir);
  fs::create_directories(dir);
  if (!run_pipeline(dir, &failed_step)) {
    fs::remove_all(dir);
    return {false, "first run failed at step " + failed_step};
  }
  const auto first = snapshot_tree(dir);

  fs::remove_all(dir);
  fs::create_directories(dir);
  if (!run_pipeline(dir, &failed_step)) {
    fs::remove_all(dir);
    return {false, "second run failed at step " + failed_step};
  }
  const auto second = snapshot_tree(dir);
  fs::remove_all(dir);

  size_t differing = 0;
  std::string example;
  for (const auto& [path, bytes] : first) {
    const auto it = second.find(path);
    if (it == second.end() || it->second != bytes) {
      ++differing;
      if (example.empty()) example = path;
    }
  }
  for (const auto& [path, bytes] : second) {
    if (!first.count(path)) {
      ++differing;
      if (example.empty()) example = path;
    }
  }

  Outcome out;
  out.pass = differing == 0 && !first.empty();
  out.detail = fmt("%.0f artifacts compared across two runs, ",
                   static_cast<double>(first.size())) +
               (differing == 0
                    ? "all byte-identical"
                    : fmt("%.0f differ", static_cast<double>(differing)) +
                          " (first: " + example + ")");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "spectrogram front end matches brute-force oracles",
       check_frontend_oracles},
      {2, "fusion gradients match finite differences", check_gradients},
      {3, "attention is normalized and masked slots carry no mass",
       check_attention_invariants},
      {4, "fused classifier beats both unimodal baselines",
       check_fusion_advantage},
      {5, "planted cross-modal correlations are recovered",
       check_coherence_recovery},
      {6, "auroc equals the pairwise win rate", check_auroc_exactness},
      {7, "summary statistics match brute force", check_summary_stats},
      {8, "pipeline artifacts are byte-reproducible",
       check_pipeline_determinism},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("unexpected exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
