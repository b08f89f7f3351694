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

#include "emokit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>

#include "emokit/rng.hpp"
#include "emokit/wav.hpp"

namespace emokit {
namespace synth {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSampleRate = 16000;
constexpr int kClipSamples = 16000;  // one second
// Within an informative transcript, fraction of tokens drawn from the
// class pool rather than filler.
constexpr double kPoolTokenRate = 0.6;

}  // namespace

void SyntheticSpec::validate() const {
  if (n_items < 0) throw ConfigError("n_items must be >= 0");
  if ((class_balance.array() < 0.0).any()) {
    throw ConfigError("class_balance entries must be nonnegative");
  }
  if (std::abs(class_balance.sum() - 1.0) > kSimplexTolerance) {
    throw ConfigError("class_balance must sum to 1");
  }
  if (text_informativeness < 0.0 || text_informativeness > 1.0 ||
      audio_informativeness < 0.0 || audio_informativeness > 1.0) {
    throw ConfigError("informativeness must lie in [0, 1]");
  }
}

const std::array<std::vector<std::string>, kNumClasses>& class_token_pools() {
  static const std::array<std::vector<std::string>, kNumClasses> pools = {{
      {"rage", "fury", "irate", "seething", "livid", "resent", "scowl",
       "boiling"},
      {"dread", "scared", "terror", "panic", "anxious", "tremble", "phobia",
       "wary"},
      {"joy", "cheerful", "delight", "smile", "glee", "merry", "sunny",
       "laugh"},
      {"adore", "darling", "sweetheart", "tender", "devoted", "cherish",
       "romance", "embrace"},
      {"gloom", "sorrow", "weep", "mourn", "dismal", "tearful", "downcast",
       "longing"},
      {"sudden", "astonish", "startle", "unexpected", "gasp", "wow",
       "stunned", "jolt"},
  }};
  return pools;
}

const std::vector<std::string>& filler_tokens() {
  static const std::vector<std::string> filler = {
      "the",   "about", "like",  "just",    "video", "channel",
      "today", "watch", "new",   "thanks",  "this",  "that",
      "with",  "from",  "really", "very"};
  return filler;
}

const std::array<double, kNumClasses>& class_base_freqs() {
  static const std::array<double, kNumClasses> freqs = {220.0, 262.0, 330.0,
                                                        392.0, 440.0, 494.0};
  return freqs;
}

const std::array<double, kNumClasses>& class_am_rates() {
  static const std::array<double, kNumClasses> rates = {2.0, 3.0, 4.0,
                                                        5.0, 6.0, 7.0};
  return rates;
}

namespace {

std::string make_transcript(int label, bool informative, Rng& rng) {
  const auto& pool = class_token_pools()[static_cast<size_t>(label)];
  const auto& filler = filler_tokens();
  const int n_tokens = 18 + static_cast<int>(rng.uniform_int(7));
  std::string out;
  for (int t = 0; t < n_tokens; ++t) {
    const bool from_pool = informative && rng.uniform() < kPoolTokenRate;
    const auto& source = from_pool ? pool : filler;
    const auto& tok = source[rng.uniform_int(source.size())];
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

Waveform make_clip(int label, bool informative, Rng& rng) {
  Waveform w;
  w.sample_rate = kSampleRate;
  w.samples.resize(kClipSamples);
  if (informative) {
    const double f0 = class_base_freqs()[static_cast<size_t>(label)];
    const double am = class_am_rates()[static_cast<size_t>(label)];
    const double phase_c = rng.uniform() * 2.0 * kPi;
    const double phase_m = rng.uniform() * 2.0 * kPi;
    for (int t = 0; t < kClipSamples; ++t) {
      const double time = static_cast<double>(t) / kSampleRate;
      const double carrier = std::sin(2.0 * kPi * f0 * time + phase_c);
      const double envelope =
          0.6 + 0.4 * std::sin(2.0 * kPi * am * time + phase_m);
      w.samples[t] = 0.45 * carrier * envelope + 0.02 * rng.gaussian();
    }
  } else {
    for (int t = 0; t < kClipSamples; ++t) {
      w.samples[t] = 0.1 * rng.gaussian();
    }
  }
  for (int t = 0; t < kClipSamples; ++t) {
    w.samples[t] = std::clamp(w.samples[t], -1.0, 1.0);
  }
  return w;
}

}  // namespace

std::vector<MediaRecord> make_synthetic_dataset(const SyntheticSpec& spec,
                                                const std::string& out_dir) {
  spec.validate();
  const std::filesystem::path audio_dir =
      std::filesystem::path(out_dir) / "audio";
  std::error_code ec;
  std::filesystem::create_directories(audio_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + audio_dir.string() +
                  ": " + ec.message());
  }

  Rng rng(static_cast<uint64_t>(spec.seed));
  const Vector balance = spec.class_balance;
  std::vector<MediaRecord> records;
  records.reserve(static_cast<size_t>(spec.n_items));
  char buf[64];
  for (int i = 0; i < spec.n_items; ++i) {
    const int label = static_cast<int>(rng.categorical(balance));
    const bool text_on = rng.uniform() < spec.text_informativeness;
    const bool audio_on = rng.uniform() < spec.audio_informativeness;

    MediaRecord r;
    std::snprintf(buf, sizeof(buf), "syn-%04d", i);
    r.id = buf;
    r.category = "synthetic";
    std::snprintf(buf, sizeof(buf), "synthetic clip %04d", i);
    r.title = buf;
    r.description = "generated fixture item";
    r.transcript = make_transcript(label, text_on, rng);
    std::snprintf(buf, sizeof(buf), "audio/syn-%04d.wav", i);
    r.audio_path = buf;
    r.gold_label = label;

    const Waveform clip = make_clip(label, audio_on, rng);
    save_wav(clip, (std::filesystem::path(out_dir) / r.audio_path).string());
    records.push_back(std::move(r));
  }

  // 70/15/15 by seeded shuffle; remainder goes to test.
  std::vector<int> order(static_cast<size_t>(spec.n_items));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const int n_train = spec.n_items * 70 / 100;
  const int n_val = spec.n_items * 15 / 100;
  for (int pos = 0; pos < spec.n_items; ++pos) {
    Split s = Split::test;
    if (pos < n_train) {
      s = Split::train;
    } else if (pos < n_train + n_val) {
      s = Split::validation;
    }
    records[static_cast<size_t>(order[static_cast<size_t>(pos)])].split = s;
  }
  return records;
}

}  // namespace synth
}  // namespace emokit
