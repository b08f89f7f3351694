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

// Deterministic synthetic datasets: six emotion classes with controllable
// per-modality informativeness, so fusing text and audio can be made
// strictly more informative than either stream alone.

#ifndef EMOKIT_SYNTH_HPP_
#define EMOKIT_SYNTH_HPP_

#include <array>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"

namespace emokit {
namespace synth {

struct SyntheticSpec {
  int n_items = 600;
  long long seed = 0;
  // Must lie on the simplex within kSimplexTolerance.
  Vector6 class_balance = Vector6::Constant(1.0 / kNumClasses);
  // Probability that a record's transcript / waveform carries its class
  // signal at all; the rest are pure filler / noise.
  double text_informativeness = 1.0;
  double audio_informativeness = 1.0;

  void validate() const;
};

// Class-specific vocabulary the transcript generator draws from;
// pools are disjoint across classes and from the filler pool.
const std::array<std::vector<std::string>, kNumClasses>& class_token_pools();
const std::vector<std::string>& filler_tokens();

// Sinusoid fundamentals and amplitude-modulation rates separating the
// six audio classes.
const std::array<double, kNumClasses>& class_base_freqs();
const std::array<double, kNumClasses>& class_am_rates();

// Generates records and writes one 16 kHz PCM-16 mono WAV per record
// under out_dir/audio/. audio_path fields are relative to out_dir.
// Splits are 70/15/15 train/validation/test by seeded shuffle. Identical
// specs produce identical bytes.
std::vector<MediaRecord> make_synthetic_dataset(const SyntheticSpec& spec,
                                                const std::string& out_dir);

}  // namespace synth
}  // namespace emokit

#endif  // EMOKIT_SYNTH_HPP_
