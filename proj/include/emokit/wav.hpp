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

#ifndef EMOKIT_WAV_HPP_
#define EMOKIT_WAV_HPP_

#include <string>

#include "emokit/common.hpp"

namespace emokit {

struct Waveform {
  Vector samples;  // in [-1, 1]
  int sample_rate = 0;
};

// Reads PCM 16-bit mono WAV. Samples are scaled by 1/32768. Anything
// else (float PCM, stereo, corrupt header) is an unsupported-format
// ParseError.
Waveform load_wav(const std::string& path);

// Writes PCM 16-bit mono. Samples are clamped to [-1, 1] and quantized
// by round(x * 32768) limited to int16 range.
void save_wav(const Waveform& w, const std::string& path);

}  // namespace emokit

#endif  // EMOKIT_WAV_HPP_
