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

#ifndef EMOKIT_DSP_HPP_
#define EMOKIT_DSP_HPP_

#include <complex>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/wav.hpp"

namespace emokit {
namespace dsp {

// Rendered spectrogram images are always this size.
inline constexpr int kImageSize = 64;

// Log-power floor; keeps ln() away from -inf on silent bands.
inline constexpr double kPowerFloor = 1e-10;

struct StftParams {
  int n_fft = 1024;  // power of two
  int hop = 256;     // 0 < hop <= n_fft
  bool center_pad = true;

  void validate() const;
};

struct MelParams {
  int n_mels = 64;
  double fmin = 50.0;
  double fmax = 8000.0;
};

// Log-mel power matrix (n_mels x n_frames) with the parameters that
// produced it. Values are ln(max(power, kPowerFloor)).
struct Spectrogram {
  Matrix values;
  StftParams stft;
  MelParams mel;
  int sample_rate = 0;
};

// 64x64 image in [0, 1], min-max normalized from a Spectrogram.
struct SpectroImage {
  Matrix pixels;
  StftParams stft;
  MelParams mel;
  int sample_rate = 0;
};

// HTK mel scale: mel(f) = 2595 * log10(1 + f/700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Periodic Hann window of length n: 0.5 - 0.5*cos(2*pi*i/n).
Vector hann_window(int n);

// In-place radix-2 decimation-in-time FFT; length must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& x);

// Frame the signal: column t is the n_fft-sample slice starting at
// t*hop. With center_pad, the signal is reflect-padded by n_fft/2 on
// each side first (no edge duplication); without it, the signal must be
// at least n_fft samples long.
Matrix frame_signal(const Vector& samples, int n_fft, int hop,
                    bool center_pad);

// One-sided STFT: (n_fft/2 + 1) x n_frames, column t = FFT of the
// Hann-windowed frame t.
ComplexMatrix stft(const Waveform& w, const StftParams& p);

// Triangular filters, n_mels x (n_fft/2 + 1). Centers are uniformly
// spaced on the HTK mel scale between fmin and fmax; each row is
// normalized to sum to 1. Throws ConfigError when a filter covers no
// FFT bin.
Matrix mel_filterbank(int n_mels, int n_fft, int sample_rate, double fmin,
                      double fmax);

Spectrogram log_mel_spectrogram(const Waveform& w, const StftParams& p,
                                const MelParams& m);

// Orthonormal DCT-II along the mel axis; first n_coeffs rows kept.
Matrix mfcc(const Spectrogram& s, int n_coeffs);

// 40-dim summary vector for the audio baseline scorer, computed with the
// default front-end parameters. Layout (all statistics across frames,
// std is the population standard deviation):
//   [ 0..12]  mean of MFCC 0..12
//   [13..25]  std  of MFCC 0..12
//   [26..27]  mean, std of spectral centroid (Hz, power-weighted)
//   [28..29]  mean, std of per-frame RMS energy (unwindowed frames)
//   [30..31]  mean, std of per-frame zero-crossing rate (per sample)
//   [32..35]  mean of log-mel bands 0..3
//   [36..39]  std  of log-mel bands 0..3
inline constexpr int kSummaryDim = 40;
Vector summary_features(const Waveform& w);

// Min-max normalize to [0,1] (constant input maps to all 0.5), then
// resample to 64x64: area averaging where the axis shrinks, bilinear
// where it grows.
SpectroImage render_spectro_image(const Spectrogram& s);

// Spectrogram cache format: "n_mels,n_frames" header then one CSV row
// per mel band, full double precision.
void save_spectrogram_csv(const Spectrogram& s, const std::string& path);
Matrix load_spectrogram_csv(const std::string& path);

}  // namespace dsp
}  // namespace emokit

#endif  // EMOKIT_DSP_HPP_
