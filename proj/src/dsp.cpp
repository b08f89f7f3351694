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

#include "emokit/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace emokit {
namespace dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Reflect an out-of-range index back into [0, n) without duplicating
// the edge sample (librosa-style "reflect").
Eigen::Index reflect_index(long long j, long long n) {
  if (n == 1) return 0;
  while (j < 0 || j >= n) {
    if (j < 0) j = -j;
    if (j >= n) j = 2 * (n - 1) - j;
  }
  return static_cast<Eigen::Index>(j);
}

}  // namespace

void StftParams::validate() const {
  if (!is_power_of_two(n_fft)) {
    throw ConfigError("n_fft must be a power of two, got " +
                      std::to_string(n_fft));
  }
  if (hop <= 0 || hop > n_fft) {
    throw ConfigError("hop must satisfy 0 < hop <= n_fft, got " +
                      std::to_string(hop));
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Vector hann_window(int n) {
  Vector w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / n);
  }
  return w;
}

void fft_inplace(std::vector<std::complex<double>>& x) {
  const size_t n = x.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) {
    throw ConfigError("fft length must be a power of two, got " +
                      std::to_string(n));
  }
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  // Butterflies, length doubling each stage.
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

Matrix frame_signal(const Vector& samples, int n_fft, int hop,
                    bool center_pad) {
  const long long n = samples.size();
  long long n_frames;
  const long long pad = center_pad ? n_fft / 2 : 0;
  if (center_pad) {
    if (n < 1) throw ValidationError("frame_signal: empty signal");
    n_frames = n / hop + 1;
  } else {
    if (n < n_fft) {
      throw ValidationError("frame_signal: signal shorter than n_fft (" +
                            std::to_string(n) + " < " +
                            std::to_string(n_fft) + ") without center_pad");
    }
    n_frames = (n - n_fft) / hop + 1;
  }
  Matrix frames(n_fft, n_frames);
  for (long long t = 0; t < n_frames; ++t) {
    const long long start = t * hop - pad;
    for (int i = 0; i < n_fft; ++i) {
      frames(i, t) = samples[reflect_index(start + i, n)];
    }
  }
  return frames;
}

ComplexMatrix stft(const Waveform& w, const StftParams& p) {
  p.validate();
  const Matrix frames =
      frame_signal(w.samples, p.n_fft, p.hop, p.center_pad);
  const Vector window = hann_window(p.n_fft);
  const int n_bins = p.n_fft / 2 + 1;
  ComplexMatrix out(n_bins, frames.cols());
  std::vector<std::complex<double>> buf(static_cast<size_t>(p.n_fft));
  for (Eigen::Index t = 0; t < frames.cols(); ++t) {
    for (int i = 0; i < p.n_fft; ++i) {
      buf[static_cast<size_t>(i)] = frames(i, t) * window[i];
    }
    fft_inplace(buf);
    for (int k = 0; k < n_bins; ++k) {
      out(k, t) = buf[static_cast<size_t>(k)];
    }
  }
  return out;
}

Matrix mel_filterbank(int n_mels, int n_fft, int sample_rate, double fmin,
                      double fmax) {
  if (n_mels < 1) throw ConfigError("n_mels must be positive");
  if (!is_power_of_two(n_fft)) {
    throw ConfigError("n_fft must be a power of two");
  }
  if (sample_rate <= 0) throw ConfigError("sample rate must be positive");
  if (!(0.0 <= fmin && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ConfigError("need 0 <= fmin < fmax <= sample_rate/2");
  }
  const int n_bins = n_fft / 2 + 1;
  const double mel_lo = hz_to_mel(fmin);
  const double mel_hi = hz_to_mel(fmax);
  // n_mels + 2 edge points, uniform in mel; filter m is the triangle
  // over (edge[m], edge[m+1], edge[m+2]) in Hz.
  std::vector<double> edges_hz(static_cast<size_t>(n_mels) + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    const double mel =
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1);
    edges_hz[static_cast<size_t>(i)] = mel_to_hz(mel);
  }
  Matrix fb = Matrix::Zero(n_mels, n_bins);
  for (int m = 0; m < n_mels; ++m) {
    const double left = edges_hz[static_cast<size_t>(m)];
    const double center = edges_hz[static_cast<size_t>(m) + 1];
    const double right = edges_hz[static_cast<size_t>(m) + 2];
    double row_sum = 0.0;
    for (int k = 0; k < n_bins; ++k) {
      const double f =
          static_cast<double>(k) * sample_rate / static_cast<double>(n_fft);
      double weight = 0.0;
      if (f > left && f < right) {
        weight = f <= center ? (f - left) / (center - left)
                             : (right - f) / (right - center);
      }
      fb(m, k) = weight;
      row_sum += weight;
    }
    if (row_sum <= 0.0) {
      throw ConfigError("mel filter " + std::to_string(m) +
                        " spans less than one FFT bin; reduce n_mels or "
                        "increase n_fft");
    }
    fb.row(m) /= row_sum;
  }
  return fb;
}

Spectrogram log_mel_spectrogram(const Waveform& w, const StftParams& p,
                                const MelParams& m) {
  const ComplexMatrix spec = stft(w, p);
  const Matrix power = spec.cwiseAbs2();
  const Matrix fb =
      mel_filterbank(m.n_mels, p.n_fft, w.sample_rate, m.fmin, m.fmax);
  Spectrogram s;
  s.values = (fb * power).unaryExpr(
      [](double v) { return std::log(std::max(v, kPowerFloor)); });
  s.stft = p;
  s.mel = m;
  s.sample_rate = w.sample_rate;
  return s;
}

Matrix mfcc(const Spectrogram& s, int n_coeffs) {
  const int n_mels = static_cast<int>(s.values.rows());
  if (n_coeffs < 1 || n_coeffs > n_mels) {
    throw ConfigError("n_coeffs must be in [1, n_mels]");
  }
  // Orthonormal DCT-II: D(k,i) = s_k cos(pi (2i+1) k / (2N)),
  // s_0 = sqrt(1/N), s_k = sqrt(2/N).
  Matrix dct(n_coeffs, n_mels);
  for (int k = 0; k < n_coeffs; ++k) {
    const double scale =
        std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n_mels));
    for (int i = 0; i < n_mels; ++i) {
      dct(k, i) = scale * std::cos(kPi * (2.0 * i + 1.0) * k / (2.0 * n_mels));
    }
  }
  return dct * s.values;
}

namespace {

void mean_std(const Vector& v, double& mean, double& std_out) {
  const double n = static_cast<double>(v.size());
  mean = v.sum() / n;
  const double var = (v.array() - mean).square().sum() / n;
  std_out = std::sqrt(std::max(var, 0.0));
}

}  // namespace

Vector summary_features(const Waveform& w) {
  const StftParams p;  // defaults: 1024/256, centered
  const MelParams m;
  if (w.samples.size() < p.n_fft) {
    throw ValidationError("summary_features: need at least " +
                          std::to_string(p.n_fft) + " samples");
  }

  const ComplexMatrix spec = stft(w, p);
  const Matrix power = spec.cwiseAbs2();
  const Matrix fb =
      mel_filterbank(m.n_mels, p.n_fft, w.sample_rate, m.fmin, m.fmax);
  Spectrogram s;
  s.values = (fb * power).unaryExpr(
      [](double v) { return std::log(std::max(v, kPowerFloor)); });
  s.stft = p;
  s.mel = m;
  s.sample_rate = w.sample_rate;

  const Matrix coeffs = mfcc(s, 13);
  const Eigen::Index n_frames = power.cols();

  // Spectral centroid per frame, power-weighted; silent frame -> 0 Hz.
  Vector centroid(n_frames);
  Vector bin_freq(power.rows());
  for (Eigen::Index k = 0; k < power.rows(); ++k) {
    bin_freq[k] = static_cast<double>(k) * w.sample_rate / p.n_fft;
  }
  for (Eigen::Index t = 0; t < n_frames; ++t) {
    const double total = power.col(t).sum();
    centroid[t] = total > 0.0 ? bin_freq.dot(power.col(t)) / total : 0.0;
  }

  // RMS and zero-crossing rate over unwindowed frames (same framing).
  const Matrix frames = frame_signal(w.samples, p.n_fft, p.hop, p.center_pad);
  Vector rms(n_frames), zcr(n_frames);
  for (Eigen::Index t = 0; t < n_frames; ++t) {
    rms[t] = std::sqrt(frames.col(t).squaredNorm() / p.n_fft);
    int crossings = 0;
    for (int i = 1; i < p.n_fft; ++i) {
      if (frames(i - 1, t) * frames(i, t) < 0.0) ++crossings;
    }
    zcr[t] = static_cast<double>(crossings) / (p.n_fft - 1);
  }

  Vector out(kSummaryDim);
  for (int c = 0; c < 13; ++c) {
    double mean, sd;
    mean_std(coeffs.row(c).transpose(), mean, sd);
    out[c] = mean;
    out[13 + c] = sd;
  }
  mean_std(centroid, out[26], out[27]);
  mean_std(rms, out[28], out[29]);
  mean_std(zcr, out[30], out[31]);
  for (int b = 0; b < 4; ++b) {
    double mean, sd;
    mean_std(s.values.row(b).transpose(), mean, sd);
    out[32 + b] = mean;
    out[36 + b] = sd;
  }
  return out;
}

namespace {

// 1-D resample of a length-src sequence to length dst: mean over the
// covered source interval when shrinking, bilinear at pixel centers when
// growing.
Vector resample_axis(const Vector& src, int dst) {
  const int s = static_cast<int>(src.size());
  Vector out(dst);
  if (s == dst) {
    out = src;
    return out;
  }
  if (dst < s) {
    const double r = static_cast<double>(s) / dst;
    for (int j = 0; j < dst; ++j) {
      const double a = j * r;
      const double b = (j + 1) * r;
      double acc = 0.0;
      int k0 = static_cast<int>(std::floor(a));
      int k1 = static_cast<int>(std::ceil(b));
      k0 = std::max(k0, 0);
      k1 = std::min(k1, s);
      for (int k = k0; k < k1; ++k) {
        const double overlap =
            std::min(b, static_cast<double>(k + 1)) -
            std::max(a, static_cast<double>(k));
        if (overlap > 0.0) acc += overlap * src[k];
      }
      out[j] = acc / (b - a);
    }
  } else {
    const double r = static_cast<double>(s) / dst;
    for (int j = 0; j < dst; ++j) {
      double pos = (j + 0.5) * r - 0.5;
      pos = std::clamp(pos, 0.0, static_cast<double>(s - 1));
      const int i0 = static_cast<int>(std::floor(pos));
      const int i1 = std::min(i0 + 1, s - 1);
      const double t = pos - i0;
      out[j] = (1.0 - t) * src[i0] + t * src[i1];
    }
  }
  return out;
}

}  // namespace

SpectroImage render_spectro_image(const Spectrogram& s) {
  if (s.values.size() == 0) {
    throw ValidationError("render_spectro_image: empty spectrogram");
  }
  const double lo = s.values.minCoeff();
  const double hi = s.values.maxCoeff();
  Matrix norm;
  if (hi > lo) {
    norm = (s.values.array() - lo) / (hi - lo);
  } else {
    norm = Matrix::Constant(s.values.rows(), s.values.cols(), 0.5);
  }

  // Separable resample: mel axis first, then time axis.
  Matrix mid(kImageSize, norm.cols());
  for (Eigen::Index c = 0; c < norm.cols(); ++c) {
    mid.col(c) = resample_axis(norm.col(c), kImageSize);
  }
  Matrix pixels(kImageSize, kImageSize);
  for (int r = 0; r < kImageSize; ++r) {
    pixels.row(r) =
        resample_axis(mid.row(r).transpose(), kImageSize).transpose();
  }
  // Interpolation of values in [0,1] stays in [0,1] up to rounding dust.
  pixels = pixels.cwiseMax(0.0).cwiseMin(1.0);

  SpectroImage img;
  img.pixels = std::move(pixels);
  img.stft = s.stft;
  img.mel = s.mel;
  img.sample_rate = s.sample_rate;
  return img;
}

void save_spectrogram_csv(const Spectrogram& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write spectrogram: " + path);
  out << s.values.rows() << "," << s.values.cols() << "\n";
  char buf[40];
  for (Eigen::Index r = 0; r < s.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < s.values.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", s.values(r, c));
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Matrix load_spectrogram_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open spectrogram: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  int rows = 0, cols = 0;
  if (std::sscanf(line.c_str(), "%d,%d", &rows, &cols) != 2 || rows <= 0 ||
      cols <= 0) {
    throw ParseError(path + ": bad spectrogram header \"" + line + "\"");
  }
  Matrix values(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError(path + ": expected " + std::to_string(rows) +
                       " rows");
    }
    std::istringstream ss(line);
    std::string field;
    for (int c = 0; c < cols; ++c) {
      if (!std::getline(ss, field, ',')) {
        throw ParseError(path + ": row " + std::to_string(r) +
                         " has fewer than " + std::to_string(cols) +
                         " values");
      }
      values(r, c) = std::strtod(field.c_str(), nullptr);
    }
  }
  return values;
}

}  // namespace dsp
}  // namespace emokit
