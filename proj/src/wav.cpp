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

#include "emokit/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace emokit {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& v, uint32_t x) {
  v.push_back(static_cast<uint8_t>(x & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 8) & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 16) & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(static_cast<uint8_t>(x & 0xff));
  v.push_back(static_cast<uint8_t>((x >> 8) & 0xff));
}

}  // namespace

Waveform load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WAV: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ParseError("unsupported format (not a RIFF/WAVE file): " + path);
  }

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t size = read_u32(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw ParseError("corrupt WAV chunk \"" + std::string(id, 4) +
                       "\": " + path);
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw ParseError("corrupt fmt chunk: " + path);
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      sample_rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw ParseError("corrupt WAV (missing fmt or data chunk): " + path);
  }
  if (format != 1 || bits != 16) {
    throw ParseError("unsupported format (need PCM 16-bit): " + path);
  }
  if (channels != 1) {
    throw ParseError("unsupported format (need mono, got " +
                     std::to_string(channels) + " channels): " + path);
  }
  if (sample_rate == 0) throw ParseError("corrupt WAV (zero rate): " + path);

  const size_t n = data_size / 2;
  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.resize(static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    const int16_t s =
        static_cast<int16_t>(read_u16(data + 2 * i));
    w.samples[static_cast<Eigen::Index>(i)] = static_cast<double>(s) / 32768.0;
  }
  return w;
}

void save_wav(const Waveform& w, const std::string& path) {
  if (w.sample_rate <= 0) {
    throw ValidationError("save_wav: sample rate must be positive");
  }
  const uint32_t n = static_cast<uint32_t>(w.samples.size());
  std::vector<uint8_t> bytes;
  bytes.reserve(44 + 2 * n);
  const char* riff = "RIFF";
  bytes.insert(bytes.end(), riff, riff + 4);
  put_u32(bytes, 36 + 2 * n);
  const char* wavefmt = "WAVEfmt ";
  bytes.insert(bytes.end(), wavefmt, wavefmt + 8);
  put_u32(bytes, 16);
  put_u16(bytes, 1);  // PCM
  put_u16(bytes, 1);  // mono
  put_u32(bytes, static_cast<uint32_t>(w.sample_rate));
  put_u32(bytes, static_cast<uint32_t>(w.sample_rate) * 2);
  put_u16(bytes, 2);
  put_u16(bytes, 16);
  const char* dataid = "data";
  bytes.insert(bytes.end(), dataid, dataid + 4);
  put_u32(bytes, 2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    double x = w.samples[static_cast<Eigen::Index>(i)];
    if (!std::isfinite(x)) {
      throw ValidationError("save_wav: non-finite sample");
    }
    long q = std::lround(x * 32768.0);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    put_u16(bytes, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write WAV: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace emokit
