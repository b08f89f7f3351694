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

#include "emokit/text.hpp"

#include <algorithm>

namespace emokit {
namespace text {

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

char to_lower_ascii(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_alnum(c)) {
      cur.push_back(to_lower_ascii(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& docs,
                             int min_freq) {
  std::map<std::string, long long> freq;
  for (const auto& doc : docs) {
    for (const auto& tok : doc) ++freq[tok];
  }
  std::vector<std::string> kept;
  for (const auto& [tok, n] : freq) {
    if (n >= min_freq) kept.push_back(tok);
  }
  // std::map iteration is already lexicographic.
  return from_tokens(std::move(kept));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  for (int i = 0; i < static_cast<int>(v.tokens_.size()); ++i) {
    const auto [it, inserted] = v.index_.emplace(v.tokens_[i], i);
    if (!inserted) {
      throw ValidationError("duplicate vocabulary token: " + v.tokens_[i]);
    }
  }
  return v;
}

int Vocabulary::index(const std::string& token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

Vector Vocabulary::count_features(const std::vector<std::string>& toks) const {
  Vector x = Vector::Zero(size());
  for (const auto& tok : toks) {
    const int i = index(tok);
    if (i >= 0) x[i] += 1.0;
  }
  return x;
}

}  // namespace text
}  // namespace emokit
