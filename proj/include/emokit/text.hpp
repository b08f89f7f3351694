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

#ifndef EMOKIT_TEXT_HPP_
#define EMOKIT_TEXT_HPP_

#include <map>
#include <string>
#include <vector>

#include "emokit/common.hpp"

namespace emokit {
namespace text {

// Lowercases and splits on runs of non-alphanumeric bytes (ASCII).
// Bytes outside ASCII letters/digits act as separators.
std::vector<std::string> tokenize(const std::string& s);

// Token-to-index map, frozen after build. Indices are assigned in
// lexicographic token order so a rebuilt vocabulary is bit-identical.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Keeps tokens occurring at least min_freq times across all docs.
  static Vocabulary build(const std::vector<std::vector<std::string>>& docs,
                          int min_freq = 2);

  // -1 for out-of-vocabulary tokens.
  int index(const std::string& token) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Unigram count vector of length size().
  Vector count_features(const std::vector<std::string>& toks) const;

  static Vocabulary from_tokens(std::vector<std::string> tokens);

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, int> index_;
};

}  // namespace text
}  // namespace emokit

#endif  // EMOKIT_TEXT_HPP_
