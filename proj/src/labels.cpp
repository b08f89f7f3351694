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

#include "emokit/labels.hpp"

namespace emokit {

namespace {

const std::array<std::string, kNumClasses> kYoutubeNames = {
    "anger", "fear", "happy", "love", "sad", "surprise"};

const std::array<std::string, kNumClasses> kIemocapNames = {
    "neutrality", "sadness", "anger", "surprise", "fear", "happiness"};

}  // namespace

const std::array<std::string, kNumClasses>& label_names(Taxonomy taxonomy) {
  return taxonomy == Taxonomy::youtube ? kYoutubeNames : kIemocapNames;
}

const std::string& label_name(Taxonomy taxonomy, int index) {
  if (index < 0 || index >= kNumClasses) {
    throw ValidationError("label index out of range: " +
                          std::to_string(index));
  }
  return label_names(taxonomy)[static_cast<size_t>(index)];
}

int label_index(Taxonomy taxonomy, const std::string& name) {
  const auto& names = label_names(taxonomy);
  for (int i = 0; i < kNumClasses; ++i) {
    if (names[static_cast<size_t>(i)] == name) return i;
  }
  throw ValidationError("unknown " + taxonomy_name(taxonomy) + " label: \"" +
                        name + "\"");
}

std::string taxonomy_name(Taxonomy taxonomy) {
  return taxonomy == Taxonomy::youtube ? "youtube" : "iemocap";
}

Taxonomy parse_taxonomy(const std::string& name) {
  if (name == "youtube") return Taxonomy::youtube;
  if (name == "iemocap") return Taxonomy::iemocap;
  throw ValidationError("unknown taxonomy: \"" + name + "\"");
}

}  // namespace emokit
