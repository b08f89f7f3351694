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

#ifndef EMOKIT_LABELS_HPP_
#define EMOKIT_LABELS_HPP_

#include <array>
#include <string>

#include "emokit/common.hpp"

namespace emokit {

// Two six-class taxonomies, kept separate on purpose: there is no
// canonical mapping between them, so a score matrix is tagged with
// exactly one and indices are never mixed.
enum class Taxonomy { youtube, iemocap };

// YouTube taxonomy, indices 0..5 in this order.
enum class EmotionLabel { anger = 0, fear, happy, love, sad, surprise };

// IEMOCAP taxonomy, indices 0..5 in this order.
enum class IemocapLabel {
  neutrality = 0,
  sadness,
  anger,
  surprise,
  fear,
  happiness
};

const std::array<std::string, kNumClasses>& label_names(Taxonomy taxonomy);

// Name for index 0..5; throws ValidationError outside that range.
const std::string& label_name(Taxonomy taxonomy, int index);

// Inverse of label_name; throws ValidationError for unknown names.
int label_index(Taxonomy taxonomy, const std::string& name);

std::string taxonomy_name(Taxonomy taxonomy);
Taxonomy parse_taxonomy(const std::string& name);

}  // namespace emokit

#endif  // EMOKIT_LABELS_HPP_
