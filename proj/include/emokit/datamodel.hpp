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

#ifndef EMOKIT_DATAMODEL_HPP_
#define EMOKIT_DATAMODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/labels.hpp"

namespace emokit {

// Tolerance for the probability-simplex invariant: |sum - 1| <= this.
inline constexpr double kSimplexTolerance = 1e-6;

enum class Modality { text, audio, fused };

std::string modality_name(Modality modality);
Modality parse_modality(const std::string& name);

enum class Split { train, validation, test, unlabeled };

std::string split_name(Split split);
Split parse_split(const std::string& name);

// Six class probabilities on the simplex, tagged with the taxonomy the
// indices refer to. Validated at construction; immutable afterwards.
class EmotionVector {
 public:
  EmotionVector(const Vector6& probs, Taxonomy taxonomy);

  const Vector6& probs() const { return probs_; }
  Taxonomy taxonomy() const { return taxonomy_; }
  double operator[](int i) const { return probs_[i]; }

 private:
  Vector6 probs_;
  Taxonomy taxonomy_;
};

// Rescale nonnegative raw scores so they sum to one. Throws on negative
// entries and on the all-zero vector.
EmotionVector normalize_to_simplex(const Vector6& raw, Taxonomy taxonomy);

// One video or utterance with its text metadata and audio reference.
struct MediaRecord {
  std::string id;
  std::string category;
  std::string title;
  std::string description;
  std::string transcript;
  std::string audio_path;
  std::optional<int> gold_label;
  Split split = Split::unlabeled;
};

// Per-class probabilities for n items under one modality: 6 rows (classes)
// by n columns (items). Every column is a valid EmotionVector and item ids
// are unique. Immutable after construction.
class ScoreMatrix {
 public:
  ScoreMatrix(Matrix values, Modality modality,
              std::vector<std::string> item_ids, Taxonomy taxonomy);

  const Matrix& values() const { return values_; }
  Modality modality() const { return modality_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  Taxonomy taxonomy() const { return taxonomy_; }
  int n_items() const { return static_cast<int>(values_.cols()); }

  EmotionVector column(int i) const;

 private:
  Matrix values_;
  Modality modality_;
  std::vector<std::string> item_ids_;
  Taxonomy taxonomy_;
};

}  // namespace emokit

#endif  // EMOKIT_DATAMODEL_HPP_
