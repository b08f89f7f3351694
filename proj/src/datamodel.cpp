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

#include "emokit/datamodel.hpp"

#include <cmath>
#include <unordered_set>

namespace emokit {

std::string modality_name(Modality modality) {
  switch (modality) {
    case Modality::text:
      return "text";
    case Modality::audio:
      return "audio";
    case Modality::fused:
      return "fused";
  }
  throw ValidationError("bad modality value");
}

Modality parse_modality(const std::string& name) {
  if (name == "text") return Modality::text;
  if (name == "audio") return Modality::audio;
  if (name == "fused") return Modality::fused;
  throw ValidationError("unknown modality: \"" + name + "\"");
}

std::string split_name(Split split) {
  switch (split) {
    case Split::train:
      return "train";
    case Split::validation:
      return "validation";
    case Split::test:
      return "test";
    case Split::unlabeled:
      return "unlabeled";
  }
  throw ValidationError("bad split value");
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "validation") return Split::validation;
  if (name == "test") return Split::test;
  if (name == "unlabeled") return Split::unlabeled;
  throw ValidationError("unknown split: \"" + name + "\"");
}

namespace {

void check_simplex(const Vector6& probs, const std::string& what) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (!std::isfinite(probs[i])) {
      throw ValidationError(what + ": non-finite probability");
    }
    if (probs[i] < 0.0 || probs[i] > 1.0) {
      throw ValidationError(what + ": probability out of [0,1] at class " +
                            std::to_string(i));
    }
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw ValidationError(what + ": probabilities sum to " +
                          std::to_string(sum) + ", not 1");
  }
}

}  // namespace

EmotionVector::EmotionVector(const Vector6& probs, Taxonomy taxonomy)
    : probs_(probs), taxonomy_(taxonomy) {
  check_simplex(probs_, "EmotionVector");
}

EmotionVector normalize_to_simplex(const Vector6& raw, Taxonomy taxonomy) {
  double sum = 0.0;
  for (int i = 0; i < kNumClasses; ++i) {
    if (!std::isfinite(raw[i]) || raw[i] < 0.0) {
      throw ValidationError(
          "normalize_to_simplex: entries must be finite and nonnegative");
    }
    sum += raw[i];
  }
  if (sum <= 0.0) {
    throw ValidationError("normalize_to_simplex: all entries are zero");
  }
  return EmotionVector(raw / sum, taxonomy);
}

ScoreMatrix::ScoreMatrix(Matrix values, Modality modality,
                         std::vector<std::string> item_ids, Taxonomy taxonomy)
    : values_(std::move(values)),
      modality_(modality),
      item_ids_(std::move(item_ids)),
      taxonomy_(taxonomy) {
  if (values_.rows() != kNumClasses) {
    throw ValidationError("ScoreMatrix: expected 6 rows, got " +
                          std::to_string(values_.rows()));
  }
  if (static_cast<size_t>(values_.cols()) != item_ids_.size()) {
    throw ValidationError("ScoreMatrix: " + std::to_string(values_.cols()) +
                          " columns but " + std::to_string(item_ids_.size()) +
                          " item ids");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : item_ids_) {
    if (id.empty()) throw ValidationError("ScoreMatrix: empty item id");
    if (!seen.insert(id).second) {
      throw ValidationError("ScoreMatrix: duplicate item id \"" + id + "\"");
    }
  }
  for (int j = 0; j < values_.cols(); ++j) {
    check_simplex(values_.col(j), "ScoreMatrix column \"" + item_ids_[j] +
                                      "\"");
  }
}

EmotionVector ScoreMatrix::column(int i) const {
  if (i < 0 || i >= n_items()) {
    throw ValidationError("ScoreMatrix: column index out of range");
  }
  return EmotionVector(values_.col(i), taxonomy_);
}

}  // namespace emokit
