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

// Per-modality emotion scorers behind small interfaces, with trainable
// softmax-regression baselines and a line-JSON subprocess adapter for
// external models.

#ifndef EMOKIT_SCORERS_HPP_
#define EMOKIT_SCORERS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"
#include "emokit/logreg.hpp"
#include "emokit/text.hpp"
#include "emokit/wav.hpp"

namespace emokit {
namespace scorers {

class TextScorer {
 public:
  virtual ~TextScorer() = default;
  // Must return a valid EmotionVector for arbitrary input text.
  virtual EmotionVector score(const std::string& text) const = 0;
  virtual Taxonomy taxonomy() const = 0;
};

class AudioScorer {
 public:
  virtual ~AudioScorer() = default;
  virtual EmotionVector score(const Waveform& audio) const = 0;
  virtual Taxonomy taxonomy() const = 0;
};

// Text a record exposes to scoring and training: title, description and
// transcript joined by single spaces.
std::string record_text(const MediaRecord& record);

// Resolves a record's audio_path against the directory the manifest came
// from; absolute paths pass through.
std::string resolve_audio_path(const std::string& root,
                               const std::string& audio_path);

class BaselineTextModel : public TextScorer {
 public:
  BaselineTextModel(text::Vocabulary vocabulary, Matrix weights,
                    Taxonomy taxonomy);

  EmotionVector score(const std::string& text) const override;
  Taxonomy taxonomy() const override { return taxonomy_; }

  const text::Vocabulary& vocabulary() const { return vocabulary_; }
  // [6][V+1], bias in the last column.
  const Matrix& weights() const { return weights_; }

  // Writes base.csv (weights) and base.json (vocabulary, taxonomy).
  void save(const std::string& base) const;
  static BaselineTextModel load(const std::string& base);

 private:
  text::Vocabulary vocabulary_;
  Matrix weights_;
  Taxonomy taxonomy_;
};

class BaselineAudioModel : public AudioScorer {
 public:
  BaselineAudioModel(Vector mean, Vector std, std::vector<int> flagged_dims,
                     Matrix weights, Taxonomy taxonomy);

  EmotionVector score(const Waveform& audio) const override;
  // Same model applied to a precomputed raw summary-feature vector.
  EmotionVector score_features(const Vector& features) const;
  Taxonomy taxonomy() const override { return taxonomy_; }

  const Vector& mean() const { return mean_; }
  const Vector& std_dev() const { return std_; }
  // Dimensions whose training variance was zero; their std is stored as 1.
  const std::vector<int>& flagged_dims() const { return flagged_dims_; }
  const Matrix& weights() const { return weights_; }

  void save(const std::string& base) const;
  static BaselineAudioModel load(const std::string& base);

 private:
  Vector mean_;
  Vector std_;
  std::vector<int> flagged_dims_;
  Matrix weights_;
  Taxonomy taxonomy_;
};

// Reads base.json and reports which model kind is stored there.
enum class ModelKind { text_baseline, audio_baseline };
ModelKind peek_model_kind(const std::string& base);

// Fits the bag-of-tokens softmax baseline on records with gold labels.
// Requires at least two distinct classes.
BaselineTextModel train_text_baseline(const std::vector<MediaRecord>& records,
                                      const logreg::Hyper& hyper,
                                      Taxonomy taxonomy);

// Summary features for each record's audio, one column per record.
Matrix audio_features(const std::vector<MediaRecord>& records,
                      const std::string& audio_root);

BaselineAudioModel train_audio_baseline(
    const std::vector<MediaRecord>& records, const logreg::Hyper& hyper,
    Taxonomy taxonomy, const std::string& audio_root);

// Columns follow record order; ids are record ids.
ScoreMatrix score_text(const TextScorer& model,
                       const std::vector<MediaRecord>& records);
ScoreMatrix score_audio(const AudioScorer& model,
                        const std::vector<MediaRecord>& records,
                        const std::string& audio_root);

// Line-JSON plug-in protocol: one request object per line on the
// scorer's stdin, one {"probs": [6 reals]} response line on its stdout.
std::string encode_text_request(const std::string& text);
std::string encode_features_request(const Vector& features);
Vector6 decode_probs_response(const std::string& line);

// Adapter that keeps one worker subprocess alive for the scorer command.
// Exercised against real subprocesses outside automated tests; the
// protocol codecs above carry the tested behavior.
class ExternalTextScorer : public TextScorer {
 public:
  ExternalTextScorer(std::string command, Taxonomy taxonomy);
  ~ExternalTextScorer() override;

  ExternalTextScorer(const ExternalTextScorer&) = delete;
  ExternalTextScorer& operator=(const ExternalTextScorer&) = delete;

  EmotionVector score(const std::string& text) const override;
  Taxonomy taxonomy() const override { return taxonomy_; }

 private:
  struct Worker;
  std::string command_;
  Taxonomy taxonomy_;
  mutable std::unique_ptr<Worker> worker_;
};

}  // namespace scorers
}  // namespace emokit

#endif  // EMOKIT_SCORERS_HPP_
