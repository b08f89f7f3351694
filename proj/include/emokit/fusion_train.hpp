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

// Training loop, prediction, and checkpoint persistence for the fusion
// classifier.

#ifndef EMOKIT_FUSION_TRAIN_HPP_
#define EMOKIT_FUSION_TRAIN_HPP_

#include <string>
#include <vector>

#include "emokit/fusion.hpp"

namespace emokit {
namespace fusion {

struct TrainHyper {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int batch = 16;
  int epochs = 10;
  long long seed = 0;  // batch shuffling; init comes from config.seed
};

struct EpochMetric {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  FusionModel final_model;
  FusionModel best_model;  // highest validation accuracy; init if 0 epochs
  int best_epoch = 0;      // 0 when no epoch ran
  double best_val_accuracy = 0.0;
  long long steps = 0;
  std::vector<EpochMetric> trace;
};

// Adam over minibatches in seeded-shuffle order. Aborts with a
// NumericError naming the step if the loss goes non-finite.
TrainResult train(const FusionConfig& config, int vocab_size,
                  const std::vector<FusionInput>& train_inputs,
                  const std::vector<int>& train_labels,
                  const std::vector<FusionInput>& val_inputs,
                  const std::vector<int>& val_labels,
                  const TrainHyper& hyper);

// Argmax-over-sigmoid accuracy; ties resolve to the lowest index.
double accuracy(const FusionModel& model,
                const std::vector<FusionInput>& inputs,
                const std::vector<int>& labels);

struct PredictResult {
  ScoreMatrix scores;   // sigmoid outputs renormalized onto the simplex
  Matrix raw_sigmoid;   // 6 x n, the unnormalized per-class sigmoids
};

PredictResult predict(const FusionModel& model,
                      const std::vector<FusionInput>& inputs,
                      const std::vector<std::string>& item_ids,
                      Taxonomy taxonomy);

// One-hot target for a class index.
Vector6 one_hot(int label);

// Checkpoint directory: manifest.json (config, shapes, step, metric),
// vocab.json, and one flat CSV per tensor.
void save_checkpoint(const std::string& dir, const FusionModel& model,
                     const text::Vocabulary& vocab, long long step,
                     double val_accuracy);

struct Checkpoint {
  FusionModel model;
  text::Vocabulary vocab;
  long long step = 0;
  double val_accuracy = 0.0;
};

Checkpoint load_checkpoint(const std::string& dir);

// Metrics trace CSV: header epoch,train_loss,val_accuracy.
void save_metrics_csv(const std::vector<EpochMetric>& trace,
                      const std::string& path);

// Log-mel spectrogram image for a record's audio file.
dsp::SpectroImage record_image(const MediaRecord& record,
                               const std::string& audio_root);

// Vocabulary over the records' transcripts (min-freq 2), matching what
// build_input tokenizes.
text::Vocabulary build_transcript_vocab(
    const std::vector<MediaRecord>& records, int min_freq = 2);

std::vector<FusionInput> build_inputs(const std::vector<MediaRecord>& records,
                                      const text::Vocabulary& vocab,
                                      const FusionConfig& config,
                                      const std::string& audio_root);

}  // namespace fusion
}  // namespace emokit

#endif  // EMOKIT_FUSION_TRAIN_HPP_
