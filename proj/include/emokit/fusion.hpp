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

// Multimodal fusion classifier: transcript tokens and spectrogram-image
// patches share one self-attention stack; a dense head with per-class
// sigmoid scores six emotions. Forward, loss, and analytic backward are
// implemented directly on Eigen matrices.

#ifndef EMOKIT_FUSION_HPP_
#define EMOKIT_FUSION_HPP_

#include <string>
#include <utility>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"
#include "emokit/dsp.hpp"
#include "emokit/text.hpp"

namespace emokit {
namespace fusion {

struct FusionConfig {
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 4;
  int d_ff = 128;
  int max_text_tokens = 32;
  int patch_size = 8;  // 64 patches from the 64x64 image
  int n_classes = kNumClasses;
  double dropout = 0.0;  // reserved; only 0 trains in this build
  long long seed = 0;

  int n_patches() const;
  int patch_dim() const { return patch_size * patch_size; }
  void validate() const;
};

// Token slots hold up to max_text_tokens entries; slots with a false
// mask are padding whose stored ids must never influence outputs. The
// sequence a model sees is [CLS] + the token slots + all patches.
struct FusionInput {
  std::vector<int> token_ids;   // size L <= max_text_tokens
  std::vector<bool> text_mask;  // size L, true = real token
  Matrix patches;               // n_patches x patch_dim, values in [0,1]
};

struct FusionLayer {
  Matrix ln1_gain, ln1_bias;
  Matrix wq, bq, wk, bk, wv, bv, wo, bo;
  Matrix ln2_gain, ln2_bias;
  Matrix w1, b1, w2, b2;
};

// Parameter container; doubles as the gradient/moment container since
// those mirror parameter shapes. Biases are stored as d x 1 matrices.
struct FusionModel {
  FusionConfig config;
  int vocab_size = 0;

  Matrix tok_embed;   // V x d_model
  Matrix patch_proj;  // patch_dim x d_model
  Matrix patch_bias;  // d_model x 1
  Matrix cls_embed;   // d_model x 1
  Matrix pos_text;    // max_text_tokens x d_model
  Matrix pos_patch;   // n_patches x d_model
  Matrix seg_embed;   // 2 x d_model; row 0 text+CLS, row 1 patches
  std::vector<FusionLayer> layers;
  Matrix head_w;  // d_model x n_classes
  Matrix head_b;  // n_classes x 1

  // All tensors with stable names, in a fixed order shared by the
  // optimizer, the checkpoint format, and the finite-difference tests.
  std::vector<std::pair<std::string, Matrix*>> tensors();
  std::vector<std::pair<std::string, const Matrix*>> tensors() const;

  void check_finite() const;
};

// Zero-filled parameters of the right shapes.
FusionModel make_zero_model(const FusionConfig& config, int vocab_size);

// Seeded Gaussian init (std 0.02) for everything except layernorms,
// which start at gain 1 / bias 0.
FusionModel init_model(const FusionConfig& config, int vocab_size);

struct ForwardResult {
  Vector6 logits;
  Vector6 probs;  // per-class sigmoid; NOT a simplex
  // attn[layer][head] is S x S; rows of masked query slots are zero and
  // masked keys carry exactly zero mass.
  std::vector<std::vector<Matrix>> attn;
};

ForwardResult forward(const FusionModel& model, const FusionInput& input);

// Mean over classes of per-class binary cross-entropy, computed stably
// from logits. target must be one-hot.
double loss_from_logits(const Vector6& logits, const Vector6& target);
// Same quantity through explicit probabilities; the logits path is the
// one training uses.
double loss_from_probs(const Vector6& probs, const Vector6& target);

// Gradients of loss_from_logits(forward(...).logits, target) for every
// parameter, same shapes as the model.
FusionModel backward(const FusionModel& model, const FusionInput& input,
                     const Vector6& target);

// Loss and gradient in one pass (shared activations).
std::pair<double, FusionModel> loss_and_gradient(const FusionModel& model,
                                                 const FusionInput& input,
                                                 const Vector6& target);

// Tokenizes the record's transcript with the shared tokenizer, drops
// out-of-vocabulary tokens, truncates to max_text_tokens, and cuts the
// 64x64 image into non-overlapping patches in row-major order.
FusionInput build_input(const MediaRecord& record,
                        const dsp::SpectroImage& image,
                        const text::Vocabulary& vocab,
                        const FusionConfig& config);

}  // namespace fusion
}  // namespace emokit

#endif  // EMOKIT_FUSION_HPP_
