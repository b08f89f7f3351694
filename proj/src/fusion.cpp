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

#include "emokit/fusion.hpp"

#include <cmath>

#include "emokit/rng.hpp"

namespace emokit {
namespace fusion {

namespace {

constexpr double kLayerNormEps = 1e-5;
constexpr double kInitStd = 0.02;

double gelu(double x) {
  return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0)));
}

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
  const double pdf =
      std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
  return cdf + x * pdf;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct LayerCache {
  Matrix x;   // residual stream entering the layer
  Matrix a;   // ln1 output
  Vector ln1_mean, ln1_inv;
  Matrix q, k, v;
  std::vector<Matrix> attn;  // per head, S x S
  Matrix ctx;                // heads concatenated
  Matrix o;                  // attention block output added to the stream
  Matrix h1;                 // x + o
  Matrix f;                  // ln2 output
  Vector ln2_mean, ln2_inv;
  Matrix u;  // pre-activation of the hidden feed-forward layer
  Matrix g;  // gelu(u)
};

struct ForwardCache {
  std::vector<bool> active;  // per sequence row
  Matrix x0;
  std::vector<LayerCache> layers;
  Matrix h_final;
  Vector6 logits;
  Vector6 probs;
};

// Row-wise layernorm; means and inverse stddevs are kept for backward.
Matrix layernorm_forward(const Matrix& x, const Matrix& gain,
                         const Matrix& bias, Vector& mean_out,
                         Vector& inv_out) {
  const Eigen::Index s = x.rows(), d = x.cols();
  mean_out.resize(s);
  inv_out.resize(s);
  Matrix y(s, d);
  for (Eigen::Index r = 0; r < s; ++r) {
    const double mu = x.row(r).mean();
    const double var = (x.row(r).array() - mu).square().mean();
    const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
    mean_out[r] = mu;
    inv_out[r] = inv;
    y.row(r) = (((x.row(r).array() - mu) * inv) *
                    gain.col(0).transpose().array() +
                bias.col(0).transpose().array())
                   .matrix();
  }
  return y;
}

void layernorm_backward(const Matrix& dy, const Matrix& x, const Matrix& gain,
                        const Vector& mean, const Vector& inv, Matrix& dx,
                        Matrix& dgain, Matrix& dbias) {
  const Eigen::Index s = x.rows(), d = x.cols();
  dx.resize(s, d);
  for (Eigen::Index r = 0; r < s; ++r) {
    const Eigen::Array<double, 1, Eigen::Dynamic> xhat =
        (x.row(r).array() - mean[r]) * inv[r];
    const Eigen::Array<double, 1, Eigen::Dynamic> dyr = dy.row(r).array();
    dgain.col(0).transpose().array() += dyr * xhat;
    dbias.col(0).transpose().array() += dyr;
    const Eigen::Array<double, 1, Eigen::Dynamic> dxhat =
        dyr * gain.col(0).transpose().array();
    const double m1 = dxhat.mean();
    const double m2 = (dxhat * xhat).mean();
    dx.row(r) = (inv[r] * (dxhat - m1 - xhat * m2)).matrix();
  }
  (void)d;
}

void validate_input(const FusionModel& model, const FusionInput& input) {
  const FusionConfig& c = model.config;
  const int len = static_cast<int>(input.token_ids.size());
  if (len > c.max_text_tokens) {
    throw ValidationError("token slots exceed max_text_tokens");
  }
  if (input.text_mask.size() != input.token_ids.size()) {
    throw ValidationError("text_mask size must match token_ids size");
  }
  for (int t = 0; t < len; ++t) {
    const int id = input.token_ids[static_cast<size_t>(t)];
    if (input.text_mask[static_cast<size_t>(t)] &&
        (id < 0 || id >= model.vocab_size)) {
      throw ValidationError("token id " + std::to_string(id) +
                            " outside vocabulary of size " +
                            std::to_string(model.vocab_size));
    }
  }
  if (input.patches.rows() != c.n_patches() ||
      input.patches.cols() != c.patch_dim()) {
    throw ValidationError("patch matrix must be n_patches x patch_size^2");
  }
  if (input.patches.size() > 0 &&
      (input.patches.minCoeff() < 0.0 || input.patches.maxCoeff() > 1.0)) {
    throw ValidationError("patch values must lie in [0, 1]");
  }
}

ForwardCache run_forward(const FusionModel& model, const FusionInput& input) {
  validate_input(model, input);
  const FusionConfig& c = model.config;
  const int len = static_cast<int>(input.token_ids.size());
  const int n_patches = c.n_patches();
  const int s = 1 + len + n_patches;
  const int d = c.d_model;
  const int dh = d / c.n_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  ForwardCache cache;
  cache.active.assign(static_cast<size_t>(s), true);
  for (int t = 0; t < len; ++t) {
    cache.active[static_cast<size_t>(1 + t)] =
        input.text_mask[static_cast<size_t>(t)];
  }

  Matrix x = Matrix::Zero(s, d);
  x.row(0) = model.cls_embed.col(0).transpose() + model.seg_embed.row(0);
  for (int t = 0; t < len; ++t) {
    x.row(1 + t) = model.pos_text.row(t) + model.seg_embed.row(0);
    if (input.text_mask[static_cast<size_t>(t)]) {
      x.row(1 + t) += model.tok_embed.row(input.token_ids[static_cast<size_t>(t)]);
    }
  }
  for (int p = 0; p < n_patches; ++p) {
    x.row(1 + len + p) = input.patches.row(p) * model.patch_proj +
                         model.patch_bias.col(0).transpose() +
                         model.pos_patch.row(p) + model.seg_embed.row(1);
  }
  if (!x.allFinite()) {
    throw NumericError("non-finite activations in the embedding layer");
  }
  cache.x0 = x;

  Matrix h = x;
  cache.layers.resize(static_cast<size_t>(c.n_layers));
  for (int l = 0; l < c.n_layers; ++l) {
    LayerCache& lc = cache.layers[static_cast<size_t>(l)];
    const FusionLayer& p = model.layers[static_cast<size_t>(l)];
    lc.x = h;
    lc.a = layernorm_forward(h, p.ln1_gain, p.ln1_bias, lc.ln1_mean,
                             lc.ln1_inv);
    lc.q = lc.a * p.wq;
    lc.q.rowwise() += p.bq.col(0).transpose();
    lc.k = lc.a * p.wk;
    lc.k.rowwise() += p.bk.col(0).transpose();
    lc.v = lc.a * p.wv;
    lc.v.rowwise() += p.bv.col(0).transpose();

    lc.ctx.resize(s, d);
    lc.attn.assign(static_cast<size_t>(c.n_heads), Matrix());
    for (int head = 0; head < c.n_heads; ++head) {
      const auto qh = lc.q.middleCols(head * dh, dh);
      const auto kh = lc.k.middleCols(head * dh, dh);
      const auto vh = lc.v.middleCols(head * dh, dh);
      const Matrix scores = (qh * kh.transpose()) * scale;
      Matrix attn = Matrix::Zero(s, s);
      for (int row = 0; row < s; ++row) {
        if (!cache.active[static_cast<size_t>(row)]) continue;
        // Masked keys get exactly zero weight; the softmax runs over
        // active keys only, which always include CLS and the patches.
        double mx = -std::numeric_limits<double>::infinity();
        for (int col = 0; col < s; ++col) {
          if (cache.active[static_cast<size_t>(col)]) {
            mx = std::max(mx, scores(row, col));
          }
        }
        double denom = 0.0;
        for (int col = 0; col < s; ++col) {
          if (!cache.active[static_cast<size_t>(col)]) continue;
          const double e = std::exp(scores(row, col) - mx);
          attn(row, col) = e;
          denom += e;
        }
        attn.row(row) /= denom;
      }
      lc.ctx.middleCols(head * dh, dh).noalias() = attn * vh;
      lc.attn[static_cast<size_t>(head)] = std::move(attn);
    }

    lc.o = lc.ctx * p.wo;
    lc.o.rowwise() += p.bo.col(0).transpose();
    for (int row = 0; row < s; ++row) {
      if (!cache.active[static_cast<size_t>(row)]) lc.o.row(row).setZero();
    }
    lc.h1 = lc.x + lc.o;

    lc.f = layernorm_forward(lc.h1, p.ln2_gain, p.ln2_bias, lc.ln2_mean,
                             lc.ln2_inv);
    lc.u = lc.f * p.w1;
    lc.u.rowwise() += p.b1.col(0).transpose();
    lc.g = lc.u.unaryExpr([](double v) { return gelu(v); });
    Matrix r = lc.g * p.w2;
    r.rowwise() += p.b2.col(0).transpose();
    h = lc.h1 + r;
    if (!h.allFinite()) {
      throw NumericError("non-finite activations in layer " +
                         std::to_string(l));
    }
  }
  cache.h_final = h;

  const Eigen::RowVectorXd cls = h.row(0);
  const Vector logits_v =
      (cls * model.head_w).transpose() + model.head_b.col(0);
  for (int i = 0; i < kNumClasses; ++i) {
    cache.logits[i] = logits_v[i];
    cache.probs[i] = sigmoid(logits_v[i]);
  }
  if (!cache.logits.allFinite()) {
    throw NumericError("non-finite activations in the output head");
  }
  return cache;
}

void validate_one_hot(const Vector6& target) {
  int ones = 0;
  for (int i = 0; i < kNumClasses; ++i) {
    if (target[i] == 1.0) {
      ++ones;
    } else if (target[i] != 0.0) {
      throw ValidationError("target must be one-hot (entries 0 or 1)");
    }
  }
  if (ones != 1) {
    throw ValidationError("target must have exactly one 1");
  }
}

}  // namespace

int FusionConfig::n_patches() const {
  const int per_side = dsp::kImageSize / patch_size;
  return per_side * per_side;
}

void FusionConfig::validate() const {
  if (d_model <= 0 || n_heads <= 0 || d_model % n_heads != 0) {
    throw ConfigError("d_model must be positive and divisible by n_heads");
  }
  if (n_layers < 0 || d_ff <= 0 || max_text_tokens < 0) {
    throw ConfigError("n_layers, d_ff, max_text_tokens out of range");
  }
  if (patch_size <= 0 || dsp::kImageSize % patch_size != 0) {
    throw ConfigError("patch_size must divide " +
                      std::to_string(dsp::kImageSize));
  }
  if (n_classes != kNumClasses) {
    throw ConfigError("n_classes is fixed at " + std::to_string(kNumClasses));
  }
  if (dropout != 0.0) {
    throw ConfigError("dropout is reserved; this build trains with 0");
  }
}

std::vector<std::pair<std::string, Matrix*>> FusionModel::tensors() {
  std::vector<std::pair<std::string, Matrix*>> out;
  out.emplace_back("tok_embed", &tok_embed);
  out.emplace_back("patch_proj", &patch_proj);
  out.emplace_back("patch_bias", &patch_bias);
  out.emplace_back("cls_embed", &cls_embed);
  out.emplace_back("pos_text", &pos_text);
  out.emplace_back("pos_patch", &pos_patch);
  out.emplace_back("seg_embed", &seg_embed);
  for (size_t l = 0; l < layers.size(); ++l) {
    const std::string p = "layer" + std::to_string(l) + "_";
    FusionLayer& lay = layers[l];
    out.emplace_back(p + "ln1_gain", &lay.ln1_gain);
    out.emplace_back(p + "ln1_bias", &lay.ln1_bias);
    out.emplace_back(p + "wq", &lay.wq);
    out.emplace_back(p + "bq", &lay.bq);
    out.emplace_back(p + "wk", &lay.wk);
    out.emplace_back(p + "bk", &lay.bk);
    out.emplace_back(p + "wv", &lay.wv);
    out.emplace_back(p + "bv", &lay.bv);
    out.emplace_back(p + "wo", &lay.wo);
    out.emplace_back(p + "bo", &lay.bo);
    out.emplace_back(p + "ln2_gain", &lay.ln2_gain);
    out.emplace_back(p + "ln2_bias", &lay.ln2_bias);
    out.emplace_back(p + "w1", &lay.w1);
    out.emplace_back(p + "b1", &lay.b1);
    out.emplace_back(p + "w2", &lay.w2);
    out.emplace_back(p + "b2", &lay.b2);
  }
  out.emplace_back("head_w", &head_w);
  out.emplace_back("head_b", &head_b);
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> FusionModel::tensors()
    const {
  auto mutable_list = const_cast<FusionModel*>(this)->tensors();
  std::vector<std::pair<std::string, const Matrix*>> out;
  out.reserve(mutable_list.size());
  for (auto& [name, ptr] : mutable_list) out.emplace_back(name, ptr);
  return out;
}

void FusionModel::check_finite() const {
  for (const auto& [name, mat] : tensors()) {
    if (!mat->allFinite()) {
      throw NumericError("parameter " + name + " has non-finite entries");
    }
  }
}

FusionModel make_zero_model(const FusionConfig& config, int vocab_size) {
  config.validate();
  if (vocab_size < 0) throw ValidationError("vocab_size must be >= 0");
  const int d = config.d_model;
  FusionModel m;
  m.config = config;
  m.vocab_size = vocab_size;
  m.tok_embed = Matrix::Zero(vocab_size, d);
  m.patch_proj = Matrix::Zero(config.patch_dim(), d);
  m.patch_bias = Matrix::Zero(d, 1);
  m.cls_embed = Matrix::Zero(d, 1);
  m.pos_text = Matrix::Zero(config.max_text_tokens, d);
  m.pos_patch = Matrix::Zero(config.n_patches(), d);
  m.seg_embed = Matrix::Zero(2, d);
  m.layers.resize(static_cast<size_t>(config.n_layers));
  for (auto& lay : m.layers) {
    lay.ln1_gain = Matrix::Zero(d, 1);
    lay.ln1_bias = Matrix::Zero(d, 1);
    lay.wq = Matrix::Zero(d, d);
    lay.bq = Matrix::Zero(d, 1);
    lay.wk = Matrix::Zero(d, d);
    lay.bk = Matrix::Zero(d, 1);
    lay.wv = Matrix::Zero(d, d);
    lay.bv = Matrix::Zero(d, 1);
    lay.wo = Matrix::Zero(d, d);
    lay.bo = Matrix::Zero(d, 1);
    lay.ln2_gain = Matrix::Zero(d, 1);
    lay.ln2_bias = Matrix::Zero(d, 1);
    lay.w1 = Matrix::Zero(d, config.d_ff);
    lay.b1 = Matrix::Zero(config.d_ff, 1);
    lay.w2 = Matrix::Zero(config.d_ff, d);
    lay.b2 = Matrix::Zero(d, 1);
  }
  m.head_w = Matrix::Zero(d, config.n_classes);
  m.head_b = Matrix::Zero(config.n_classes, 1);
  return m;
}

FusionModel init_model(const FusionConfig& config, int vocab_size) {
  FusionModel m = make_zero_model(config, vocab_size);
  Rng rng(static_cast<uint64_t>(config.seed));
  for (auto& [name, mat] : m.tensors()) {
    const bool is_layernorm = name.find("_ln") != std::string::npos;
    for (Eigen::Index r = 0; r < mat->rows(); ++r) {
      for (Eigen::Index c = 0; c < mat->cols(); ++c) {
        if (is_layernorm) {
          (*mat)(r, c) = name.ends_with("gain") ? 1.0 : 0.0;
        } else {
          (*mat)(r, c) = kInitStd * rng.gaussian();
        }
      }
    }
  }
  return m;
}

ForwardResult forward(const FusionModel& model, const FusionInput& input) {
  ForwardCache cache = run_forward(model, input);
  ForwardResult out;
  out.logits = cache.logits;
  out.probs = cache.probs;
  out.attn.reserve(cache.layers.size());
  for (auto& lc : cache.layers) out.attn.push_back(std::move(lc.attn));
  return out;
}

double loss_from_logits(const Vector6& logits, const Vector6& target) {
  validate_one_hot(target);
  double total = 0.0;
  for (int i = 0; i < kNumClasses; ++i) {
    const double z = logits[i];
    const double y = target[i];
    total += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
  }
  return total / kNumClasses;
}

double loss_from_probs(const Vector6& probs, const Vector6& target) {
  validate_one_hot(target);
  double total = 0.0;
  for (int i = 0; i < kNumClasses; ++i) {
    const double p = probs[i];
    if (p <= 0.0 || p >= 1.0) {
      throw ValidationError("probs must lie strictly inside (0, 1)");
    }
    total += -(target[i] * std::log(p) + (1.0 - target[i]) * std::log1p(-p));
  }
  return total / kNumClasses;
}

std::pair<double, FusionModel> loss_and_gradient(const FusionModel& model,
                                                 const FusionInput& input,
                                                 const Vector6& target) {
  validate_one_hot(target);
  const ForwardCache cache = run_forward(model, input);
  const FusionConfig& c = model.config;
  const int len = static_cast<int>(input.token_ids.size());
  const int n_patches = c.n_patches();
  const int s = 1 + len + n_patches;
  const int d = c.d_model;
  const int dh = d / c.n_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  const double loss_value = loss_from_logits(cache.logits, target);
  FusionModel grad = make_zero_model(c, model.vocab_size);

  Vector6 dlogits;
  for (int i = 0; i < kNumClasses; ++i) {
    dlogits[i] = (cache.probs[i] - target[i]) / kNumClasses;
  }

  const Eigen::RowVectorXd cls = cache.h_final.row(0);
  grad.head_w = cls.transpose() * dlogits.transpose();
  grad.head_b.col(0) = dlogits;

  Matrix dh_stream = Matrix::Zero(s, d);
  dh_stream.row(0) = (model.head_w * dlogits).transpose();

  for (int l = c.n_layers - 1; l >= 0; --l) {
    const LayerCache& lc = cache.layers[static_cast<size_t>(l)];
    const FusionLayer& p = model.layers[static_cast<size_t>(l)];
    FusionLayer& gp = grad.layers[static_cast<size_t>(l)];

    // Feed-forward sublayer backward; dh_stream is the gradient at h2.
    const Matrix& dr = dh_stream;
    gp.b2.col(0) = dr.colwise().sum().transpose();
    gp.w2 = lc.g.transpose() * dr;
    Matrix dg = dr * p.w2.transpose();
    Matrix du =
        dg.cwiseProduct(lc.u.unaryExpr([](double v) { return gelu_grad(v); }));
    gp.b1.col(0) = du.colwise().sum().transpose();
    gp.w1 = lc.f.transpose() * du;
    const Matrix df = du * p.w1.transpose();

    Matrix d_h1;
    layernorm_backward(df, lc.h1, p.ln2_gain, lc.ln2_mean, lc.ln2_inv, d_h1,
                       gp.ln2_gain, gp.ln2_bias);
    d_h1 += dh_stream;  // residual connection around the feed-forward

    // Attention sublayer backward.
    Matrix d_o = d_h1;
    for (int row = 0; row < s; ++row) {
      if (!cache.active[static_cast<size_t>(row)]) d_o.row(row).setZero();
    }
    gp.bo.col(0) = d_o.colwise().sum().transpose();
    gp.wo = lc.ctx.transpose() * d_o;
    const Matrix d_ctx = d_o * p.wo.transpose();

    Matrix dq = Matrix::Zero(s, d);
    Matrix dk = Matrix::Zero(s, d);
    Matrix dv = Matrix::Zero(s, d);
    for (int head = 0; head < c.n_heads; ++head) {
      const auto qh = lc.q.middleCols(head * dh, dh);
      const auto kh = lc.k.middleCols(head * dh, dh);
      const auto vh = lc.v.middleCols(head * dh, dh);
      const Matrix& attn = lc.attn[static_cast<size_t>(head)];
      const auto d_ctx_h = d_ctx.middleCols(head * dh, dh);

      dv.middleCols(head * dh, dh).noalias() = attn.transpose() * d_ctx_h;
      const Matrix d_attn = d_ctx_h * vh.transpose();
      Matrix d_scores = Matrix::Zero(s, s);
      for (int row = 0; row < s; ++row) {
        if (!cache.active[static_cast<size_t>(row)]) continue;
        const double inner = d_attn.row(row).dot(attn.row(row));
        d_scores.row(row) =
            (attn.row(row).array() * (d_attn.row(row).array() - inner))
                .matrix();
      }
      dq.middleCols(head * dh, dh).noalias() = (d_scores * kh) * scale;
      dk.middleCols(head * dh, dh).noalias() =
          (d_scores.transpose() * qh) * scale;
    }

    gp.bq.col(0) = dq.colwise().sum().transpose();
    gp.wq = lc.a.transpose() * dq;
    gp.bk.col(0) = dk.colwise().sum().transpose();
    gp.wk = lc.a.transpose() * dk;
    gp.bv.col(0) = dv.colwise().sum().transpose();
    gp.wv = lc.a.transpose() * dv;
    const Matrix da =
        dq * p.wq.transpose() + dk * p.wk.transpose() + dv * p.wv.transpose();

    Matrix dx_ln;
    layernorm_backward(da, lc.x, p.ln1_gain, lc.ln1_mean, lc.ln1_inv, dx_ln,
                       gp.ln1_gain, gp.ln1_bias);
    dh_stream = d_h1 + dx_ln;  // residual connection around attention
  }

  // Embedding gradients from the input assembly.
  grad.cls_embed.col(0) = dh_stream.row(0).transpose();
  grad.seg_embed.row(0) += dh_stream.row(0);
  for (int t = 0; t < len; ++t) {
    if (!input.text_mask[static_cast<size_t>(t)]) continue;
    grad.tok_embed.row(input.token_ids[static_cast<size_t>(t)]) +=
        dh_stream.row(1 + t);
    grad.pos_text.row(t) += dh_stream.row(1 + t);
    grad.seg_embed.row(0) += dh_stream.row(1 + t);
  }
  for (int pch = 0; pch < n_patches; ++pch) {
    const auto d_row = dh_stream.row(1 + len + pch);
    grad.patch_proj += input.patches.row(pch).transpose() * d_row;
    grad.patch_bias.col(0) += d_row.transpose();
    grad.pos_patch.row(pch) += d_row;
    grad.seg_embed.row(1) += d_row;
  }
  return {loss_value, std::move(grad)};
}

FusionModel backward(const FusionModel& model, const FusionInput& input,
                     const Vector6& target) {
  return loss_and_gradient(model, input, target).second;
}

FusionInput build_input(const MediaRecord& record,
                        const dsp::SpectroImage& image,
                        const text::Vocabulary& vocab,
                        const FusionConfig& config) {
  config.validate();
  if (image.pixels.rows() != dsp::kImageSize ||
      image.pixels.cols() != dsp::kImageSize) {
    throw ValidationError("image must be 64x64");
  }
  FusionInput input;
  for (const auto& tok : text::tokenize(record.transcript)) {
    if (static_cast<int>(input.token_ids.size()) >= config.max_text_tokens) {
      break;
    }
    const int id = vocab.index(tok);
    if (id >= 0) {
      input.token_ids.push_back(id);
      input.text_mask.push_back(true);
    }
  }
  const int ps = config.patch_size;
  const int per_side = dsp::kImageSize / ps;
  input.patches.resize(config.n_patches(), config.patch_dim());
  for (int pr = 0; pr < per_side; ++pr) {
    for (int pc = 0; pc < per_side; ++pc) {
      const int p = pr * per_side + pc;
      for (int r = 0; r < ps; ++r) {
        for (int col = 0; col < ps; ++col) {
          input.patches(p, r * ps + col) =
              image.pixels(pr * ps + r, pc * ps + col);
        }
      }
    }
  }
  return input;
}

}  // namespace fusion
}  // namespace emokit
