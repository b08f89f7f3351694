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

#include "emokit/fusion_train.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "emokit/rng.hpp"
#include "emokit/scorers.hpp"
#include "emokit/wav.hpp"

namespace emokit {
namespace fusion {

namespace {

using nlohmann::json;

void check_dataset(const std::vector<FusionInput>& inputs,
                   const std::vector<int>& labels, const char* which) {
  if (inputs.size() != labels.size()) {
    throw ValidationError(std::string(which) +
                          " inputs and labels differ in count");
  }
  for (const int y : labels) {
    if (y < 0 || y >= kNumClasses) {
      throw ValidationError("label out of range: " + std::to_string(y));
    }
  }
}

int argmax6(const Vector6& v) {
  int best = 0;
  for (int i = 1; i < kNumClasses; ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

json config_to_json(const FusionConfig& c) {
  return json{{"d_model", c.d_model},
              {"n_layers", c.n_layers},
              {"n_heads", c.n_heads},
              {"d_ff", c.d_ff},
              {"max_text_tokens", c.max_text_tokens},
              {"patch_size", c.patch_size},
              {"n_classes", c.n_classes},
              {"dropout", c.dropout},
              {"seed", c.seed}};
}

FusionConfig config_from_json(const json& j) {
  FusionConfig c;
  c.d_model = j.at("d_model").get<int>();
  c.n_layers = j.at("n_layers").get<int>();
  c.n_heads = j.at("n_heads").get<int>();
  c.d_ff = j.at("d_ff").get<int>();
  c.max_text_tokens = j.at("max_text_tokens").get<int>();
  c.patch_size = j.at("patch_size").get<int>();
  c.n_classes = j.at("n_classes").get<int>();
  c.dropout = j.at("dropout").get<double>();
  c.seed = j.at("seed").get<long long>();
  return c;
}

void write_tensor_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write tensor: " + path);
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Matrix read_tensor_csv(const std::string& path, Eigen::Index rows,
                       Eigen::Index cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tensor: " + path);
  Matrix m(rows, cols);
  std::string line;
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError(path + ": expected " + std::to_string(rows) + " rows");
    }
    std::istringstream ss(line);
    std::string field;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!std::getline(ss, field, ',')) {
        throw ParseError(path + ": row " + std::to_string(r) + " too short");
      }
      char* end = nullptr;
      m(r, c) = std::strtod(field.c_str(), &end);
      if (end == field.c_str()) {
        throw ParseError(path + ": bad number \"" + field + "\"");
      }
    }
  }
  return m;
}

}  // namespace

Vector6 one_hot(int label) {
  if (label < 0 || label >= kNumClasses) {
    throw ValidationError("label out of range: " + std::to_string(label));
  }
  Vector6 y = Vector6::Zero();
  y[label] = 1.0;
  return y;
}

double accuracy(const FusionModel& model,
                const std::vector<FusionInput>& inputs,
                const std::vector<int>& labels) {
  check_dataset(inputs, labels, "evaluation");
  if (inputs.empty()) throw ValidationError("cannot evaluate on zero items");
  int correct = 0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (argmax6(forward(model, inputs[i]).probs) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(inputs.size());
}

TrainResult train(const FusionConfig& config, int vocab_size,
                  const std::vector<FusionInput>& train_inputs,
                  const std::vector<int>& train_labels,
                  const std::vector<FusionInput>& val_inputs,
                  const std::vector<int>& val_labels,
                  const TrainHyper& hyper) {
  config.validate();
  check_dataset(train_inputs, train_labels, "train");
  check_dataset(val_inputs, val_labels, "validation");
  if (train_inputs.empty() || val_inputs.empty()) {
    throw ValidationError("train and validation splits must be nonempty");
  }
  if (hyper.lr <= 0.0 || hyper.batch < 1 || hyper.epochs < 0) {
    throw ConfigError("lr must be > 0, batch >= 1, epochs >= 0");
  }

  FusionModel model = init_model(config, vocab_size);
  FusionModel m_state = make_zero_model(config, vocab_size);
  FusionModel v_state = make_zero_model(config, vocab_size);

  TrainResult result;
  result.best_model = model;
  result.best_epoch = 0;
  result.best_val_accuracy = 0.0;

  Rng shuffle_rng(static_cast<uint64_t>(hyper.seed));
  const size_t n = train_inputs.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  long long step = 0;
  double best_acc = -1.0;
  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < n; start += static_cast<size_t>(hyper.batch)) {
      const size_t stop = std::min(n, start + static_cast<size_t>(hyper.batch));
      const double batch_n = static_cast<double>(stop - start);
      FusionModel grad_sum = make_zero_model(config, vocab_size);
      auto grad_tensors = grad_sum.tensors();
      double batch_loss = 0.0;
      for (size_t i = start; i < stop; ++i) {
        const size_t idx = order[i];
        std::pair<double, FusionModel> lg;
        try {
          lg = loss_and_gradient(model, train_inputs[idx],
                                 one_hot(train_labels[idx]));
        } catch (const NumericError& e) {
          throw NumericError(std::string(e.what()) + " (training step " +
                             std::to_string(step + 1) + ")");
        }
        batch_loss += lg.first;
        auto example_tensors = lg.second.tensors();
        for (size_t t = 0; t < grad_tensors.size(); ++t) {
          *grad_tensors[t].second += *example_tensors[t].second;
        }
      }
      epoch_loss += batch_loss;
      if (!std::isfinite(batch_loss)) {
        throw NumericError("training diverged: loss is not finite at step " +
                           std::to_string(step + 1));
      }
      ++step;

      const double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(step));
      auto params = model.tensors();
      auto m_tensors = m_state.tensors();
      auto v_tensors = v_state.tensors();
      for (size_t t = 0; t < params.size(); ++t) {
        const Matrix g = *grad_tensors[t].second / batch_n;
        Matrix& mm = *m_tensors[t].second;
        Matrix& vv = *v_tensors[t].second;
        mm = hyper.beta1 * mm + (1.0 - hyper.beta1) * g;
        vv = hyper.beta2 * vv +
             (1.0 - hyper.beta2) * g.array().square().matrix();
        const Matrix m_hat = mm / bc1;
        const Matrix v_hat = vv / bc2;
        params[t].second->array() -=
            hyper.lr * m_hat.array() / (v_hat.array().sqrt() + hyper.eps);
      }
    }

    EpochMetric metric;
    metric.epoch = epoch;
    metric.train_loss = epoch_loss / static_cast<double>(n);
    metric.val_accuracy = accuracy(model, val_inputs, val_labels);
    result.trace.push_back(metric);
    if (metric.val_accuracy > best_acc) {
      best_acc = metric.val_accuracy;
      result.best_model = model;
      result.best_epoch = epoch;
      result.best_val_accuracy = metric.val_accuracy;
    }
  }
  result.final_model = std::move(model);
  result.steps = step;
  return result;
}

PredictResult predict(const FusionModel& model,
                      const std::vector<FusionInput>& inputs,
                      const std::vector<std::string>& item_ids,
                      Taxonomy taxonomy) {
  if (inputs.size() != item_ids.size()) {
    throw ValidationError("inputs and item_ids differ in count");
  }
  Matrix raw(kNumClasses, static_cast<Eigen::Index>(inputs.size()));
  Matrix scores(kNumClasses, static_cast<Eigen::Index>(inputs.size()));
  for (size_t i = 0; i < inputs.size(); ++i) {
    const Vector6 probs = forward(model, inputs[i]).probs;
    raw.col(static_cast<Eigen::Index>(i)) = probs;
    // Sigmoid outputs are strictly positive, so the sum never vanishes
    // and dividing by it preserves the argmax.
    scores.col(static_cast<Eigen::Index>(i)) = probs / probs.sum();
  }
  return PredictResult{
      ScoreMatrix(std::move(scores), Modality::fused, item_ids, taxonomy),
      std::move(raw)};
}

void save_checkpoint(const std::string& dir, const FusionModel& model,
                     const text::Vocabulary& vocab, long long step,
                     double val_accuracy) {
  model.check_finite();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create checkpoint directory " + dir + ": " +
                  ec.message());
  }
  json shapes = json::object();
  for (const auto& [name, mat] : model.tensors()) {
    write_tensor_csv((std::filesystem::path(dir) / (name + ".csv")).string(),
                     *mat);
    shapes[name] = {mat->rows(), mat->cols()};
  }
  json manifest;
  manifest["config"] = config_to_json(model.config);
  manifest["vocab_size"] = model.vocab_size;
  manifest["step"] = step;
  manifest["val_accuracy"] = val_accuracy;
  manifest["tensors"] = shapes;
  {
    std::ofstream out(std::filesystem::path(dir) / "manifest.json",
                      std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint manifest in " + dir);
    out << manifest.dump(2) << "\n";
  }
  {
    std::ofstream out(std::filesystem::path(dir) / "vocab.json",
                      std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint vocabulary in " + dir);
    out << json{{"tokens", vocab.tokens()}}.dump(2) << "\n";
  }
}

Checkpoint load_checkpoint(const std::string& dir) {
  json manifest;
  {
    std::ifstream in(std::filesystem::path(dir) / "manifest.json",
                     std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint manifest in " + dir);
    try {
      in >> manifest;
    } catch (const json::exception& e) {
      throw ParseError(dir + "/manifest.json: " + e.what());
    }
  }
  Checkpoint ckpt;
  const FusionConfig config = config_from_json(manifest.at("config"));
  const int vocab_size = manifest.at("vocab_size").get<int>();
  ckpt.model = make_zero_model(config, vocab_size);
  const json& shapes = manifest.at("tensors");
  for (auto& [name, mat] : ckpt.model.tensors()) {
    if (!shapes.contains(name)) {
      throw ParseError(dir + ": checkpoint lacks tensor " + name);
    }
    const auto dims = shapes.at(name).get<std::vector<Eigen::Index>>();
    if (dims.size() != 2 || dims[0] != mat->rows() || dims[1] != mat->cols()) {
      throw ParseError(dir + ": tensor " + name +
                       " has a shape inconsistent with the config");
    }
    *mat = read_tensor_csv(
        (std::filesystem::path(dir) / (name + ".csv")).string(), mat->rows(),
        mat->cols());
  }
  ckpt.model.check_finite();
  ckpt.step = manifest.at("step").get<long long>();
  ckpt.val_accuracy = manifest.at("val_accuracy").get<double>();

  json vocab_json;
  {
    std::ifstream in(std::filesystem::path(dir) / "vocab.json",
                     std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint vocabulary in " + dir);
    try {
      in >> vocab_json;
    } catch (const json::exception& e) {
      throw ParseError(dir + "/vocab.json: " + e.what());
    }
  }
  ckpt.vocab = text::Vocabulary::from_tokens(
      vocab_json.at("tokens").get<std::vector<std::string>>());
  if (ckpt.vocab.size() != vocab_size) {
    throw ParseError(dir + ": vocabulary size disagrees with manifest");
  }
  return ckpt;
}

void save_metrics_csv(const std::vector<EpochMetric>& trace,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write metrics: " + path);
  out << "epoch,train_loss,val_accuracy\n";
  char buf[80];
  for (const auto& m : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g", m.epoch, m.train_loss,
                  m.val_accuracy);
    out << buf << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

dsp::SpectroImage record_image(const MediaRecord& record,
                               const std::string& audio_root) {
  const Waveform w = load_wav(
      scorers::resolve_audio_path(audio_root, record.audio_path));
  return dsp::render_spectro_image(
      dsp::log_mel_spectrogram(w, dsp::StftParams{}, dsp::MelParams{}));
}

text::Vocabulary build_transcript_vocab(
    const std::vector<MediaRecord>& records, int min_freq) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(text::tokenize(r.transcript));
  return text::Vocabulary::build(docs, min_freq);
}

std::vector<FusionInput> build_inputs(const std::vector<MediaRecord>& records,
                                      const text::Vocabulary& vocab,
                                      const FusionConfig& config,
                                      const std::string& audio_root) {
  std::vector<FusionInput> inputs;
  inputs.reserve(records.size());
  for (const auto& r : records) {
    inputs.push_back(
        build_input(r, record_image(r, audio_root), vocab, config));
  }
  return inputs;
}

}  // namespace fusion
}  // namespace emokit
