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

#include "emokit/scorers.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "emokit/dsp.hpp"

namespace emokit {
namespace scorers {

namespace {

using nlohmann::json;

// Zero-variance detection threshold: feature dims whose training std
// falls below this are fp dust from constant inputs, not real spread.
constexpr double kStdFloor = 1e-12;

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model weights: " + path);
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

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model weights: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str()) {
        throw ParseError(path + ": bad number \"" + field + "\"");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(path + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": empty weight file");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
  }
  return m;
}

json load_sidecar(const std::string& base) {
  const std::string path = base + ".json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model sidecar: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
  return j;
}

void save_sidecar(const std::string& base, const json& j) {
  const std::string path = base + ".json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model sidecar: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

std::vector<int> gold_labels(const std::vector<MediaRecord>& records) {
  std::vector<int> labels;
  labels.reserve(records.size());
  std::set<int> distinct;
  for (const auto& r : records) {
    if (!r.gold_label) {
      throw ValidationError("record " + r.id +
                            " has no gold label; cannot train on it");
    }
    labels.push_back(*r.gold_label);
    distinct.insert(*r.gold_label);
  }
  if (distinct.size() < 2) {
    throw ValidationError(
        "degenerate training data: fewer than two distinct classes");
  }
  return labels;
}

Vector6 to_vector6(const Vector& v) {
  Vector6 out;
  for (int i = 0; i < kNumClasses; ++i) out[i] = v[i];
  return out;
}

}  // namespace

std::string record_text(const MediaRecord& record) {
  return record.title + " " + record.description + " " + record.transcript;
}

std::string resolve_audio_path(const std::string& root,
                               const std::string& audio_path) {
  if (audio_path.empty()) {
    throw ValidationError("record has no audio_path");
  }
  const std::filesystem::path p(audio_path);
  if (p.is_absolute() || root.empty()) return audio_path;
  return (std::filesystem::path(root) / p).string();
}

BaselineTextModel::BaselineTextModel(text::Vocabulary vocabulary,
                                     Matrix weights, Taxonomy taxonomy)
    : vocabulary_(std::move(vocabulary)),
      weights_(std::move(weights)),
      taxonomy_(taxonomy) {
  if (weights_.rows() != kNumClasses ||
      weights_.cols() != vocabulary_.size() + 1) {
    throw ValidationError("text model weight shape does not match vocabulary");
  }
  if (!weights_.allFinite()) {
    throw ValidationError("text model weights must be finite");
  }
}

EmotionVector BaselineTextModel::score(const std::string& s) const {
  const Vector x = vocabulary_.count_features(text::tokenize(s));
  return EmotionVector(to_vector6(logreg::predict_one(weights_, x)),
                       taxonomy_);
}

void BaselineTextModel::save(const std::string& base) const {
  write_matrix_csv(base + ".csv", weights_);
  json j;
  j["kind"] = "text-baseline";
  j["taxonomy"] = taxonomy_name(taxonomy_);
  j["vocabulary"] = vocabulary_.tokens();
  save_sidecar(base, j);
}

BaselineTextModel BaselineTextModel::load(const std::string& base) {
  const json j = load_sidecar(base);
  if (j.value("kind", "") != "text-baseline") {
    throw ParseError(base + ".json: not a text-baseline model");
  }
  auto vocab = text::Vocabulary::from_tokens(
      j.at("vocabulary").get<std::vector<std::string>>());
  return BaselineTextModel(std::move(vocab), read_matrix_csv(base + ".csv"),
                           parse_taxonomy(j.at("taxonomy").get<std::string>()));
}

BaselineAudioModel::BaselineAudioModel(Vector mean, Vector std,
                                       std::vector<int> flagged_dims,
                                       Matrix weights, Taxonomy taxonomy)
    : mean_(std::move(mean)),
      std_(std::move(std)),
      flagged_dims_(std::move(flagged_dims)),
      weights_(std::move(weights)),
      taxonomy_(taxonomy) {
  if (mean_.size() != std_.size()) {
    throw ValidationError("audio model mean/std size mismatch");
  }
  if (weights_.rows() != kNumClasses || weights_.cols() != mean_.size() + 1) {
    throw ValidationError("audio model weight shape mismatch");
  }
  if ((std_.array() <= 0.0).any()) {
    throw ValidationError("audio model std entries must be positive");
  }
  if (!weights_.allFinite()) {
    throw ValidationError("audio model weights must be finite");
  }
}

EmotionVector BaselineAudioModel::score(const Waveform& audio) const {
  return score_features(dsp::summary_features(audio));
}

EmotionVector BaselineAudioModel::score_features(const Vector& features) const {
  if (features.size() != mean_.size()) {
    throw ValidationError("feature vector has wrong dimension");
  }
  const Vector z = (features - mean_).cwiseQuotient(std_);
  return EmotionVector(to_vector6(logreg::predict_one(weights_, z)),
                       taxonomy_);
}

void BaselineAudioModel::save(const std::string& base) const {
  write_matrix_csv(base + ".csv", weights_);
  json j;
  j["kind"] = "audio-baseline";
  j["taxonomy"] = taxonomy_name(taxonomy_);
  j["mean"] = std::vector<double>(mean_.data(), mean_.data() + mean_.size());
  j["std"] = std::vector<double>(std_.data(), std_.data() + std_.size());
  j["flagged_dims"] = flagged_dims_;
  save_sidecar(base, j);
}

BaselineAudioModel BaselineAudioModel::load(const std::string& base) {
  const json j = load_sidecar(base);
  if (j.value("kind", "") != "audio-baseline") {
    throw ParseError(base + ".json: not an audio-baseline model");
  }
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto std_v = j.at("std").get<std::vector<double>>();
  return BaselineAudioModel(
      Eigen::Map<const Vector>(mean.data(),
                               static_cast<Eigen::Index>(mean.size())),
      Eigen::Map<const Vector>(std_v.data(),
                               static_cast<Eigen::Index>(std_v.size())),
      j.at("flagged_dims").get<std::vector<int>>(),
      read_matrix_csv(base + ".csv"),
      parse_taxonomy(j.at("taxonomy").get<std::string>()));
}

ModelKind peek_model_kind(const std::string& base) {
  const json j = load_sidecar(base);
  const std::string kind = j.value("kind", "");
  if (kind == "text-baseline") return ModelKind::text_baseline;
  if (kind == "audio-baseline") return ModelKind::audio_baseline;
  throw ParseError(base + ".json: unknown model kind \"" + kind + "\"");
}

BaselineTextModel train_text_baseline(const std::vector<MediaRecord>& records,
                                      const logreg::Hyper& hyper,
                                      Taxonomy taxonomy) {
  const std::vector<int> labels = gold_labels(records);
  std::vector<std::vector<std::string>> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(text::tokenize(record_text(r)));
  auto vocab = text::Vocabulary::build(docs, 2);
  Matrix x(vocab.size(), static_cast<Eigen::Index>(records.size()));
  for (size_t i = 0; i < docs.size(); ++i) {
    x.col(static_cast<Eigen::Index>(i)) = vocab.count_features(docs[i]);
  }
  Matrix weights = logreg::fit(x, labels, kNumClasses, hyper);
  return BaselineTextModel(std::move(vocab), std::move(weights), taxonomy);
}

Matrix audio_features(const std::vector<MediaRecord>& records,
                      const std::string& audio_root) {
  Matrix f(dsp::kSummaryDim, static_cast<Eigen::Index>(records.size()));
  for (size_t i = 0; i < records.size(); ++i) {
    const Waveform w =
        load_wav(resolve_audio_path(audio_root, records[i].audio_path));
    f.col(static_cast<Eigen::Index>(i)) = dsp::summary_features(w);
  }
  return f;
}

BaselineAudioModel train_audio_baseline(
    const std::vector<MediaRecord>& records, const logreg::Hyper& hyper,
    Taxonomy taxonomy, const std::string& audio_root) {
  const std::vector<int> labels = gold_labels(records);
  const Matrix f = audio_features(records, audio_root);
  const double n = static_cast<double>(f.cols());
  const Vector mean = f.rowwise().sum() / n;
  Matrix centered = f.colwise() - mean;
  Vector std_dev =
      (centered.array().square().rowwise().sum() / n).sqrt().matrix();
  std::vector<int> flagged;
  for (Eigen::Index d = 0; d < std_dev.size(); ++d) {
    if (std_dev[d] < kStdFloor) {
      std_dev[d] = 1.0;
      flagged.push_back(static_cast<int>(d));
    }
  }
  const Matrix z = centered.array().colwise() / std_dev.array();
  Matrix weights = logreg::fit(z, labels, kNumClasses, hyper);
  return BaselineAudioModel(mean, std_dev, std::move(flagged),
                            std::move(weights), taxonomy);
}

namespace {

std::vector<std::string> record_ids(const std::vector<MediaRecord>& records) {
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto& r : records) ids.push_back(r.id);
  return ids;
}

}  // namespace

ScoreMatrix score_text(const TextScorer& model,
                       const std::vector<MediaRecord>& records) {
  Matrix values(kNumClasses, static_cast<Eigen::Index>(records.size()));
  for (size_t i = 0; i < records.size(); ++i) {
    values.col(static_cast<Eigen::Index>(i)) =
        model.score(record_text(records[i])).probs();
  }
  return ScoreMatrix(std::move(values), Modality::text, record_ids(records),
                     model.taxonomy());
}

ScoreMatrix score_audio(const AudioScorer& model,
                        const std::vector<MediaRecord>& records,
                        const std::string& audio_root) {
  Matrix values(kNumClasses, static_cast<Eigen::Index>(records.size()));
  for (size_t i = 0; i < records.size(); ++i) {
    const Waveform w =
        load_wav(resolve_audio_path(audio_root, records[i].audio_path));
    values.col(static_cast<Eigen::Index>(i)) = model.score(w).probs();
  }
  return ScoreMatrix(std::move(values), Modality::audio, record_ids(records),
                     model.taxonomy());
}

std::string encode_text_request(const std::string& s) {
  return json{{"text", s}}.dump();
}

std::string encode_features_request(const Vector& features) {
  return json{{"features", std::vector<double>(
                               features.data(),
                               features.data() + features.size())}}
      .dump();
}

Vector6 decode_probs_response(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scorer response: ") + e.what());
  }
  if (!j.is_object() || !j.contains("probs") || !j["probs"].is_array() ||
      j["probs"].size() != kNumClasses) {
    throw ParseError("scorer response must be {\"probs\": [6 reals]}");
  }
  Vector6 probs;
  for (int i = 0; i < kNumClasses; ++i) {
    const auto& v = j["probs"][static_cast<size_t>(i)];
    if (!v.is_number()) {
      throw ParseError("scorer response probs must be numbers");
    }
    probs[i] = v.get<double>();
  }
  return probs;
}

struct ExternalTextScorer::Worker {
  pid_t pid = -1;
  std::FILE* to_child = nullptr;
  std::FILE* from_child = nullptr;

  ~Worker() {
    if (to_child) std::fclose(to_child);
    if (from_child) std::fclose(from_child);
    if (pid > 0) {
      int status = 0;
      waitpid(pid, &status, 0);
    }
  }
};

ExternalTextScorer::ExternalTextScorer(std::string command, Taxonomy taxonomy)
    : command_(std::move(command)), taxonomy_(taxonomy) {
  if (command_.empty()) throw ConfigError("external scorer command is empty");
}

ExternalTextScorer::~ExternalTextScorer() = default;

EmotionVector ExternalTextScorer::score(const std::string& s) const {
  if (!worker_) {
    // A worker that exits early must surface as an IoError on the next
    // write, not kill this process with SIGPIPE.
    std::signal(SIGPIPE, SIG_IGN);
    int to_pipe[2], from_pipe[2];
    if (pipe(to_pipe) != 0 || pipe(from_pipe) != 0) {
      throw IoError("cannot create scorer pipes");
    }
    const pid_t pid = fork();
    if (pid < 0) throw IoError("cannot fork external scorer");
    if (pid == 0) {
      dup2(to_pipe[0], STDIN_FILENO);
      dup2(from_pipe[1], STDOUT_FILENO);
      close(to_pipe[0]);
      close(to_pipe[1]);
      close(from_pipe[0]);
      close(from_pipe[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(),
            static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_pipe[0]);
    close(from_pipe[1]);
    auto w = std::make_unique<Worker>();
    w->pid = pid;
    w->to_child = fdopen(to_pipe[1], "w");
    w->from_child = fdopen(from_pipe[0], "r");
    if (!w->to_child || !w->from_child) {
      throw IoError("cannot open scorer streams");
    }
    worker_ = std::move(w);
  }
  const std::string req = encode_text_request(s) + "\n";
  if (std::fputs(req.c_str(), worker_->to_child) == EOF ||
      std::fflush(worker_->to_child) != 0) {
    throw IoError("external scorer rejected request (broken pipe)");
  }
  char* line = nullptr;
  size_t cap = 0;
  const ssize_t got = getline(&line, &cap, worker_->from_child);
  std::string response;
  if (got > 0) response.assign(line, static_cast<size_t>(got));
  free(line);
  if (got <= 0) {
    throw IoError("external scorer closed its output before responding");
  }
  return EmotionVector(decode_probs_response(response), taxonomy_);
}

}  // namespace scorers
}  // namespace emokit
