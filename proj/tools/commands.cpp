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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "emokit/fusion_train.hpp"
#include "emokit/manifest.hpp"
#include "emokit/metrics.hpp"
#include "emokit/provenance.hpp"
#include "emokit/scorers.hpp"
#include "emokit/scores_io.hpp"
#include "emokit/stats.hpp"
#include "emokit/svg.hpp"
#include "emokit/synth.hpp"
#include "emokit/youtube.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace emokit {
namespace cli {

namespace {

std::string require_out(const CommonArgs& common) {
  if (common.out.empty()) throw ValidationError("missing --out");
  return fs::absolute(common.out).string();
}

std::string require_path(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw ValidationError(std::string("missing ") + flag);
  }
  return fs::absolute(value).string();
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void log(const CommonArgs& common, const std::string& message) {
  if (common.verbose) std::cerr << message << "\n";
}

// Resolved settings land next to the artifact: <dir>/resolved_config.json
// for directory outputs, <out>.config.json otherwise, so repeated
// commands into one directory never clobber each other's echo.
void echo_config_dir(const std::string& dir, const nlohmann::json& resolved) {
  const std::string path = (fs::path(dir) / "resolved_config.json").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write resolved config: " + path);
  out << resolved.dump(2) << "\n";
}

void echo_config_file(const std::string& out_path,
                      const nlohmann::json& resolved) {
  const std::string path = out_path + ".config.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write resolved config: " + path);
  out << resolved.dump(2) << "\n";
}

prov::Provenance provenance(const CommonArgs& common,
                            std::vector<std::string> inputs) {
  prov::Provenance p;
  p.command = common.command_line;
  p.seed = static_cast<std::uint64_t>(common.seed);
  p.inputs = std::move(inputs);
  return p;
}

// Columns of `scores` for the records of one split, in manifest order;
// every selected record must be scored and carry a gold label.
std::pair<ScoreMatrix, std::vector<int>> align_split(
    const ScoreMatrix& scores, const std::vector<MediaRecord>& records,
    Split split) {
  std::map<std::string, int> col_of;
  for (int c = 0; c < scores.n_items(); ++c) {
    col_of[scores.item_ids()[static_cast<size_t>(c)]] = c;
  }
  const auto subset = filter_split(records, split);
  if (subset.empty()) {
    throw ValidationError("no records in split " + split_name(split));
  }
  Matrix values(kNumClasses, static_cast<Eigen::Index>(subset.size()));
  std::vector<std::string> ids;
  std::vector<int> gold;
  for (const auto& record : subset) {
    const auto it = col_of.find(record.id);
    if (it == col_of.end()) {
      throw ValidationError("record " + record.id + " has no score column");
    }
    if (!record.gold_label.has_value()) {
      throw ValidationError("record " + record.id + " has no gold label");
    }
    values.col(static_cast<Eigen::Index>(ids.size())) =
        scores.values().col(it->second);
    ids.push_back(record.id);
    gold.push_back(*record.gold_label);
  }
  return {ScoreMatrix(std::move(values), scores.modality(), std::move(ids),
                      scores.taxonomy()),
          gold};
}

metrics::ModalityEval eval_pair(const ScoreMatrix& scores,
                                const std::vector<MediaRecord>& records) {
  metrics::ModalityEval pair;
  pair.modality = scores.modality();
  auto [val_scores, val_gold] = align_split(scores, records, Split::validation);
  pair.validation = metrics::evaluate(val_scores, val_gold, Split::validation);
  auto [test_scores, test_gold] = align_split(scores, records, Split::test);
  pair.test = metrics::evaluate(test_scores, test_gold, Split::test);
  return pair;
}

// #taxonomy= comment of a CSV artifact; youtube when absent.
Taxonomy sniff_taxonomy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '#') break;
    const auto eq = line.find('=');
    if (eq != std::string::npos && line.substr(1, eq - 1) == "taxonomy") {
      return parse_taxonomy(line.substr(eq + 1));
    }
  }
  return Taxonomy::youtube;
}

}  // namespace

void cmd_ingest(const CommonArgs& common, const IngestArgs& args) {
  const std::string out_dir = require_out(common);
  if (args.channels.empty()) throw ValidationError("missing --channels");
  fs::create_directories(out_dir);

  youtube::YouTubeQuery query;
  query.channel_ids = args.channels;
  query.max_videos = args.max_videos;
  if (!args.api_key_env.empty()) query.api_key_env = args.api_key_env;
  query.validate();

  auto client = youtube::make_real_http_client();
  const auto records = youtube::fetch_channel_videos(query, *client);
  log(common, "fetched " + std::to_string(records.size()) + " records");

  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.json").string();
  save_manifest(records, manifest_path);

  nlohmann::json resolved;
  resolved["command"] = "ingest";
  resolved["channels"] = args.channels;
  resolved["max_videos"] = args.max_videos;
  resolved["api_key_env"] = query.api_key_env;
  resolved["out"] = out_dir;
  resolved["seed"] = common.seed;
  echo_config_dir(out_dir, resolved);
  prov::write_sidecar(provenance(common, {}), manifest_path);
}

void cmd_synth(const CommonArgs& common, const SynthArgs& args) {
  const std::string out_dir = require_out(common);
  fs::create_directories(out_dir);

  synth::SyntheticSpec spec;
  spec.n_items = args.n;
  spec.seed = common.seed;
  spec.text_informativeness = args.text_informativeness;
  spec.audio_informativeness = args.audio_informativeness;
  spec.validate();

  const auto records = synth::make_synthetic_dataset(spec, out_dir);
  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.json").string();
  save_manifest(records, manifest_path);
  log(common, "wrote " + std::to_string(records.size()) + " records");

  nlohmann::json resolved;
  resolved["command"] = "synth";
  resolved["n"] = args.n;
  resolved["text_informativeness"] = args.text_informativeness;
  resolved["audio_informativeness"] = args.audio_informativeness;
  resolved["out"] = out_dir;
  resolved["seed"] = common.seed;
  echo_config_dir(out_dir, resolved);
  prov::write_sidecar(provenance(common, {}), manifest_path);
}

void cmd_score(const CommonArgs& common, const ScoreArgs& args) {
  const std::string out_path = require_out(common);
  const std::string manifest_path = require_path(args.manifest, "--manifest");
  const std::string model_base = require_path(args.model, "--model");
  const Modality modality = parse_modality(args.modality);
  if (modality == Modality::fused) {
    throw ValidationError("score handles text or audio; use predict for fused");
  }
  ensure_parent(out_path);
  ensure_parent(model_base);

  const auto records = load_manifest(manifest_path);
  const std::string audio_root = fs::path(manifest_path).parent_path().string();

  logreg::Hyper hyper;
  std::vector<std::string> score_inputs = {manifest_path};
  ScoreMatrix scores = [&] {
    if (modality == Modality::text) {
      if (args.fit) {
        const auto model = scorers::train_text_baseline(
            filter_split(records, Split::train), hyper, Taxonomy::youtube);
        model.save(model_base);
        prov::write_sidecar(provenance(common, {manifest_path}),
                            model_base + ".csv");
        prov::write_sidecar(provenance(common, {manifest_path}),
                            model_base + ".json");
        return scorers::score_text(model, records);
      }
      const auto model = scorers::BaselineTextModel::load(model_base);
      score_inputs.push_back(model_base + ".csv");
      score_inputs.push_back(model_base + ".json");
      return scorers::score_text(model, records);
    }
    if (args.fit) {
      const auto model = scorers::train_audio_baseline(
          filter_split(records, Split::train), hyper, Taxonomy::youtube,
          audio_root);
      model.save(model_base);
      prov::write_sidecar(provenance(common, {manifest_path}),
                          model_base + ".csv");
      prov::write_sidecar(provenance(common, {manifest_path}),
                          model_base + ".json");
      return scorers::score_audio(model, records, audio_root);
    }
    const auto model = scorers::BaselineAudioModel::load(model_base);
    score_inputs.push_back(model_base + ".csv");
    score_inputs.push_back(model_base + ".json");
    return scorers::score_audio(model, records, audio_root);
  }();

  save_scores(scores, out_path);
  log(common, "scored " + std::to_string(scores.n_items()) + " records");

  nlohmann::json resolved;
  resolved["command"] = "score";
  resolved["manifest"] = manifest_path;
  resolved["modality"] = modality_name(modality);
  resolved["model"] = model_base;
  resolved["fit"] = args.fit;
  resolved["out"] = out_path;
  resolved["seed"] = common.seed;
  echo_config_file(out_path, resolved);
  prov::write_sidecar(provenance(common, score_inputs), out_path);
}

void cmd_train_fusion(const CommonArgs& common, const TrainFusionArgs& args) {
  const std::string out_dir = require_out(common);
  const std::string manifest_path = require_path(args.manifest, "--manifest");
  fs::create_directories(out_dir);

  fusion::FusionConfig config;
  config.d_model = args.d_model;
  config.n_layers = args.n_layers;
  config.n_heads = args.n_heads;
  config.d_ff = args.d_ff;
  config.max_text_tokens = args.max_text_tokens;
  config.patch_size = args.patch_size;
  config.seed = common.seed;
  config.validate();

  fusion::TrainHyper hyper;
  hyper.lr = args.lr;
  hyper.batch = args.batch;
  hyper.epochs = args.epochs;
  hyper.seed = common.seed;

  const auto records = load_manifest(manifest_path);
  const std::string audio_root = fs::path(manifest_path).parent_path().string();
  const auto train_records = filter_split(records, Split::train);
  const auto val_records = filter_split(records, Split::validation);
  auto gold_of = [](const std::vector<MediaRecord>& subset) {
    std::vector<int> gold;
    for (const auto& r : subset) {
      if (!r.gold_label.has_value()) {
        throw ValidationError("record " + r.id + " has no gold label");
      }
      gold.push_back(*r.gold_label);
    }
    return gold;
  };

  const auto vocab = fusion::build_transcript_vocab(train_records);
  log(common, "vocabulary of " + std::to_string(vocab.size()) + " tokens");
  const auto train_inputs =
      fusion::build_inputs(train_records, vocab, config, audio_root);
  const auto val_inputs =
      fusion::build_inputs(val_records, vocab, config, audio_root);

  const auto result =
      fusion::train(config, vocab.size(), train_inputs, gold_of(train_records),
                    val_inputs, gold_of(val_records), hyper);
  log(common, "best validation accuracy " +
                  std::to_string(result.best_val_accuracy) + " at epoch " +
                  std::to_string(result.best_epoch));

  const std::string ckpt_dir = (fs::path(out_dir) / "checkpoint").string();
  fusion::save_checkpoint(ckpt_dir, result.best_model, vocab, result.steps,
                          result.best_val_accuracy);
  const std::string metrics_path = (fs::path(out_dir) / "metrics.csv").string();
  fusion::save_metrics_csv(result.trace, metrics_path);

  nlohmann::json resolved;
  resolved["command"] = "train-fusion";
  resolved["manifest"] = manifest_path;
  resolved["d_model"] = args.d_model;
  resolved["n_layers"] = args.n_layers;
  resolved["n_heads"] = args.n_heads;
  resolved["d_ff"] = args.d_ff;
  resolved["max_text_tokens"] = args.max_text_tokens;
  resolved["patch_size"] = args.patch_size;
  resolved["epochs"] = args.epochs;
  resolved["batch"] = args.batch;
  resolved["lr"] = args.lr;
  resolved["out"] = out_dir;
  resolved["seed"] = common.seed;
  echo_config_dir(out_dir, resolved);
  prov::write_sidecar(provenance(common, {manifest_path}), ckpt_dir);
  prov::write_sidecar(provenance(common, {manifest_path}), metrics_path);
}

void cmd_predict(const CommonArgs& common, const PredictArgs& args) {
  const std::string out_path = require_out(common);
  const std::string manifest_path = require_path(args.manifest, "--manifest");
  const std::string ckpt_dir = require_path(args.checkpoint, "--checkpoint");

  const auto records = load_manifest(manifest_path);
  if (records.empty()) throw ValidationError("manifest has no records");
  const std::string audio_root = fs::path(manifest_path).parent_path().string();
  const auto ckpt = fusion::load_checkpoint(ckpt_dir);

  const auto inputs = fusion::build_inputs(records, ckpt.vocab,
                                           ckpt.model.config, audio_root);
  std::vector<std::string> ids;
  for (const auto& r : records) ids.push_back(r.id);
  const auto result =
      fusion::predict(ckpt.model, inputs, ids, Taxonomy::youtube);
  ensure_parent(out_path);
  save_scores(result.scores, out_path);
  log(common, "predicted " + std::to_string(result.scores.n_items()) +
                  " records");

  nlohmann::json resolved;
  resolved["command"] = "predict";
  resolved["manifest"] = manifest_path;
  resolved["checkpoint"] = ckpt_dir;
  resolved["out"] = out_path;
  resolved["seed"] = common.seed;
  echo_config_file(out_path, resolved);
  prov::write_sidecar(
      provenance(common,
                 {manifest_path,
                  (fs::path(ckpt_dir) / "manifest.json").string()}),
      out_path);
}

void cmd_evaluate(const CommonArgs& common, const EvaluateArgs& args) {
  const std::string out_prefix = require_out(common);
  const std::string scores_path = require_path(args.scores, "--scores");
  const std::string manifest_path = require_path(args.manifest, "--manifest");
  const Split split = parse_split(args.split);

  const auto scores = load_scores(scores_path);
  const auto records = load_manifest(manifest_path);
  auto [split_scores, gold] = align_split(scores, records, split);
  const auto report = metrics::evaluate(split_scores, gold, split);
  ensure_parent(out_prefix);
  log(common,
      "accuracy " + std::to_string(report.accuracy) + " on " +
          std::to_string(report.n) + " records");

  metrics::save_eval_csv(report, out_prefix + ".csv");
  metrics::save_eval_json(report, out_prefix + ".json");
  metrics::save_roc_points_csv(report, out_prefix + "_roc_points.csv");
  metrics::save_confusion_csv(report.confusion,
                              out_prefix + "_confusion.csv");

  nlohmann::json resolved;
  resolved["command"] = "evaluate";
  resolved["scores"] = scores_path;
  resolved["manifest"] = manifest_path;
  resolved["split"] = split_name(split);
  resolved["out"] = out_prefix;
  resolved["seed"] = common.seed;
  echo_config_file(out_prefix, resolved);
  const std::vector<std::string> inputs = {scores_path, manifest_path};
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".csv");
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".json");
  prov::write_sidecar(provenance(common, inputs),
                      out_prefix + "_roc_points.csv");
  prov::write_sidecar(provenance(common, inputs),
                      out_prefix + "_confusion.csv");
}

void cmd_compare(const CommonArgs& common, const CompareArgs& args) {
  const std::string out_prefix = require_out(common);
  const std::string text_path = require_path(args.text_scores, "--text");
  const std::string audio_path = require_path(args.audio_scores, "--audio");
  const std::string fused_path = require_path(args.fused_scores, "--fused");
  const std::string manifest_path = require_path(args.manifest, "--manifest");

  const auto records = load_manifest(manifest_path);
  std::vector<metrics::ModalityEval> evals;
  evals.push_back(eval_pair(load_scores(text_path), records));
  evals.push_back(eval_pair(load_scores(audio_path), records));
  evals.push_back(eval_pair(load_scores(fused_path), records));
  const auto report = metrics::compare_modalities(evals);
  ensure_parent(out_prefix);
  log(common, "test-accuracy winner: " + report.winner_test_accuracy);

  metrics::save_comparison_csv(report, out_prefix + ".csv");
  metrics::save_comparison_json(report, out_prefix + ".json");

  nlohmann::json resolved;
  resolved["command"] = "compare";
  resolved["text"] = text_path;
  resolved["audio"] = audio_path;
  resolved["fused"] = fused_path;
  resolved["manifest"] = manifest_path;
  resolved["out"] = out_prefix;
  resolved["seed"] = common.seed;
  echo_config_file(out_prefix, resolved);
  const std::vector<std::string> inputs = {text_path, audio_path, fused_path,
                                           manifest_path};
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".csv");
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".json");
}

void cmd_coherence(const CommonArgs& common, const CoherenceArgs& args) {
  const std::string out_prefix = require_out(common);
  const std::string text_path = require_path(args.text_scores, "--text");
  const std::string audio_path = require_path(args.audio_scores, "--audio");

  const auto text_scores = load_scores(text_path);
  const auto audio_scores = load_scores(audio_path);
  const auto report =
      stats::coherence_report(text_scores, audio_scores, args.threshold);
  const std::vector<stats::TendencySummary> tendency = {
      stats::tendency_summary(text_scores, args.bin_width),
      stats::tendency_summary(audio_scores, args.bin_width),
  };

  ensure_parent(out_prefix);
  stats::save_coherence_csv(report, out_prefix + ".csv");
  stats::save_coherence_json(report, out_prefix + ".json");
  stats::save_tendency_csv(tendency, out_prefix + "_tendency.csv");

  nlohmann::json resolved;
  resolved["command"] = "coherence";
  resolved["text"] = text_path;
  resolved["audio"] = audio_path;
  resolved["threshold"] = args.threshold;
  resolved["bin_width"] = args.bin_width;
  resolved["out"] = out_prefix;
  resolved["seed"] = common.seed;
  echo_config_file(out_prefix, resolved);
  const std::vector<std::string> inputs = {text_path, audio_path};
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".csv");
  prov::write_sidecar(provenance(common, inputs), out_prefix + ".json");
  prov::write_sidecar(provenance(common, inputs),
                      out_prefix + "_tendency.csv");
}

void cmd_plot(const CommonArgs& common, const PlotArgs& args) {
  const std::string out_path = require_out(common);
  const std::string in_path = require_path(args.in, "--in");

  std::vector<std::string> inputs = {in_path};
  std::string document;
  if (args.kind == "roc") {
    const Taxonomy taxonomy = sniff_taxonomy(in_path);
    const auto curves = metrics::load_roc_points_csv(in_path, taxonomy);
    document = svg::render_roc(
        curves, taxonomy,
        args.title.empty() ? "one-vs-rest ROC" : args.title);
  } else if (args.kind == "confusion") {
    const auto cm = metrics::load_confusion_csv(in_path);
    document = svg::render_confusion(
        cm, args.title.empty() ? "confusion matrix" : args.title);
  } else if (args.kind == "scatter") {
    const std::string in2_path = require_path(args.in2, "--in2");
    inputs.push_back(in2_path);
    const auto x = load_scores(in_path);
    const auto y = load_scores(in2_path);
    document = svg::render_scatter(
        x, y,
        args.title.empty() ? "per-class score agreement" : args.title);
  } else if (args.kind == "tendency") {
    std::vector<stats::TendencySummary> summaries;
    summaries.push_back(stats::tendency_summary(load_scores(in_path)));
    if (!args.in2.empty()) {
      const std::string in2_path = fs::absolute(args.in2).string();
      inputs.push_back(in2_path);
      summaries.push_back(stats::tendency_summary(load_scores(in2_path)));
    }
    if (!args.in3.empty()) {
      const std::string in3_path = fs::absolute(args.in3).string();
      inputs.push_back(in3_path);
      summaries.push_back(stats::tendency_summary(load_scores(in3_path)));
    }
    document = svg::render_tendency(
        summaries,
        args.title.empty() ? "central tendency per class" : args.title);
  } else {
    throw ValidationError("unknown plot kind \"" + args.kind +
                          "\"; expected roc, confusion, scatter or tendency");
  }

  ensure_parent(out_path);
  svg::write_svg(document, out_path);
  log(common, "wrote " + out_path);

  nlohmann::json resolved;
  resolved["command"] = "plot";
  resolved["kind"] = args.kind;
  resolved["in"] = inputs;
  resolved["out"] = out_path;
  resolved["seed"] = common.seed;
  echo_config_file(out_path, resolved);
  prov::write_sidecar(provenance(common, inputs), out_path);
}

}  // namespace cli
}  // namespace emokit
