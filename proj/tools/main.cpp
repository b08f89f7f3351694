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

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "emokit/common.hpp"
#include "json.hpp"

namespace {

// Config files are JSON: top-level scalars feed the global flags,
// nested objects feed the matching subcommand. Flags always win.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::FileError(std::string("config is not valid JSON: ") +
                           e.what());
    }
    if (!j.is_object()) {
      throw CLI::FileError("config must be a JSON object");
    }
    std::vector<CLI::ConfigItem> items;
    append(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  static void append(const nlohmann::json& obj,
                     const std::vector<std::string>& parents,
                     std::vector<CLI::ConfigItem>& items) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const nlohmann::json& v = it.value();
      if (v.is_object()) {
        auto nested = parents;
        nested.push_back(it.key());
        append(v, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (v.is_array()) {
        for (const auto& e : v) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(v));
      }
      items.push_back(item);
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  emokit::cli::CommonArgs common;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) common.command_line += ' ';
    common.command_line += argv[i];
  }

  CLI::App app{"emotion scoring, fusion and coherence toolkit"};
  app.fallthrough(true);
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON config file; flags override it");
  app.config_formatter(std::make_shared<JsonConfig>());
  // The enum overload leaves command-line extras as errors; a config file
  // may hold sections for subcommands other than the one invoked.
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.add_option("--out", common.out, "output file, directory or prefix");
  app.add_option("--seed", common.seed, "seed recorded in every artifact");
  app.add_flag("--verbose", common.verbose, "log progress to stderr");

  emokit::cli::IngestArgs ingest_args;
  auto* ingest = app.add_subcommand(
      "ingest", "fetch recent channel videos into a manifest");
  ingest->add_option("--channels", ingest_args.channels,
                     "channel ids, comma separated")
      ->delimiter(',');
  ingest->add_option("--max-videos", ingest_args.max_videos,
                     "total video cap across channels");
  ingest->add_option("--api-key-env", ingest_args.api_key_env,
                     "environment variable holding the API key");

  emokit::cli::SynthArgs synth_args;
  auto* synth =
      app.add_subcommand("synth", "generate a synthetic labeled dataset");
  synth->add_option("--n", synth_args.n, "number of records");
  synth->add_option("--text-informativeness", synth_args.text_informativeness,
                    "probability a transcript carries its class signal");
  synth->add_option("--audio-informativeness",
                    synth_args.audio_informativeness,
                    "probability a clip carries its class signal");

  emokit::cli::ScoreArgs score_args;
  auto* score =
      app.add_subcommand("score", "score records with a unimodal baseline");
  score->add_option("--manifest", score_args.manifest, "manifest path");
  score->add_option("--modality", score_args.modality, "text or audio");
  score->add_option("--model", score_args.model,
                    "model base path (base.csv + base.json)");
  score->add_flag("--fit", score_args.fit,
                  "train on the train split first, saving to --model");

  emokit::cli::TrainFusionArgs train_args;
  auto* train_fusion =
      app.add_subcommand("train-fusion", "train the fusion classifier");
  train_fusion->add_option("--manifest", train_args.manifest, "manifest path");
  train_fusion->add_option("--d-model", train_args.d_model, "embedding width");
  train_fusion->add_option("--n-layers", train_args.n_layers,
                           "transformer blocks");
  train_fusion->add_option("--n-heads", train_args.n_heads, "attention heads");
  train_fusion->add_option("--d-ff", train_args.d_ff, "feed-forward width");
  train_fusion->add_option("--max-text-tokens", train_args.max_text_tokens,
                           "transcript token budget");
  train_fusion->add_option("--patch-size", train_args.patch_size,
                           "spectrogram patch edge");
  train_fusion->add_option("--epochs", train_args.epochs, "training epochs");
  train_fusion->add_option("--batch", train_args.batch, "minibatch size");
  train_fusion->add_option("--lr", train_args.lr, "Adam learning rate");

  emokit::cli::PredictArgs predict_args;
  auto* predict = app.add_subcommand(
      "predict", "score records with a trained fusion checkpoint");
  predict->add_option("--manifest", predict_args.manifest, "manifest path");
  predict->add_option("--checkpoint", predict_args.checkpoint,
                      "checkpoint directory");

  emokit::cli::EvaluateArgs evaluate_args;
  auto* evaluate =
      app.add_subcommand("evaluate", "evaluate scores against gold labels");
  evaluate->add_option("--scores", evaluate_args.scores, "score CSV");
  evaluate->add_option("--manifest", evaluate_args.manifest, "manifest path");
  evaluate->add_option("--split", evaluate_args.split,
                       "validation or test (default test)");

  emokit::cli::CompareArgs compare_args;
  auto* compare = app.add_subcommand(
      "compare", "side-by-side unimodal and fused evaluation");
  compare->add_option("--text", compare_args.text_scores, "text score CSV");
  compare->add_option("--audio", compare_args.audio_scores, "audio score CSV");
  compare->add_option("--fused", compare_args.fused_scores, "fused score CSV");
  compare->add_option("--manifest", compare_args.manifest, "manifest path");

  emokit::cli::CoherenceArgs coherence_args;
  auto* coherence = app.add_subcommand(
      "coherence", "cross-modal correlation and tendency report");
  coherence->add_option("--text", coherence_args.text_scores,
                        "text score CSV");
  coherence->add_option("--audio", coherence_args.audio_scores,
                        "audio score CSV");
  coherence->add_option("--threshold", coherence_args.threshold,
                        "coherent-verdict correlation threshold");
  coherence->add_option("--bin-width", coherence_args.bin_width,
                        "mode histogram bin width");

  emokit::cli::PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "render a report artifact as SVG");
  plot->add_option("--kind", plot_args.kind,
                   "roc, confusion, scatter or tendency");
  plot->add_option("--in", plot_args.in, "primary input CSV");
  plot->add_option("--in2", plot_args.in2, "second input CSV");
  plot->add_option("--in3", plot_args.in3, "third input CSV");
  plot->add_option("--title", plot_args.title, "figure title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(ingest)) {
      emokit::cli::cmd_ingest(common, ingest_args);
    } else if (app.got_subcommand(synth)) {
      emokit::cli::cmd_synth(common, synth_args);
    } else if (app.got_subcommand(score)) {
      emokit::cli::cmd_score(common, score_args);
    } else if (app.got_subcommand(train_fusion)) {
      emokit::cli::cmd_train_fusion(common, train_args);
    } else if (app.got_subcommand(predict)) {
      emokit::cli::cmd_predict(common, predict_args);
    } else if (app.got_subcommand(evaluate)) {
      emokit::cli::cmd_evaluate(common, evaluate_args);
    } else if (app.got_subcommand(compare)) {
      emokit::cli::cmd_compare(common, compare_args);
    } else if (app.got_subcommand(coherence)) {
      emokit::cli::cmd_coherence(common, coherence_args);
    } else if (app.got_subcommand(plot)) {
      emokit::cli::cmd_plot(common, plot_args);
    }
    return 0;
  } catch (const emokit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const emokit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const emokit::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const emokit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const emokit::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
