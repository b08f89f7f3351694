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

#ifndef EMOKIT_TOOLS_COMMANDS_HPP_
#define EMOKIT_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace emokit {
namespace cli {

// Global flags plus the verbatim command line for provenance.
struct CommonArgs {
  std::string command_line;
  std::string out;
  long long seed = 0;
  bool verbose = false;
};

struct IngestArgs {
  std::vector<std::string> channels;
  int max_videos = 50;
  std::string api_key_env;
};

struct SynthArgs {
  int n = 600;
  double text_informativeness = 1.0;
  double audio_informativeness = 1.0;
};

struct ScoreArgs {
  std::string manifest;
  std::string modality;
  std::string model;
  bool fit = false;
};

struct TrainFusionArgs {
  std::string manifest;
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 4;
  int d_ff = 128;
  int max_text_tokens = 32;
  int patch_size = 8;
  int epochs = 10;
  int batch = 16;
  double lr = 1e-3;
};

struct PredictArgs {
  std::string manifest;
  std::string checkpoint;
};

struct EvaluateArgs {
  std::string scores;
  std::string manifest;
  std::string split = "test";
};

struct CompareArgs {
  std::string text_scores;
  std::string audio_scores;
  std::string fused_scores;
  std::string manifest;
};

struct CoherenceArgs {
  std::string text_scores;
  std::string audio_scores;
  double threshold = 0.5;
  double bin_width = 0.05;
};

struct PlotArgs {
  std::string kind;
  std::string in;
  std::string in2;
  std::string in3;
  std::string title;
};

void cmd_ingest(const CommonArgs& common, const IngestArgs& args);
void cmd_synth(const CommonArgs& common, const SynthArgs& args);
void cmd_score(const CommonArgs& common, const ScoreArgs& args);
void cmd_train_fusion(const CommonArgs& common, const TrainFusionArgs& args);
void cmd_predict(const CommonArgs& common, const PredictArgs& args);
void cmd_evaluate(const CommonArgs& common, const EvaluateArgs& args);
void cmd_compare(const CommonArgs& common, const CompareArgs& args);
void cmd_coherence(const CommonArgs& common, const CoherenceArgs& args);
void cmd_plot(const CommonArgs& common, const PlotArgs& args);

}  // namespace cli
}  // namespace emokit

#endif  // EMOKIT_TOOLS_COMMANDS_HPP_
