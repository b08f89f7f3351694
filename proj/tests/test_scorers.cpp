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

#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "emokit/dsp.hpp"
#include "emokit/manifest.hpp"
#include "emokit/rng.hpp"
#include "emokit/synth.hpp"
#include "emokit/wav.hpp"
#include "test_util.hpp"

using emokit::MediaRecord;
using emokit::Taxonomy;
using emokit::Vector;
using emokit::Vector6;
namespace scorers = emokit::scorers;

TEST_CASE("record_text joins title, description and transcript") {
  MediaRecord r;
  r.title = "A Title";
  r.description = "desc";
  r.transcript = "words here";
  CHECK(scorers::record_text(r) == "A Title desc words here");
  MediaRecord empty;
  CHECK(scorers::record_text(empty) == "  ");
}

TEST_CASE("audio paths resolve against the manifest directory") {
  CHECK(scorers::resolve_audio_path("/data/run", "audio/x.wav") ==
        "/data/run/audio/x.wav");
  CHECK(scorers::resolve_audio_path("/data/run", "/abs/x.wav") ==
        "/abs/x.wav");
  CHECK(scorers::resolve_audio_path("", "audio/x.wav") == "audio/x.wav");
  CHECK_THROWS_AS(scorers::resolve_audio_path("/data", ""),
                  emokit::ValidationError);
}

namespace {

// Small synthetic corpus shared by the baseline tests. Generated once
// into a TempDir so audio files exist on disk.
struct Corpus {
  emokit_test::TempDir dir;
  std::vector<MediaRecord> records;
  std::vector<MediaRecord> train;

  Corpus() {
    emokit::synth::SyntheticSpec spec;
    spec.n_items = 60;
    spec.seed = 202;
    records = emokit::synth::make_synthetic_dataset(spec, dir.str(""));
    train = emokit::filter_split(records, emokit::Split::train);
  }
};

}  // namespace

TEST_CASE("text baseline learns, scores and round trips through disk") {
  Corpus corpus;
  emokit::logreg::Hyper hyper;
  hyper.epochs = 150;
  const auto model = scorers::train_text_baseline(corpus.train, hyper,
                                                  Taxonomy::youtube);
  CHECK(model.vocabulary().size() > 0);

  // Training accuracy on fully informative transcripts should be high.
  const auto scores = scorers::score_text(model, corpus.train);
  int correct = 0;
  for (int c = 0; c < scores.n_items(); ++c) {
    int best = 0;
    for (int r = 1; r < emokit::kNumClasses; ++r) {
      if (scores.values()(r, c) > scores.values()(best, c)) best = r;
    }
    if (best == *corpus.train[static_cast<size_t>(c)].gold_label) ++correct;
  }
  CHECK(correct >= scores.n_items() * 8 / 10);

  // Unseen text still yields a valid distribution.
  const auto blank = model.score("entirely novel words qqq zzz");
  CHECK(blank.probs().sum() == doctest::Approx(1.0));

  // Save/load gives bit-identical scores.
  const std::string base = corpus.dir.str("models/text_base");
  std::filesystem::create_directories(corpus.dir.str("models"));
  model.save(base);
  const auto loaded = scorers::BaselineTextModel::load(base);
  const auto rescored = scorers::score_text(loaded, corpus.train);
  CHECK((rescored.values() - scores.values()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(scorers::peek_model_kind(base) == scorers::ModelKind::text_baseline);
}

TEST_CASE("audio baseline learns, scores and round trips through disk") {
  Corpus corpus;
  emokit::logreg::Hyper hyper;
  hyper.epochs = 150;
  const auto model = scorers::train_audio_baseline(
      corpus.train, hyper, Taxonomy::youtube, corpus.dir.str(""));

  const auto scores =
      scorers::score_audio(model, corpus.train, corpus.dir.str(""));
  int correct = 0;
  for (int c = 0; c < scores.n_items(); ++c) {
    int best = 0;
    for (int r = 1; r < emokit::kNumClasses; ++r) {
      if (scores.values()(r, c) > scores.values()(best, c)) best = r;
    }
    if (best == *corpus.train[static_cast<size_t>(c)].gold_label) ++correct;
  }
  CHECK(correct >= scores.n_items() * 6 / 10);

  const std::string base = corpus.dir.str("models/audio_base");
  std::filesystem::create_directories(corpus.dir.str("models"));
  model.save(base);
  const auto loaded = scorers::BaselineAudioModel::load(base);
  CHECK((loaded.mean() - model.mean()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded.flagged_dims() == model.flagged_dims());
  const auto rescored =
      scorers::score_audio(loaded, corpus.train, corpus.dir.str(""));
  CHECK((rescored.values() - scores.values()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(scorers::peek_model_kind(base) == scorers::ModelKind::audio_baseline);
}

TEST_CASE("training validates gold labels and class diversity") {
  MediaRecord a, b;
  a.id = "a";
  a.transcript = "happy words";
  a.gold_label = 2;
  b.id = "b";
  b.transcript = "more happy words";
  SUBCASE("missing gold label") {
    CHECK_THROWS_AS(scorers::train_text_baseline({a, b}, {}, Taxonomy::youtube),
                    emokit::ValidationError);
  }
  SUBCASE("single class") {
    b.gold_label = 2;
    CHECK_THROWS_AS(scorers::train_text_baseline({a, b}, {}, Taxonomy::youtube),
                    emokit::ValidationError);
  }
}

TEST_CASE("zero-variance feature dimensions are flagged, not divided by") {
  // Constant waveforms zero out every summary dimension's variance in
  // some dims; the model must still train and score finite values.
  emokit_test::TempDir tmp;
  std::filesystem::create_directories(tmp.str("audio"));
  std::vector<MediaRecord> records;
  for (int i = 0; i < 6; ++i) {
    emokit::Waveform w;
    w.sample_rate = 16000;
    w.samples = Vector::Zero(4096);
    const std::string rel = "audio/r" + std::to_string(i) + ".wav";
    emokit::save_wav(w, tmp.str(rel));
    MediaRecord r;
    r.id = "r" + std::to_string(i);
    r.audio_path = rel;
    r.gold_label = i % 2;
    records.push_back(r);
  }
  emokit::logreg::Hyper hyper;
  hyper.epochs = 5;
  const auto model = scorers::train_audio_baseline(records, hyper,
                                                   Taxonomy::youtube,
                                                   tmp.str(""));
  // Identical inputs leave every dimension constant.
  CHECK(model.flagged_dims().size() ==
        static_cast<size_t>(emokit::dsp::kSummaryDim));
  for (const int d : model.flagged_dims()) {
    CHECK(model.std_dev()[d] == 1.0);
  }
  const auto probs = model.score(emokit::load_wav(tmp.str("audio/r0.wav")));
  CHECK(probs.probs().allFinite());
}

TEST_CASE("model files reject cross-kind and corrupt loads") {
  Corpus corpus;
  emokit::logreg::Hyper hyper;
  hyper.epochs = 20;
  const auto model = scorers::train_text_baseline(corpus.train, hyper,
                                                  Taxonomy::youtube);
  const std::string base = corpus.dir.str("m");
  model.save(base);
  CHECK_THROWS_AS(scorers::BaselineAudioModel::load(base),
                  emokit::ParseError);
  CHECK_THROWS_AS(scorers::BaselineTextModel::load(corpus.dir.str("nope")),
                  emokit::IoError);
  emokit_test::write_file(base + ".json", "{\"kind\":\"mystery\"}");
  CHECK_THROWS_AS(scorers::peek_model_kind(base), emokit::ParseError);
  emokit_test::write_file(base + ".json", "not json at all");
  CHECK_THROWS_AS(scorers::peek_model_kind(base), emokit::ParseError);
}

TEST_CASE("protocol codecs build and parse line JSON strictly") {
  const std::string req = scorers::encode_text_request("say \"hi\"\nagain");
  CHECK(req.find('\n') == std::string::npos);  // stays on one line
  CHECK(req.find("\\n") != std::string::npos);

  Vector features(3);
  features << 1.0, -2.5, 0.0;
  const std::string freq = scorers::encode_features_request(features);
  CHECK(freq.find("\"features\"") != std::string::npos);

  const Vector6 probs = scorers::decode_probs_response(
      "{\"probs\":[0.5,0.1,0.1,0.1,0.1,0.1]}");
  CHECK(probs[0] == 0.5);
  CHECK_THROWS_AS(scorers::decode_probs_response("not json"),
                  emokit::ParseError);
  CHECK_THROWS_AS(scorers::decode_probs_response("{\"probs\":[0.5,0.5]}"),
                  emokit::ParseError);
  CHECK_THROWS_AS(scorers::decode_probs_response("{\"probs\":\"x\"}"),
                  emokit::ParseError);
  CHECK_THROWS_AS(
      scorers::decode_probs_response("{\"probs\":[1,2,3,\"x\",5,6]}"),
      emokit::ParseError);
  CHECK_THROWS_AS(scorers::decode_probs_response("[0.5]"),
                  emokit::ParseError);
}

TEST_CASE("external scorer drives a worker over line JSON") {
  scorers::ExternalTextScorer fixed(
      "while read line; do echo '{\"probs\":[0.5,0.1,0.1,0.1,0.1,0.1]}'; "
      "done",
      Taxonomy::youtube);
  const auto first = fixed.score("anything");
  CHECK(first.probs()[0] == 0.5);
  // The worker stays alive across calls.
  const auto second = fixed.score("more");
  CHECK(second.probs()[0] == 0.5);
  CHECK(second.taxonomy() == Taxonomy::youtube);

  SUBCASE("empty command is a configuration error") {
    CHECK_THROWS_AS(scorers::ExternalTextScorer("", Taxonomy::youtube),
                    emokit::ConfigError);
  }
  SUBCASE("a worker that exits immediately surfaces as an io error") {
    scorers::ExternalTextScorer dead("exit 0", Taxonomy::youtube);
    CHECK_THROWS_AS(dead.score("hello"), emokit::IoError);
  }
  SUBCASE("garbage responses surface as parse errors") {
    scorers::ExternalTextScorer garbage(
        "while read line; do echo 'not json'; done", Taxonomy::youtube);
    CHECK_THROWS_AS(garbage.score("hello"), emokit::ParseError);
  }
  SUBCASE("off-simplex responses are rejected") {
    scorers::ExternalTextScorer off(
        "while read line; do echo '{\"probs\":[2,0,0,0,0,0]}'; done",
        Taxonomy::youtube);
    CHECK_THROWS_AS(off.score("hello"), emokit::ValidationError);
  }
}
