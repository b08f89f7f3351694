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

#include "emokit/synth.hpp"

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "emokit/manifest.hpp"
#include "emokit/text.hpp"
#include "emokit/wav.hpp"
#include "test_util.hpp"

using emokit::kNumClasses;
using emokit::MediaRecord;
using emokit::Split;
using emokit::Vector6;
namespace synth = emokit::synth;

TEST_CASE("identical specs produce identical datasets") {
  emokit_test::TempDir a, b;
  synth::SyntheticSpec spec;
  spec.n_items = 24;
  spec.seed = 77;
  const auto ra = synth::make_synthetic_dataset(spec, a.str(""));
  const auto rb = synth::make_synthetic_dataset(spec, b.str(""));
  REQUIRE(ra.size() == rb.size());
  for (size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].id == rb[i].id);
    CHECK(ra[i].transcript == rb[i].transcript);
    CHECK(ra[i].title == rb[i].title);
    CHECK(ra[i].gold_label == rb[i].gold_label);
    CHECK(ra[i].split == rb[i].split);
    CHECK(ra[i].audio_path == rb[i].audio_path);
    CHECK(emokit_test::read_file(a.str(ra[i].audio_path)) ==
          emokit_test::read_file(b.str(rb[i].audio_path)));
  }

  // A different seed changes the content.
  emokit_test::TempDir c;
  synth::SyntheticSpec other = spec;
  other.seed = 78;
  const auto rc = synth::make_synthetic_dataset(other, c.str(""));
  bool any_diff = false;
  for (size_t i = 0; i < rc.size(); ++i) {
    any_diff = any_diff || rc[i].transcript != ra[i].transcript;
  }
  CHECK(any_diff);
}

TEST_CASE("splits follow the 70/15/15 partition") {
  emokit_test::TempDir tmp;
  synth::SyntheticSpec spec;
  spec.n_items = 200;
  spec.seed = 5;
  const auto records = synth::make_synthetic_dataset(spec, tmp.str(""));
  CHECK(emokit::filter_split(records, Split::train).size() == 140);
  CHECK(emokit::filter_split(records, Split::validation).size() == 30);
  CHECK(emokit::filter_split(records, Split::test).size() == 30);
  CHECK(emokit::filter_split(records, Split::unlabeled).empty());

  // Every record carries a gold label in range and a loadable clip.
  std::set<std::string> ids;
  for (const auto& r : records) {
    REQUIRE(r.gold_label.has_value());
    CHECK(*r.gold_label >= 0);
    CHECK(*r.gold_label < kNumClasses);
    CHECK(ids.insert(r.id).second);
  }
  const auto w = emokit::load_wav(tmp.str(records[0].audio_path));
  CHECK(w.sample_rate == 16000);
  CHECK(w.samples.size() == 16000);
}

TEST_CASE("class balance steers the label distribution") {
  emokit_test::TempDir tmp;
  synth::SyntheticSpec spec;
  spec.n_items = 40;
  spec.seed = 9;
  spec.class_balance = Vector6::Zero();
  spec.class_balance[2] = 1.0;
  const auto records = synth::make_synthetic_dataset(spec, tmp.str(""));
  for (const auto& r : records) CHECK(*r.gold_label == 2);
}

TEST_CASE("text informativeness zero removes every class token") {
  emokit_test::TempDir tmp;
  synth::SyntheticSpec spec;
  spec.n_items = 30;
  spec.seed = 11;
  spec.text_informativeness = 0.0;
  const auto records = synth::make_synthetic_dataset(spec, tmp.str(""));
  for (const auto& r : records) {
    const auto toks = emokit::text::tokenize(r.transcript);
    for (const auto& tok : toks) {
      for (const auto& pool : synth::class_token_pools()) {
        for (const auto& pooled : pool) CHECK(tok != pooled);
      }
    }
  }
}

TEST_CASE("full text informativeness marks most transcripts") {
  emokit_test::TempDir tmp;
  synth::SyntheticSpec spec;
  spec.n_items = 30;
  spec.seed = 13;
  const auto records = synth::make_synthetic_dataset(spec, tmp.str(""));
  int marked = 0;
  for (const auto& r : records) {
    const auto& pool =
        synth::class_token_pools()[static_cast<size_t>(*r.gold_label)];
    const auto toks = emokit::text::tokenize(r.transcript);
    bool has_pool_token = false;
    for (const auto& tok : toks) {
      for (const auto& pooled : pool) {
        has_pool_token = has_pool_token || tok == pooled;
      }
    }
    if (has_pool_token) ++marked;
  }
  CHECK(marked >= 28);
}

TEST_CASE("token pools are pairwise disjoint and avoid filler") {
  std::set<std::string> seen;
  for (const auto& pool : synth::class_token_pools()) {
    for (const auto& tok : pool) {
      CHECK(seen.insert(tok).second);
    }
  }
  for (const auto& tok : synth::filler_tokens()) {
    CHECK(seen.insert(tok).second);
  }
  // Audio classes are separated in both carrier and modulation rate.
  std::set<double> freqs(synth::class_base_freqs().begin(),
                         synth::class_base_freqs().end());
  CHECK(freqs.size() == static_cast<size_t>(kNumClasses));
}

TEST_CASE("an empty dataset is valid and writes no records") {
  emokit_test::TempDir tmp;
  synth::SyntheticSpec spec;
  spec.n_items = 0;
  const auto records = synth::make_synthetic_dataset(spec, tmp.str(""));
  CHECK(records.empty());
}

TEST_CASE("spec validation rejects bad parameters") {
  synth::SyntheticSpec spec;
  SUBCASE("negative count") {
    spec.n_items = -1;
    CHECK_THROWS_AS(spec.validate(), emokit::ConfigError);
  }
  SUBCASE("informativeness out of range") {
    spec.text_informativeness = 1.5;
    CHECK_THROWS_AS(spec.validate(), emokit::ConfigError);
    spec.text_informativeness = 1.0;
    spec.audio_informativeness = -0.1;
    CHECK_THROWS_AS(spec.validate(), emokit::ConfigError);
  }
  SUBCASE("balance off the simplex") {
    spec.class_balance = Vector6::Constant(0.2);
    CHECK_THROWS_AS(spec.validate(), emokit::ConfigError);
    spec.class_balance = Vector6::Constant(1.0 / kNumClasses);
    spec.class_balance[0] = -spec.class_balance[0];
    CHECK_THROWS_AS(spec.validate(), emokit::ConfigError);
  }
}
