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

#include "emokit/manifest.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using emokit::MediaRecord;
using emokit::Split;

TEST_CASE("manifests round trip including optional fields") {
  emokit_test::TempDir tmp;
  MediaRecord full;
  full.id = "vid-1";
  full.category = "music";
  full.title = "Title with, commas and \"quotes\"";
  full.description = "multi\nline is stored escaped";
  full.transcript = "some words";
  full.audio_path = "audio/vid-1.wav";
  full.gold_label = 3;
  full.split = Split::train;

  MediaRecord sparse;
  sparse.id = "vid-2";  // everything else defaulted, no gold label

  const std::string path = tmp.str("m.jsonl");
  emokit::save_manifest({full, sparse}, path);
  const auto loaded = emokit::load_manifest(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "vid-1");
  CHECK(loaded[0].title == full.title);
  CHECK(loaded[0].description == full.description);
  CHECK(loaded[0].gold_label == 3);
  CHECK(loaded[0].split == Split::train);
  CHECK(loaded[1].id == "vid-2");
  CHECK(!loaded[1].gold_label.has_value());
  CHECK(loaded[1].split == Split::unlabeled);

  // Saving the loaded records reproduces the file byte for byte.
  emokit::save_manifest(loaded, tmp.str("m2.jsonl"));
  CHECK(emokit_test::read_file(tmp.str("m2.jsonl")) ==
        emokit_test::read_file(path));
}

TEST_CASE("unknown fields and blank lines are tolerated") {
  emokit_test::TempDir tmp;
  const std::string path = tmp.str("m.jsonl");
  emokit_test::write_file(
      path,
      "{\"id\":\"a\",\"view_count\":123,\"nested\":{\"x\":1}}\n"
      "\n"
      "{\"id\":\"b\",\"split\":\"test\",\"gold_label\":null}\n");
  const auto loaded = emokit::load_manifest(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].id == "a");
  CHECK(loaded[1].split == Split::test);
  CHECK(!loaded[1].gold_label.has_value());
}

TEST_CASE("malformed manifests fail with the offending line") {
  emokit_test::TempDir tmp;
  const std::string path = tmp.str("m.jsonl");

  SUBCASE("broken JSON") {
    emokit_test::write_file(path, "{\"id\":\"a\"}\n{oops\n");
    try {
      emokit::load_manifest(path);
      FAIL("expected ParseError");
    } catch (const emokit::ParseError& e) {
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
  }
  SUBCASE("non-object line") {
    emokit_test::write_file(path, "[1,2,3]\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ParseError);
  }
  SUBCASE("missing id") {
    emokit_test::write_file(path, "{\"title\":\"x\"}\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ParseError);
  }
  SUBCASE("wrong field type") {
    emokit_test::write_file(path, "{\"id\":\"a\",\"gold_label\":\"angry\"}\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ParseError);
  }
  SUBCASE("gold label out of range") {
    emokit_test::write_file(path, "{\"id\":\"a\",\"gold_label\":6}\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ValidationError);
  }
  SUBCASE("duplicate ids") {
    emokit_test::write_file(path, "{\"id\":\"a\"}\n{\"id\":\"a\"}\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ValidationError);
  }
  SUBCASE("unknown split name") {
    emokit_test::write_file(path, "{\"id\":\"a\",\"split\":\"dev\"}\n");
    CHECK_THROWS_AS(emokit::load_manifest(path), emokit::ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(emokit::load_manifest(tmp.str("absent.jsonl")),
                    emokit::IoError);
  }
}

TEST_CASE("save_manifest rejects unusable records") {
  emokit_test::TempDir tmp;
  MediaRecord a, b;
  a.id = "same";
  b.id = "same";
  CHECK_THROWS_AS(emokit::save_manifest({a, b}, tmp.str("m.jsonl")),
                  emokit::ValidationError);
  MediaRecord blank;
  CHECK_THROWS_AS(emokit::save_manifest({blank}, tmp.str("m.jsonl")),
                  emokit::ValidationError);
}

TEST_CASE("filter_split keeps manifest order") {
  std::vector<MediaRecord> records(5);
  const Split splits[5] = {Split::train, Split::test, Split::train,
                           Split::validation, Split::train};
  for (int i = 0; i < 5; ++i) {
    records[static_cast<size_t>(i)].id = "r" + std::to_string(i);
    records[static_cast<size_t>(i)].split = splits[i];
  }
  const auto train = emokit::filter_split(records, Split::train);
  REQUIRE(train.size() == 3);
  CHECK(train[0].id == "r0");
  CHECK(train[1].id == "r2");
  CHECK(train[2].id == "r4");
  CHECK(emokit::filter_split(records, Split::unlabeled).empty());
}
