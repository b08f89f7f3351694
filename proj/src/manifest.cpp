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

#include <fstream>
#include <unordered_set>

#include "json.hpp"

namespace emokit {

using nlohmann::json;

std::vector<MediaRecord> load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + path);

  std::vector<MediaRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected a JSON object");
    }
    MediaRecord r;
    try {
      r.id = j.at("id").get<std::string>();
      r.category = j.value("category", std::string());
      r.title = j.value("title", std::string());
      r.description = j.value("description", std::string());
      r.transcript = j.value("transcript", std::string());
      r.audio_path = j.value("audio_path", std::string());
      if (j.contains("gold_label") && !j["gold_label"].is_null()) {
        r.gold_label = j["gold_label"].get<int>();
      }
      if (j.contains("split") && !j["split"].is_null()) {
        r.split = parse_split(j["split"].get<std::string>());
      }
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": bad record: " + e.what());
    }
    if (r.id.empty()) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": record id must be nonempty");
    }
    if (r.gold_label &&
        (*r.gold_label < 0 || *r.gold_label >= kNumClasses)) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": gold_label out of range: " +
                            std::to_string(*r.gold_label));
    }
    if (!seen.insert(r.id).second) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": duplicate id \"" + r.id + "\"");
    }
    records.push_back(std::move(r));
  }
  return records;
}

void save_manifest(const std::vector<MediaRecord>& records,
                   const std::string& path) {
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (r.id.empty()) throw ValidationError("save_manifest: empty record id");
    if (!seen.insert(r.id).second) {
      throw ValidationError("save_manifest: duplicate id \"" + r.id + "\"");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  for (const auto& r : records) {
    json j;
    j["id"] = r.id;
    j["category"] = r.category;
    j["title"] = r.title;
    j["description"] = r.description;
    j["transcript"] = r.transcript;
    j["audio_path"] = r.audio_path;
    if (r.gold_label) j["gold_label"] = *r.gold_label;
    j["split"] = split_name(r.split);
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<MediaRecord> filter_split(const std::vector<MediaRecord>& records,
                                      Split split) {
  std::vector<MediaRecord> out;
  for (const auto& r : records) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

}  // namespace emokit
