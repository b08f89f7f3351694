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

#include "emokit/scores_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace emokit {

std::string format_score(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void save_scores(const ScoreMatrix& matrix, const std::string& path,
                 const std::vector<std::string>& extra_comments) {
  for (const auto& id : matrix.item_ids()) {
    if (id.find(',') != std::string::npos ||
        id.find('\n') != std::string::npos) {
      throw ValidationError("save_scores: item id not CSV-safe: \"" + id +
                            "\"");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write scores: " + path);
  out << "#modality=" << modality_name(matrix.modality()) << "\n";
  out << "#taxonomy=" << taxonomy_name(matrix.taxonomy()) << "\n";
  for (const auto& c : extra_comments) out << "#" << c << "\n";
  out << "label";
  for (const auto& id : matrix.item_ids()) out << "," << id;
  out << "\n";
  const auto& names = label_names(matrix.taxonomy());
  for (int r = 0; r < kNumClasses; ++r) {
    out << names[static_cast<size_t>(r)];
    for (int c = 0; c < matrix.n_items(); ++c) {
      out << "," << format_score(matrix.values()(r, c));
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

ScoreMatrix load_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scores: " + path);

  std::string modality_str, taxonomy_str;
  std::string line;
  int line_no = 0;

  // Comment block: #modality= and #taxonomy= are required, other #lines
  // are ignored.
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] != '#') break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(1, eq - 1);
    const std::string value = line.substr(eq + 1);
    if (key == "modality") modality_str = value;
    if (key == "taxonomy") taxonomy_str = value;
  }
  if (modality_str.empty() || taxonomy_str.empty()) {
    throw ParseError(path + ": missing #modality= or #taxonomy= header");
  }
  const Modality modality = parse_modality(modality_str);
  const Taxonomy taxonomy = parse_taxonomy(taxonomy_str);

  // `line` now holds the header row.
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "label") {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": expected header row starting with \"label\"");
  }
  std::vector<std::string> item_ids(header.begin() + 1, header.end());
  const int n = static_cast<int>(item_ids.size());

  Matrix values(kNumClasses, n);
  const auto& names = label_names(taxonomy);
  for (int r = 0; r < kNumClasses; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError(path + ": expected " + std::to_string(kNumClasses) +
                       " label rows, got " + std::to_string(r));
    }
    ++line_no;
    auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != n + 1) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(n + 1) + " fields, got " +
                       std::to_string(fields.size()));
    }
    if (fields[0] != names[static_cast<size_t>(r)]) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected label \"" + names[static_cast<size_t>(r)] +
                       "\", got \"" + fields[0] + "\"");
    }
    for (int c = 0; c < n; ++c) {
      char* end = nullptr;
      const std::string& f = fields[static_cast<size_t>(c + 1)];
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": bad number \"" + f + "\"");
      }
      values(r, c) = v;
    }
  }
  return ScoreMatrix(std::move(values), modality, std::move(item_ids),
                     taxonomy);
}

}  // namespace emokit
