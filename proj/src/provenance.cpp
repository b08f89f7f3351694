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

#include "emokit/provenance.hpp"

#include <cstdio>
#include <fstream>
#include <map>

#include "emokit/common.hpp"
#include "json.hpp"

namespace emokit {
namespace prov {

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot hash input: " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  if (in.bad()) throw IoError("read failed while hashing: " + path);
  return h;
}

std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void write_sidecar(const Provenance& p, const std::string& artifact_path) {
  std::map<std::string, std::string> hashed;
  for (const auto& path : p.inputs) {
    hashed[path] = hash_string(hash_file(path));
  }
  nlohmann::json j;
  j["command"] = p.command;
  j["seed"] = p.seed;
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [path, digest] : hashed) inputs[path] = digest;
  j["inputs"] = inputs;

  const std::string sidecar = artifact_path + ".prov.json";
  std::ofstream out(sidecar, std::ios::binary);
  if (!out) throw IoError("cannot write sidecar: " + sidecar);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + sidecar);
}

}  // namespace prov
}  // namespace emokit
