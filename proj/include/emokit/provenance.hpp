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

// Provenance sidecars: every artifact gets a <path>.prov.json recording
// the command that produced it, the seed, and content hashes of its
// inputs. Identical runs produce byte-identical sidecars.

#ifndef EMOKIT_PROVENANCE_HPP_
#define EMOKIT_PROVENANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace emokit {
namespace prov {

std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t hash_file(const std::string& path);

// "fnv1a:<16 hex digits>".
std::string hash_string(std::uint64_t h);

struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  // Input files, hashed at sidecar-write time; order does not matter
  // (the sidecar sorts by path).
  std::vector<std::string> inputs;
};

// Writes <artifact_path>.prov.json. The artifact itself is not hashed,
// so the sidecar can be written before or after the artifact.
void write_sidecar(const Provenance& p, const std::string& artifact_path);

}  // namespace prov
}  // namespace emokit

#endif  // EMOKIT_PROVENANCE_HPP_
