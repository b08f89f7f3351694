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

#ifndef EMOKIT_MANIFEST_HPP_
#define EMOKIT_MANIFEST_HPP_

#include <string>
#include <vector>

#include "emokit/datamodel.hpp"

namespace emokit {

// Manifests are line-delimited JSON, one MediaRecord per line, UTF-8.
// Absent optional fields are allowed; unknown fields are ignored.
std::vector<MediaRecord> load_manifest(const std::string& path);

void save_manifest(const std::vector<MediaRecord>& records,
                   const std::string& path);

// Subset of records with the given split, in manifest order.
std::vector<MediaRecord> filter_split(const std::vector<MediaRecord>& records,
                                      Split split);

}  // namespace emokit

#endif  // EMOKIT_MANIFEST_HPP_
