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

#ifndef EMOKIT_SCORES_IO_HPP_
#define EMOKIT_SCORES_IO_HPP_

#include <string>
#include <vector>

#include "emokit/datamodel.hpp"

namespace emokit {

// Score matrices persist as CSV:
//   #modality=<text|audio|fused>
//   #taxonomy=<youtube|iemocap>
//   label,<id_1>,...,<id_n>
//   anger,0.1,...
// Values carry 12 significant digits; load(save(m)) is the identity at
// that precision. Extra "#key=value" comment lines (provenance) are
// written verbatim and ignored on load.
void save_scores(const ScoreMatrix& matrix, const std::string& path,
                 const std::vector<std::string>& extra_comments = {});

ScoreMatrix load_scores(const std::string& path);

// Format a double with 12 significant digits, C locale.
std::string format_score(double v);

}  // namespace emokit

#endif  // EMOKIT_SCORES_IO_HPP_
