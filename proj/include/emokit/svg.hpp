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

// Minimal self-contained SVG renderers for the report figures. Output is
// deterministic: fixed element order, fixed precision, no timestamps.

#ifndef EMOKIT_SVG_HPP_
#define EMOKIT_SVG_HPP_

#include <string>
#include <vector>

#include "emokit/datamodel.hpp"
#include "emokit/metrics.hpp"
#include "emokit/stats.hpp"

namespace emokit {
namespace svg {

// One-vs-rest ROC curves on a shared unit square, with a legend carrying
// per-class AUC and a chance diagonal.
std::string render_roc(const std::vector<metrics::RocCurve>& curves,
                       Taxonomy taxonomy, const std::string& title);

// Heatmap of counts[actual][predicted], shaded relative to the largest
// cell, with the count printed in each cell.
std::string render_confusion(const metrics::ConfusionMatrix& cm,
                             const std::string& title);

// Six panels (one per class): per-item x-scores against y-scores on the
// unit square. Matrices must agree on ids and taxonomy.
std::string render_scatter(const ScoreMatrix& x, const ScoreMatrix& y,
                           const std::string& title);

// Grouped bars of the per-class means (one bar per summary), with a tick
// at the median and a dot at the mode.
std::string render_tendency(const std::vector<stats::TendencySummary>& summaries,
                            const std::string& title);

void write_svg(const std::string& document, const std::string& path);

}  // namespace svg
}  // namespace emokit

#endif  // EMOKIT_SVG_HPP_
