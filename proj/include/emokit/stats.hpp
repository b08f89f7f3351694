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

// Cross-modal coherence: per-emotion Pearson correlation between score
// series, and central-tendency profiles of score distributions.

#ifndef EMOKIT_STATS_HPP_
#define EMOKIT_STATS_HPP_

#include <array>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"

namespace emokit {
namespace stats {

inline constexpr double kDefaultCoherenceThreshold = 0.5;
inline constexpr double kDefaultBinWidth = 0.05;

// Sample Pearson correlation. Throws ValidationError for n < 2 and
// NumericError when either series has zero variance; a zero-variance
// series has no defined correlation and is never reported as 0.
double pearson(const Vector& x, const Vector& y);

enum class Verdict { coherent, weak, undefined };

std::string verdict_name(Verdict v);

struct EmotionCoherence {
  // NaN when the verdict is undefined.
  double r = 0.0;
  Verdict verdict = Verdict::undefined;
};

struct CoherenceReport {
  std::array<EmotionCoherence, kNumClasses> per_emotion;
  int n = 0;
  double threshold = kDefaultCoherenceThreshold;
  Taxonomy taxonomy = Taxonomy::youtube;
};

// Correlates each emotion row of the two matrices across items.
// Matrices must agree on item ids (same order) and taxonomy. Rows with
// zero variance get the undefined verdict; otherwise coherent iff
// r >= threshold.
CoherenceReport coherence_report(const ScoreMatrix& text,
                                 const ScoreMatrix& audio,
                                 double threshold = kDefaultCoherenceThreshold);

struct TendencyRow {
  double mean = 0.0;
  double median = 0.0;
  // Center of the most populated histogram bin over [0, 1]; ties break
  // to the lowest bin.
  double mode = 0.0;
  double range = 0.0;
};

struct TendencySummary {
  std::array<TendencyRow, kNumClasses> per_emotion;
  Modality modality = Modality::text;
  Taxonomy taxonomy = Taxonomy::youtube;
  double bin_width = kDefaultBinWidth;
  int n = 0;
};

TendencySummary tendency_summary(const ScoreMatrix& m,
                                 double bin_width = kDefaultBinWidth);

// CSV rows emotion,r,verdict,n; undefined correlations carry r=nan.
void save_coherence_csv(const CoherenceReport& report,
                        const std::string& path);
void save_coherence_json(const CoherenceReport& report,
                         const std::string& path);

// CSV rows emotion,modality,mean,median,mode,range for each summary.
void save_tendency_csv(const std::vector<TendencySummary>& summaries,
                       const std::string& path);

}  // namespace stats
}  // namespace emokit

#endif  // EMOKIT_STATS_HPP_
