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

#include "emokit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "emokit/labels.hpp"

namespace emokit {
namespace stats {

double pearson(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw ValidationError("series lengths differ");
  }
  if (x.size() < 2) {
    throw ValidationError("correlation needs at least two points");
  }
  const double mx = x.mean();
  const double my = y.mean();
  const Vector dx = x.array() - mx;
  const Vector dy = y.array() - my;
  const double sxx = dx.squaredNorm();
  const double syy = dy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericError(
        "undefined correlation: a series has zero variance");
  }
  const double r = dx.dot(dy) / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::coherent:
      return "coherent";
    case Verdict::weak:
      return "weak";
    case Verdict::undefined:
      return "undefined";
  }
  throw ValidationError("unknown verdict");
}

CoherenceReport coherence_report(const ScoreMatrix& text,
                                 const ScoreMatrix& audio, double threshold) {
  if (text.taxonomy() != audio.taxonomy()) {
    throw ValidationError("score matrices use different taxonomies");
  }
  if (text.item_ids() != audio.item_ids()) {
    throw ValidationError(
        "score matrices are not aligned: item ids differ or are ordered "
        "differently");
  }
  CoherenceReport report;
  report.n = text.n_items();
  report.threshold = threshold;
  report.taxonomy = text.taxonomy();
  for (int e = 0; e < kNumClasses; ++e) {
    EmotionCoherence& ec = report.per_emotion[static_cast<size_t>(e)];
    if (report.n < 2) {
      ec.r = std::numeric_limits<double>::quiet_NaN();
      ec.verdict = Verdict::undefined;
      continue;
    }
    try {
      ec.r = pearson(text.values().row(e).transpose(),
                     audio.values().row(e).transpose());
      ec.verdict = ec.r >= threshold ? Verdict::coherent : Verdict::weak;
    } catch (const NumericError&) {
      ec.r = std::numeric_limits<double>::quiet_NaN();
      ec.verdict = Verdict::undefined;
    }
  }
  return report;
}

TendencySummary tendency_summary(const ScoreMatrix& m, double bin_width) {
  if (bin_width <= 0.0 || bin_width > 1.0) {
    throw ConfigError("bin_width must lie in (0, 1]");
  }
  if (m.n_items() < 1) {
    throw ValidationError("tendency summary needs at least one item");
  }
  TendencySummary summary;
  summary.modality = m.modality();
  summary.taxonomy = m.taxonomy();
  summary.bin_width = bin_width;
  summary.n = m.n_items();
  const int n_bins =
      static_cast<int>(std::ceil(1.0 / bin_width - 1e-12));
  for (int e = 0; e < kNumClasses; ++e) {
    std::vector<double> row(static_cast<size_t>(m.n_items()));
    for (int i = 0; i < m.n_items(); ++i) {
      row[static_cast<size_t>(i)] = m.values()(e, i);
    }
    TendencyRow& t = summary.per_emotion[static_cast<size_t>(e)];
    const double n = static_cast<double>(row.size());
    double total = 0.0;
    for (const double v : row) total += v;
    t.mean = total / n;

    std::vector<double> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    const size_t half = sorted.size() / 2;
    t.median = sorted.size() % 2 == 1
                   ? sorted[half]
                   : 0.5 * (sorted[half - 1] + sorted[half]);
    t.range = sorted.back() - sorted.front();

    std::vector<long long> hist(static_cast<size_t>(n_bins), 0);
    for (const double v : row) {
      int b = static_cast<int>(std::floor(v / bin_width));
      b = std::clamp(b, 0, n_bins - 1);  // 1.0 lands in the top bin
      ++hist[static_cast<size_t>(b)];
    }
    int best = 0;
    for (int b = 1; b < n_bins; ++b) {
      if (hist[static_cast<size_t>(b)] > hist[static_cast<size_t>(best)]) {
        best = b;
      }
    }
    t.mode = (best + 0.5) * bin_width;
  }
  return summary;
}

void save_coherence_csv(const CoherenceReport& report,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write coherence report: " + path);
  out << "#taxonomy=" << taxonomy_name(report.taxonomy) << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", report.threshold);
  out << "#threshold=" << buf << "\n";
  out << "emotion,r,verdict,n\n";
  for (int e = 0; e < kNumClasses; ++e) {
    const EmotionCoherence& ec = report.per_emotion[static_cast<size_t>(e)];
    if (ec.verdict == Verdict::undefined) {
      std::snprintf(buf, sizeof(buf), "nan");
    } else {
      std::snprintf(buf, sizeof(buf), "%.12g", ec.r);
    }
    out << label_name(report.taxonomy, e) << "," << buf << ","
        << verdict_name(ec.verdict) << "," << report.n << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_coherence_json(const CoherenceReport& report,
                         const std::string& path) {
  nlohmann::json j;
  j["taxonomy"] = taxonomy_name(report.taxonomy);
  j["threshold"] = report.threshold;
  j["n"] = report.n;
  nlohmann::json emotions = nlohmann::json::array();
  for (int e = 0; e < kNumClasses; ++e) {
    const EmotionCoherence& ec = report.per_emotion[static_cast<size_t>(e)];
    nlohmann::json entry;
    entry["emotion"] = label_name(report.taxonomy, e);
    if (ec.verdict == Verdict::undefined) {
      entry["r"] = nullptr;
    } else {
      entry["r"] = ec.r;
    }
    entry["verdict"] = verdict_name(ec.verdict);
    emotions.push_back(entry);
  }
  j["emotions"] = emotions;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write coherence report: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

void save_tendency_csv(const std::vector<TendencySummary>& summaries,
                       const std::string& path) {
  if (summaries.empty()) {
    throw ValidationError("no tendency summaries to write");
  }
  for (const auto& s : summaries) {
    if (s.taxonomy != summaries.front().taxonomy) {
      throw ValidationError("tendency summaries mix taxonomies");
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write tendency summary: " + path);
  out << "emotion,modality,mean,median,mode,range\n";
  char buf[160];
  for (int e = 0; e < kNumClasses; ++e) {
    for (const auto& s : summaries) {
      const TendencyRow& t = s.per_emotion[static_cast<size_t>(e)];
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g", t.mean,
                    t.median, t.mode, t.range);
      out << label_name(s.taxonomy, e) << "," << modality_name(s.modality)
          << "," << buf << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace stats
}  // namespace emokit
