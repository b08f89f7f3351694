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

#include "emokit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace emokit {
namespace svg {

namespace {

// Class color ramp; index = class.
const char* const kClassColors[kNumClasses] = {"#d62728", "#9467bd", "#ff7f0e",
                                               "#e377c2", "#1f77b4", "#2ca02c"};
// Summary colors for the tendency chart, in input order.
const char* const kSeriesColors[3] = {"#1f77b4", "#ff7f0e", "#2ca02c"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void open_document(std::ostringstream& out, int width, int height) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
}

void title_text(std::ostringstream& out, int width, const std::string& title) {
  out << "<text x=\"" << width / 2
      << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
}

// Axes of a unit-square plot whose origin (0,0) maps to the bottom-left
// corner (x0, y0 + size).
void unit_axes(std::ostringstream& out, double x0, double y0, double size,
               const std::string& x_label, const std::string& y_label) {
  out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\""
      << fmt(size) << "\" height=\"" << fmt(size)
      << "\" fill=\"none\" stroke=\"#444444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const double px = x0 + frac * size;
    const double py = y0 + size - frac * size;
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y0 + size)
        << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(y0 + size + 4)
        << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y0 + size + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(frac)
        << "</text>\n";
    out << "<line x1=\"" << fmt(x0 - 4) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(x0) << "\" y2=\"" << fmt(py) << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << fmt(x0 - 7) << "\" y=\"" << fmt(py + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(frac)
        << "</text>\n";
  }
  if (!x_label.empty()) {
    out << "<text x=\"" << fmt(x0 + size / 2) << "\" y=\""
        << fmt(y0 + size + 32) << "\" text-anchor=\"middle\" font-size=\"12\">"
        << escape(x_label) << "</text>\n";
  }
  if (!y_label.empty()) {
    out << "<text x=\"" << fmt(x0 - 34) << "\" y=\"" << fmt(y0 + size / 2)
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
        << fmt(x0 - 34) << " " << fmt(y0 + size / 2) << ")\">"
        << escape(y_label) << "</text>\n";
  }
}

}  // namespace

std::string render_roc(const std::vector<metrics::RocCurve>& curves,
                       Taxonomy taxonomy, const std::string& title) {
  const int width = 660, height = 500;
  const double x0 = 60, y0 = 40, size = 400;
  std::ostringstream out;
  open_document(out, width, height);
  title_text(out, width, title);
  unit_axes(out, x0, y0, size, "false positive rate", "true positive rate");
  out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0 + size) << "\" x2=\""
      << fmt(x0 + size) << "\" y2=\"" << fmt(y0)
      << "\" stroke=\"#999999\" stroke-dasharray=\"5,4\"/>\n";

  const auto& names = label_names(taxonomy);
  double legend_y = y0 + 14;
  for (const auto& curve : curves) {
    const int cls = std::clamp(curve.class_index, 0, kNumClasses - 1);
    const char* color = kClassColors[cls];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (size_t k = 0; k < curve.fpr.size(); ++k) {
      if (k > 0) out << " ";
      out << fmt(x0 + curve.fpr[k] * size) << ","
          << fmt(y0 + size - curve.tpr[k] * size);
    }
    out << "\"/>\n";
    const double lx = x0 + size + 18;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(legend_y - 4)
        << "\" x2=\"" << fmt(lx + 22) << "\" y2=\"" << fmt(legend_y - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(legend_y)
        << "\" font-size=\"11\">" << escape(names[static_cast<size_t>(cls)])
        << " (AUC " << fmt(curve.auc) << ")</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_confusion(const metrics::ConfusionMatrix& cm,
                             const std::string& title) {
  const double cell = 56;
  const double x0 = 96, y0 = 72;
  const int width = static_cast<int>(x0 + kNumClasses * cell + 24);
  const int height = static_cast<int>(y0 + kNumClasses * cell + 46);
  std::ostringstream out;
  open_document(out, width, height);
  title_text(out, width, title);

  long long max_count = 0;
  for (const auto& row : cm.counts) {
    for (long long v : row) max_count = std::max(max_count, v);
  }
  const auto& names = label_names(cm.taxonomy);
  for (int a = 0; a < kNumClasses; ++a) {
    for (int p = 0; p < kNumClasses; ++p) {
      const long long v =
          cm.counts[static_cast<size_t>(a)][static_cast<size_t>(p)];
      const double t =
          max_count > 0 ? static_cast<double>(v) / static_cast<double>(max_count)
                        : 0.0;
      // White to deep blue.
      const int r = static_cast<int>(std::lround(255 + t * (8 - 255)));
      const int g = static_cast<int>(std::lround(255 + t * (81 - 255)));
      const int b = static_cast<int>(std::lround(255 + t * (156 - 255)));
      const double px = x0 + p * cell;
      const double py = y0 + a * cell;
      out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
          << fmt(cell) << "\" height=\"" << fmt(cell) << "\" fill=\"rgb(" << r
          << "," << g << "," << b << ")\" stroke=\"#cccccc\"/>\n";
      out << "<text x=\"" << fmt(px + cell / 2) << "\" y=\""
          << fmt(py + cell / 2 + 4) << "\" text-anchor=\"middle\" font-size=\""
          << 12 << "\" fill=\"" << (t > 0.55 ? "white" : "#222222") << "\">"
          << v << "</text>\n";
    }
  }
  for (int i = 0; i < kNumClasses; ++i) {
    out << "<text x=\"" << fmt(x0 + i * cell + cell / 2) << "\" y=\""
        << fmt(y0 - 8) << "\" text-anchor=\"middle\" font-size=\"11\">"
        << escape(names[static_cast<size_t>(i)]) << "</text>\n";
    out << "<text x=\"" << fmt(x0 - 8) << "\" y=\""
        << fmt(y0 + i * cell + cell / 2 + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">"
        << escape(names[static_cast<size_t>(i)]) << "</text>\n";
  }
  out << "<text x=\"" << fmt(x0 + kNumClasses * cell / 2) << "\" y=\""
      << fmt(y0 - 28) << "\" text-anchor=\"middle\" font-size=\"12\">predicted"
      << "</text>\n";
  out << "<text x=\"" << fmt(x0 - 72) << "\" y=\""
      << fmt(y0 + kNumClasses * cell / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
      << fmt(x0 - 72) << " " << fmt(y0 + kNumClasses * cell / 2)
      << ")\">actual</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string render_scatter(const ScoreMatrix& x, const ScoreMatrix& y,
                           const std::string& title) {
  if (x.taxonomy() != y.taxonomy()) {
    throw ValidationError("scatter matrices mix taxonomies");
  }
  if (x.item_ids() != y.item_ids()) {
    throw ValidationError("scatter matrices cover different items");
  }
  const double panel = 150;
  const double left = 46, right = 12, top = 30, bottom = 40;
  const double cell_w = left + panel + right;
  const double cell_h = top + panel + bottom;
  const int width = static_cast<int>(3 * cell_w);
  const int height = static_cast<int>(2 * cell_h + 34);
  std::ostringstream out;
  open_document(out, width, height);
  title_text(out, width, title);

  const auto& names = label_names(x.taxonomy());
  const std::string x_label = modality_name(x.modality()) + " score";
  const std::string y_label = modality_name(y.modality()) + " score";
  for (int cls = 0; cls < kNumClasses; ++cls) {
    const double px0 = (cls % 3) * cell_w + left;
    const double py0 = 34 + (cls / 3) * cell_h + top;
    out << "<text x=\"" << fmt(px0 + panel / 2) << "\" y=\"" << fmt(py0 - 8)
        << "\" text-anchor=\"middle\" font-size=\"12\">"
        << escape(names[static_cast<size_t>(cls)]) << "</text>\n";
    unit_axes(out, px0, py0, panel, x_label, y_label);
    for (int i = 0; i < x.n_items(); ++i) {
      const double vx = std::clamp(x.values()(cls, i), 0.0, 1.0);
      const double vy = std::clamp(y.values()(cls, i), 0.0, 1.0);
      out << "<circle cx=\"" << fmt(px0 + vx * panel) << "\" cy=\""
          << fmt(py0 + panel - vy * panel) << "\" r=\"2\" fill=\""
          << kClassColors[cls] << "\" fill-opacity=\"0.55\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_tendency(
    const std::vector<stats::TendencySummary>& summaries,
    const std::string& title) {
  if (summaries.empty() || summaries.size() > 3) {
    throw ValidationError("tendency chart takes 1 to 3 summaries");
  }
  for (const auto& s : summaries) {
    if (s.taxonomy != summaries.front().taxonomy) {
      throw ValidationError("tendency summaries mix taxonomies");
    }
  }
  const int n_series = static_cast<int>(summaries.size());
  const double bar_w = 24, bar_gap = 6, group_gap = 26;
  const double group_w = n_series * bar_w + (n_series - 1) * bar_gap;
  const double x0 = 56, y0 = 46, plot_h = 300;
  const int width = static_cast<int>(
      x0 + kNumClasses * group_w + (kNumClasses - 1) * group_gap + 30);
  const int height = static_cast<int>(y0 + plot_h + 70);
  std::ostringstream out;
  open_document(out, width, height);
  title_text(out, width, title);

  out << "<line x1=\"" << fmt(x0 - 6) << "\" y1=\"" << fmt(y0 + plot_h)
      << "\" x2=\"" << fmt(width - 16) << "\" y2=\"" << fmt(y0 + plot_h)
      << "\" stroke=\"#444444\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const double py = y0 + plot_h - frac * plot_h;
    out << "<line x1=\"" << fmt(x0 - 10) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(x0 - 6) << "\" y2=\"" << fmt(py) << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << fmt(x0 - 13) << "\" y=\"" << fmt(py + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(frac)
        << "</text>\n";
  }

  const auto& names = label_names(summaries.front().taxonomy);
  for (int cls = 0; cls < kNumClasses; ++cls) {
    const double gx = x0 + cls * (group_w + group_gap);
    for (int s = 0; s < n_series; ++s) {
      const auto& row =
          summaries[static_cast<size_t>(s)].per_emotion[static_cast<size_t>(cls)];
      const double bx = gx + s * (bar_w + bar_gap);
      const double mean_h = std::clamp(row.mean, 0.0, 1.0) * plot_h;
      out << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(y0 + plot_h - mean_h)
          << "\" width=\"" << fmt(bar_w) << "\" height=\"" << fmt(mean_h)
          << "\" fill=\"" << kSeriesColors[s] << "\" fill-opacity=\"0.85\"/>\n";
      const double med_y =
          y0 + plot_h - std::clamp(row.median, 0.0, 1.0) * plot_h;
      out << "<line x1=\"" << fmt(bx) << "\" y1=\"" << fmt(med_y) << "\" x2=\""
          << fmt(bx + bar_w) << "\" y2=\"" << fmt(med_y)
          << "\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
      const double mode_y =
          y0 + plot_h - std::clamp(row.mode, 0.0, 1.0) * plot_h;
      out << "<circle cx=\"" << fmt(bx + bar_w / 2) << "\" cy=\""
          << fmt(mode_y) << "\" r=\"3\" fill=\"white\" stroke=\"#222222\"/>\n";
    }
    out << "<text x=\"" << fmt(gx + group_w / 2) << "\" y=\""
        << fmt(y0 + plot_h + 16) << "\" text-anchor=\"middle\" font-size=\"11\">"
        << escape(names[static_cast<size_t>(cls)]) << "</text>\n";
  }
  double legend_x = x0;
  const double legend_y = y0 + plot_h + 40;
  for (int s = 0; s < n_series; ++s) {
    out << "<rect x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y - 10)
        << "\" width=\"12\" height=\"12\" fill=\"" << kSeriesColors[s]
        << "\"/>\n";
    out << "<text x=\"" << fmt(legend_x + 17) << "\" y=\"" << fmt(legend_y)
        << "\" font-size=\"11\">"
        << modality_name(summaries[static_cast<size_t>(s)].modality)
        << " mean (tick: median, dot: mode)</text>\n";
    legend_x += 240;
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::string& document, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write svg: " + path);
  out << document;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace svg
}  // namespace emokit
