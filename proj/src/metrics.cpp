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

#include "emokit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "emokit/scores_io.hpp"
#include "json.hpp"

namespace emokit {
namespace metrics {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& f, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(f.c_str(), &end);
  if (end == f.c_str() || *end != '\0') {
    throw ParseError(where + ": bad number \"" + f + "\"");
  }
  return v;
}

std::string format_pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * fraction);
  return buf;
}

void check_labels(const std::vector<int>& labels, const char* what) {
  for (int v : labels) {
    if (v < 0 || v >= kNumClasses) {
      throw ValidationError(std::string(what) + " label out of range: " +
                            std::to_string(v));
    }
  }
}

}  // namespace

double ConfusionMatrix::accuracy() const {
  if (total <= 0) throw ValidationError("accuracy of an empty confusion matrix");
  long long trace = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    trace += counts[static_cast<size_t>(c)][static_cast<size_t>(c)];
  }
  return static_cast<double>(trace) / static_cast<double>(total);
}

ClassCounts ConfusionMatrix::class_counts(int cls) const {
  if (cls < 0 || cls >= kNumClasses) {
    throw ValidationError("class index out of range: " + std::to_string(cls));
  }
  const auto c = static_cast<size_t>(cls);
  ClassCounts out;
  out.tp = counts[c][c];
  for (int j = 0; j < kNumClasses; ++j) {
    const auto k = static_cast<size_t>(j);
    if (k != c) {
      out.fn += counts[c][k];
      out.fp += counts[k][c];
    }
  }
  out.tn = total - out.tp - out.fn - out.fp;
  return out;
}

ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& gold, Taxonomy taxonomy) {
  if (predictions.size() != gold.size()) {
    throw ValidationError("confusion: " + std::to_string(predictions.size()) +
                          " predictions vs " + std::to_string(gold.size()) +
                          " gold labels");
  }
  if (gold.empty()) throw ValidationError("confusion: no items");
  check_labels(predictions, "predicted");
  check_labels(gold, "gold");
  ConfusionMatrix cm;
  cm.taxonomy = taxonomy;
  cm.total = static_cast<long long>(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    ++cm.counts[static_cast<size_t>(gold[i])][static_cast<size_t>(
        predictions[i])];
  }
  return cm;
}

RocCurve roc_auc(const Vector& scores, const std::vector<bool>& positive) {
  const auto n = static_cast<size_t>(scores.size());
  if (n != positive.size()) {
    throw ValidationError("roc_auc: " + std::to_string(n) + " scores vs " +
                          std::to_string(positive.size()) + " labels");
  }
  long long n_pos = 0;
  for (bool b : positive) n_pos += b ? 1 : 0;
  const long long n_neg = static_cast<long long>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw NumericError("undefined AUC: gold labels contain a single class");
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(scores[static_cast<Eigen::Index>(i)])) {
      throw NumericError("roc_auc: non-finite score");
    }
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[static_cast<Eigen::Index>(a)] >
           scores[static_cast<Eigen::Index>(b)];
  });

  RocCurve curve;
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  curve.fpr.push_back(0.0);
  curve.tpr.push_back(0.0);

  long long tp = 0, fp = 0;
  size_t i = 0;
  while (i < n) {
    const double s = scores[static_cast<Eigen::Index>(order[i])];
    // One step per distinct score: all tied items flip together, which
    // makes the trapezoid area the Mann-Whitney statistic exactly.
    while (i < n && scores[static_cast<Eigen::Index>(order[i])] == s) {
      if (positive[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    curve.thresholds.push_back(s);
    curve.fpr.push_back(static_cast<double>(fp) / static_cast<double>(n_neg));
    curve.tpr.push_back(static_cast<double>(tp) / static_cast<double>(n_pos));
  }

  double auc = 0.0;
  for (size_t k = 1; k < curve.fpr.size(); ++k) {
    auc += (curve.fpr[k] - curve.fpr[k - 1]) *
           (curve.tpr[k] + curve.tpr[k - 1]) * 0.5;
  }
  curve.auc = auc;
  return curve;
}

EvalReport evaluate(const ScoreMatrix& scores, const std::vector<int>& gold,
                    Split split) {
  const int n = scores.n_items();
  if (static_cast<size_t>(n) != gold.size()) {
    throw ValidationError("evaluate: " + std::to_string(n) + " score columns vs " +
                          std::to_string(gold.size()) + " gold labels");
  }
  if (n == 0) throw ValidationError("evaluate: no items");
  check_labels(gold, "gold");

  std::vector<int> predictions(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    int best = 0;
    for (int r = 1; r < kNumClasses; ++r) {
      // Strict > keeps ties at the lowest class index.
      if (scores.values()(r, c) > scores.values()(best, c)) best = r;
    }
    predictions[static_cast<size_t>(c)] = best;
  }

  EvalReport report;
  report.split = split;
  report.taxonomy = scores.taxonomy();
  report.n = n;
  report.confusion = confusion(predictions, gold, scores.taxonomy());
  report.accuracy = report.confusion.accuracy();

  double auc_sum = 0.0;
  int auc_count = 0;
  for (int cls = 0; cls < kNumClasses; ++cls) {
    std::vector<bool> positive(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) {
      positive[static_cast<size_t>(c)] = gold[static_cast<size_t>(c)] == cls;
    }
    try {
      RocCurve curve = roc_auc(scores.values().row(cls).transpose(), positive);
      curve.class_index = cls;
      auc_sum += curve.auc;
      ++auc_count;
      report.roc[static_cast<size_t>(cls)] = std::move(curve);
    } catch (const NumericError&) {
      report.undefined_classes.push_back(cls);
    }
  }
  report.macro_auroc = auc_count > 0
                           ? auc_sum / auc_count
                           : std::numeric_limits<double>::quiet_NaN();
  return report;
}

ComparisonReport compare_modalities(const std::vector<ModalityEval>& evals) {
  if (evals.size() != 3) {
    throw ValidationError(
        "comparison requires one evaluation pair per modality, got " +
        std::to_string(evals.size()));
  }
  const Modality canonical[3] = {Modality::text, Modality::audio,
                                 Modality::fused};
  ComparisonReport report;
  for (Modality m : canonical) {
    const ModalityEval* found = nullptr;
    for (const auto& e : evals) {
      if (e.modality == m) {
        if (found != nullptr) {
          throw ValidationError("duplicate evaluation for modality " +
                                modality_name(m));
        }
        found = &e;
      }
    }
    if (found == nullptr) {
      throw ValidationError("missing evaluation for modality " +
                            modality_name(m));
    }
    if (found->validation.split != Split::validation ||
        found->test.split != Split::test) {
      throw ValidationError("evaluation pair for " + modality_name(m) +
                            " is not tagged (validation, test)");
    }
    ComparisonEntry entry;
    entry.modality = m;
    entry.val_accuracy = found->validation.accuracy;
    entry.test_accuracy = found->test.accuracy;
    entry.macro_auroc = found->test.macro_auroc;
    for (int c = 0; c < kNumClasses; ++c) {
      entry.per_class[static_cast<size_t>(c)] =
          found->test.confusion.class_counts(c);
    }
    report.entries.push_back(entry);
  }

  const auto& first = report.entries.front();
  report.n_val = 0;
  report.n_test = 0;
  report.taxonomy = Taxonomy::youtube;
  for (const auto& e : evals) {
    if (e.modality == first.modality) {
      report.n_val = e.validation.n;
      report.n_test = e.test.n;
      report.taxonomy = e.test.taxonomy;
    }
  }
  for (const auto& e : evals) {
    if (e.validation.n != report.n_val || e.test.n != report.n_test) {
      throw ValidationError("evaluations cover different split sizes");
    }
    if (e.validation.taxonomy != report.taxonomy ||
        e.test.taxonomy != report.taxonomy) {
      throw ValidationError("evaluations mix taxonomies");
    }
  }

  auto winner = [&](auto metric) -> std::string {
    double best = metric(report.entries[0]);
    for (const auto& e : report.entries) best = std::max(best, metric(e));
    std::vector<std::string> at_best;
    for (const auto& e : report.entries) {
      if (metric(e) == best) at_best.push_back(modality_name(e.modality));
    }
    return at_best.size() == 1 ? at_best.front() : std::string("tie");
  };
  report.winner_val_accuracy =
      winner([](const ComparisonEntry& e) { return e.val_accuracy; });
  report.winner_test_accuracy =
      winner([](const ComparisonEntry& e) { return e.test_accuracy; });
  report.winner_macro_auroc =
      winner([](const ComparisonEntry& e) { return e.macro_auroc; });

  double fused_acc = 0.0, text_acc = 0.0, audio_acc = 0.0;
  for (const auto& e : report.entries) {
    if (e.modality == Modality::fused) fused_acc = e.test_accuracy;
    if (e.modality == Modality::text) text_acc = e.test_accuracy;
    if (e.modality == Modality::audio) audio_acc = e.test_accuracy;
  }
  report.fused_at_least_unimodal =
      fused_acc >= text_acc && fused_acc >= audio_acc;
  return report;
}

void save_eval_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path);
  const auto& names = label_names(report.taxonomy);
  out << "#split=" << split_name(report.split) << "\n";
  out << "#taxonomy=" << taxonomy_name(report.taxonomy) << "\n";
  out << "#auroc=macro one-vs-rest, unweighted mean over defined classes\n";
  out << "metric,value\n";
  out << "n," << report.n << "\n";
  out << "accuracy_pct," << format_pct(report.accuracy) << "\n";
  out << "macro_auroc,"
      << (std::isnan(report.macro_auroc) ? std::string("nan")
                                         : format_score(report.macro_auroc))
      << "\n";
  for (int c = 0; c < kNumClasses; ++c) {
    const auto& curve = report.roc[static_cast<size_t>(c)];
    out << "auroc_" << names[static_cast<size_t>(c)] << ","
        << (curve.has_value() ? format_score(curve->auc) : std::string("nan"))
        << "\n";
  }
  for (int c = 0; c < kNumClasses; ++c) {
    const ClassCounts cc = report.confusion.class_counts(c);
    const auto& name = names[static_cast<size_t>(c)];
    out << "tp_" << name << "," << cc.tp << "\n";
    out << "fp_" << name << "," << cc.fp << "\n";
    out << "fn_" << name << "," << cc.fn << "\n";
    out << "tn_" << name << "," << cc.tn << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_eval_json(const EvalReport& report, const std::string& path) {
  nlohmann::json j;
  j["split"] = split_name(report.split);
  j["taxonomy"] = taxonomy_name(report.taxonomy);
  j["n"] = report.n;
  j["accuracy"] = report.accuracy;
  j["auroc_reduction"] = "macro one-vs-rest";
  if (std::isnan(report.macro_auroc)) {
    j["macro_auroc"] = nullptr;
  } else {
    j["macro_auroc"] = report.macro_auroc;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (int a = 0; a < kNumClasses; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < kNumClasses; ++p) {
      row.push_back(
          report.confusion.counts[static_cast<size_t>(a)][static_cast<size_t>(p)]);
    }
    rows.push_back(row);
  }
  j["confusion"] = rows;
  const auto& names = label_names(report.taxonomy);
  nlohmann::json per_class = nlohmann::json::array();
  for (int c = 0; c < kNumClasses; ++c) {
    const ClassCounts cc = report.confusion.class_counts(c);
    nlohmann::json entry;
    entry["label"] = names[static_cast<size_t>(c)];
    entry["tp"] = cc.tp;
    entry["fp"] = cc.fp;
    entry["fn"] = cc.fn;
    entry["tn"] = cc.tn;
    const auto& curve = report.roc[static_cast<size_t>(c)];
    if (curve.has_value()) {
      entry["auroc"] = curve->auc;
    } else {
      entry["auroc"] = nullptr;
    }
    per_class.push_back(entry);
  }
  j["per_class"] = per_class;
  nlohmann::json undefined = nlohmann::json::array();
  for (int c : report.undefined_classes) {
    undefined.push_back(names[static_cast<size_t>(c)]);
  }
  j["undefined_classes"] = undefined;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

void save_roc_points_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write roc points: " + path);
  const auto& names = label_names(report.taxonomy);
  out << "#taxonomy=" << taxonomy_name(report.taxonomy) << "\n";
  out << "class,threshold,fpr,tpr\n";
  for (int c = 0; c < kNumClasses; ++c) {
    const auto& curve = report.roc[static_cast<size_t>(c)];
    if (!curve.has_value()) continue;
    for (size_t k = 0; k < curve->thresholds.size(); ++k) {
      out << names[static_cast<size_t>(c)] << ","
          << format_score(curve->thresholds[k]) << ","
          << format_score(curve->fpr[k]) << "," << format_score(curve->tpr[k])
          << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_confusion_csv(const ConfusionMatrix& cm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write confusion matrix: " + path);
  const auto& names = label_names(cm.taxonomy);
  out << "#taxonomy=" << taxonomy_name(cm.taxonomy) << "\n";
  out << "actual";
  for (const auto& name : names) out << "," << name;
  out << "\n";
  for (int a = 0; a < kNumClasses; ++a) {
    out << names[static_cast<size_t>(a)];
    for (int p = 0; p < kNumClasses; ++p) {
      out << ","
          << cm.counts[static_cast<size_t>(a)][static_cast<size_t>(p)];
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<RocCurve> load_roc_points_csv(const std::string& path,
                                          Taxonomy taxonomy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open roc points: " + path);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  const auto& names = label_names(taxonomy);
  std::vector<RocCurve> curves;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = path + ":" + std::to_string(line_no);
    auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() != 4 || fields[0] != "class") {
        throw ParseError(where + ": expected header class,threshold,fpr,tpr");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(where + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    }
    int cls = -1;
    for (int c = 0; c < kNumClasses; ++c) {
      if (fields[0] == names[static_cast<size_t>(c)]) cls = c;
    }
    if (cls < 0) throw ParseError(where + ": unknown class \"" + fields[0] + "\"");
    if (curves.empty() || curves.back().class_index != cls) {
      RocCurve curve;
      curve.class_index = cls;
      curves.push_back(curve);
    }
    RocCurve& curve = curves.back();
    curve.thresholds.push_back(parse_number(fields[1], where));
    curve.fpr.push_back(parse_number(fields[2], where));
    curve.tpr.push_back(parse_number(fields[3], where));
  }
  if (!header_seen) throw ParseError(path + ": missing header row");
  for (auto& curve : curves) {
    double auc = 0.0;
    for (size_t k = 1; k < curve.fpr.size(); ++k) {
      auc += (curve.fpr[k] - curve.fpr[k - 1]) *
             (curve.tpr[k] + curve.tpr[k - 1]) * 0.5;
    }
    curve.auc = auc;
  }
  return curves;
}

ConfusionMatrix load_confusion_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open confusion matrix: " + path);
  std::string taxonomy_str;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] != '#') break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    if (line.substr(1, eq - 1) == "taxonomy") taxonomy_str = line.substr(eq + 1);
  }
  if (taxonomy_str.empty()) {
    throw ParseError(path + ": missing #taxonomy= header");
  }
  ConfusionMatrix cm;
  cm.taxonomy = parse_taxonomy(taxonomy_str);
  const auto& names = label_names(cm.taxonomy);

  auto header = split_csv_line(line);
  if (header.size() != static_cast<size_t>(kNumClasses + 1) ||
      header[0] != "actual") {
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": expected header row starting with \"actual\"");
  }
  for (int p = 0; p < kNumClasses; ++p) {
    if (header[static_cast<size_t>(p + 1)] != names[static_cast<size_t>(p)]) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": header label mismatch");
    }
  }
  for (int a = 0; a < kNumClasses; ++a) {
    if (!std::getline(in, line)) {
      throw ParseError(path + ": expected " + std::to_string(kNumClasses) +
                       " count rows, got " + std::to_string(a));
    }
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no);
    auto fields = split_csv_line(line);
    if (fields.size() != static_cast<size_t>(kNumClasses + 1) ||
        fields[0] != names[static_cast<size_t>(a)]) {
      throw ParseError(where + ": expected row for \"" +
                       names[static_cast<size_t>(a)] + "\"");
    }
    for (int p = 0; p < kNumClasses; ++p) {
      const double v =
          parse_number(fields[static_cast<size_t>(p + 1)], where);
      if (v < 0 || v != std::floor(v)) {
        throw ParseError(where + ": counts must be nonnegative integers");
      }
      cm.counts[static_cast<size_t>(a)][static_cast<size_t>(p)] =
          static_cast<long long>(v);
      cm.total += static_cast<long long>(v);
    }
  }
  return cm;
}

void save_comparison_csv(const ComparisonReport& report,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write comparison: " + path);
  out << "#taxonomy=" << taxonomy_name(report.taxonomy) << "\n";
  out << "#n_val=" << report.n_val << "\n";
  out << "#n_test=" << report.n_test << "\n";
  out << "#auroc=macro one-vs-rest on the test split\n";
  out << "#winner_val_accuracy=" << report.winner_val_accuracy << "\n";
  out << "#winner_test_accuracy=" << report.winner_test_accuracy << "\n";
  out << "#winner_macro_auroc=" << report.winner_macro_auroc << "\n";
  out << "#fused_at_least_unimodal="
      << (report.fused_at_least_unimodal ? "true" : "false") << "\n";
  out << "modality,val_accuracy_pct,test_accuracy_pct,macro_auroc\n";
  for (const auto& e : report.entries) {
    out << modality_name(e.modality) << "," << format_pct(e.val_accuracy)
        << "," << format_pct(e.test_accuracy) << ","
        << (std::isnan(e.macro_auroc) ? std::string("nan")
                                      : format_score(e.macro_auroc))
        << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_comparison_json(const ComparisonReport& report,
                          const std::string& path) {
  nlohmann::json j;
  j["taxonomy"] = taxonomy_name(report.taxonomy);
  j["n_val"] = report.n_val;
  j["n_test"] = report.n_test;
  j["auroc_reduction"] = "macro one-vs-rest on the test split";
  j["winner_val_accuracy"] = report.winner_val_accuracy;
  j["winner_test_accuracy"] = report.winner_test_accuracy;
  j["winner_macro_auroc"] = report.winner_macro_auroc;
  j["fused_at_least_unimodal"] = report.fused_at_least_unimodal;
  const auto& names = label_names(report.taxonomy);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json entry;
    entry["modality"] = modality_name(e.modality);
    entry["val_accuracy"] = e.val_accuracy;
    entry["test_accuracy"] = e.test_accuracy;
    if (std::isnan(e.macro_auroc)) {
      entry["macro_auroc"] = nullptr;
    } else {
      entry["macro_auroc"] = e.macro_auroc;
    }
    nlohmann::json per_class = nlohmann::json::array();
    for (int c = 0; c < kNumClasses; ++c) {
      const ClassCounts& cc = e.per_class[static_cast<size_t>(c)];
      nlohmann::json row;
      row["label"] = names[static_cast<size_t>(c)];
      row["tp"] = cc.tp;
      row["fp"] = cc.fp;
      row["fn"] = cc.fn;
      row["tn"] = cc.tn;
      per_class.push_back(row);
    }
    entry["per_class"] = per_class;
    entries.push_back(entry);
  }
  j["modalities"] = entries;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write comparison: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace metrics
}  // namespace emokit
