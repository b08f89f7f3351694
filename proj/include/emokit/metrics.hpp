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

// Classifier evaluation from first principles: confusion matrices,
// one-vs-rest ROC/AUROC with exact tie handling, and the cross-modality
// comparison report.

#ifndef EMOKIT_METRICS_HPP_
#define EMOKIT_METRICS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"

namespace emokit {
namespace metrics {

struct ClassCounts {
  long long tp = 0, fp = 0, fn = 0, tn = 0;
};

struct ConfusionMatrix {
  // counts[actual][predicted]
  std::array<std::array<long long, kNumClasses>, kNumClasses> counts{};
  Taxonomy taxonomy = Taxonomy::youtube;
  long long total = 0;

  double accuracy() const;
  ClassCounts class_counts(int cls) const;
};

// counts[a][p] = number of items with gold a predicted as p.
ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& gold, Taxonomy taxonomy);

struct RocCurve {
  int class_index = 0;
  // Points from (0,0) to (1,1); thresholds descend, starting at +inf.
  // Tied scores collapse into a single step so the trapezoidal area
  // equals the Mann-Whitney statistic exactly.
  std::vector<double> thresholds;
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0.0;
};

// Needs at least one positive and one negative; otherwise the AUC is
// undefined and a NumericError is thrown.
RocCurve roc_auc(const Vector& scores, const std::vector<bool>& positive);

struct EvalReport {
  Split split = Split::test;
  Taxonomy taxonomy = Taxonomy::youtube;
  int n = 0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
  // One-vs-rest per class; nullopt where the split has no positives or
  // no negatives for that class.
  std::array<std::optional<RocCurve>, kNumClasses> roc;
  std::vector<int> undefined_classes;
  // Unweighted mean over classes with defined AUC; NaN if none.
  double macro_auroc = 0.0;
};

// Predictions are per-column argmax (ties to the lowest class index).
EvalReport evaluate(const ScoreMatrix& scores, const std::vector<int>& gold,
                    Split split);

struct ComparisonEntry {
  Modality modality = Modality::text;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  double macro_auroc = 0.0;  // from the test split
  std::array<ClassCounts, kNumClasses> per_class{};  // from the test split
};

struct ComparisonReport {
  // Canonical order text, audio, fused regardless of input order.
  std::vector<ComparisonEntry> entries;
  std::string winner_val_accuracy;   // modality name or "tie"
  std::string winner_test_accuracy;
  std::string winner_macro_auroc;
  bool fused_at_least_unimodal = false;  // on test accuracy
  int n_val = 0;
  int n_test = 0;
  Taxonomy taxonomy = Taxonomy::youtube;
};

struct ModalityEval {
  Modality modality = Modality::text;
  EvalReport validation;
  EvalReport test;
};

// Expects exactly one evaluation pair per modality (text, audio,
// fused), all over the same splits.
ComparisonReport compare_modalities(const std::vector<ModalityEval>& evals);

// metric,value rows; percentages carry one decimal.
void save_eval_csv(const EvalReport& report, const std::string& path);
void save_eval_json(const EvalReport& report, const std::string& path);

// Plot data: class,threshold,fpr,tpr rows for every defined curve.
void save_roc_points_csv(const EvalReport& report, const std::string& path);
// Heatmap data: actual,<label...> header then one row of counts per class.
void save_confusion_csv(const ConfusionMatrix& cm, const std::string& path);

// Loaders for the plot command.
std::vector<RocCurve> load_roc_points_csv(const std::string& path,
                                          Taxonomy taxonomy);
ConfusionMatrix load_confusion_csv(const std::string& path);

void save_comparison_csv(const ComparisonReport& report,
                         const std::string& path);
void save_comparison_json(const ComparisonReport& report,
                          const std::string& path);

}  // namespace metrics
}  // namespace emokit

#endif  // EMOKIT_METRICS_HPP_
