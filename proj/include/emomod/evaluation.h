// Copyright 2026 The emomod Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMOMOD_EVALUATION_H_
#define EMOMOD_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emomod/corpus.h"
#include "emomod/scope_label.h"
#include "emomod/types.h"

namespace emomod {

// Square count matrix, rows = gold class, columns = predicted class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> class_names);

  // Six-class matrix in canonical emotion order.
  static ConfusionMatrix ForEmotions();

  void Add(std::size_t gold, std::size_t predicted, std::int64_t count = 1);
  void Add(Emotion gold, Emotion predicted) { Add(Index(gold), Index(predicted)); }

  std::int64_t at(std::size_t gold, std::size_t predicted) const {
    return counts_[gold * names_.size() + predicted];
  }

  std::size_t num_classes() const { return names_.size(); }
  const std::vector<std::string>& class_names() const { return names_; }
  std::int64_t total() const;

  // Element-wise sum. Throws Error on a class schema mismatch.
  void Merge(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::int64_t> counts_;
};

// Throws InputError when lengths differ or the input is empty.
ConfusionMatrix Confusion(std::span<const Emotion> golds,
                          std::span<const Emotion> preds);

// Metrics are percentages in [0, 100].
struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;    // gold count
  std::int64_t predicted = 0;  // predicted count
};

struct EvalReport {
  std::vector<ClassMetrics> classes;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::int64_t size = 0;       // evaluated items
  std::string subset = "all";
  bool empty_subset = false;
};

// Harmonic mean, 0 when p + r == 0.
double F1Score(double precision, double recall);

// Unweighted arithmetic mean.
double MacroMean(std::span<const double> values);

// Binary metrics from counts; P or R is 0 when its denominator is 0.
ClassMetrics MetricsFromCounts(std::string name, std::int64_t tp,
                               std::int64_t fp, std::int64_t fn);

// Fills the macro fields as unweighted means over `classes`.
EvalReport ReportFromClasses(std::vector<ClassMetrics> classes,
                             std::int64_t size, std::string subset = "all");

EvalReport Report(const ConfusionMatrix& cm, std::string subset = "all");

// Restricts evaluation to documents whose scope holds at least one token of
// `kind`. All spans are aligned with `docs`.
EvalReport SubsetEval(const std::vector<Document>& docs,
                      const std::vector<ScopeLabel>& scopes,
                      std::span<const Emotion> golds,
                      std::span<const Emotion> preds, ModifierKind kind);

struct MetricDelta {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ReportDelta {
  std::vector<MetricDelta> classes;
  MetricDelta macro;
};

// b - a per class and macro. Throws InputError on a class schema mismatch.
ReportDelta CompareReports(const EvalReport& a, const EvalReport& b);

// Text tables, one decimal.
std::string RenderReport(const EvalReport& report);
std::string RenderComparison(const EvalReport& without_mod,
                             const EvalReport& with_mod,
                             std::string_view without_title = "w/o mod. det.",
                             std::string_view with_title = "w/ mod. det.");
// Side-by-side P/R/F1 groups sharing one class column.
std::string RenderSideBySide(const std::vector<std::string>& titles,
                             const std::vector<EvalReport>& reports);
std::string RenderDelta(const ReportDelta& delta);

std::string ReportToJson(const EvalReport& report);
std::string DeltaToJson(const ReportDelta& delta);

}  // namespace emomod

#endif  // EMOMOD_EVALUATION_H_
