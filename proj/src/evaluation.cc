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

#include "emomod/evaluation.h"

#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "emomod/text_util.h"

namespace emomod {

using json = nlohmann::json;

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> class_names)
    : names_(std::move(class_names)),
      counts_(names_.size() * names_.size(), 0) {
  if (names_.empty()) throw Error("confusion matrix needs at least one class");
}

ConfusionMatrix ConfusionMatrix::ForEmotions() {
  std::vector<std::string> names;
  for (Emotion e : kAllEmotions) names.emplace_back(EmotionName(e));
  return ConfusionMatrix(std::move(names));
}

void ConfusionMatrix::Add(std::size_t gold, std::size_t predicted,
                          std::int64_t count) {
  if (gold >= names_.size() || predicted >= names_.size()) {
    throw Error("confusion matrix class index out of range");
  }
  counts_[gold * names_.size() + predicted] += count;
}

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

void ConfusionMatrix::Merge(const ConfusionMatrix& other) {
  if (other.names_ != names_) throw Error("confusion matrix schema mismatch");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
}

ConfusionMatrix Confusion(std::span<const Emotion> golds,
                          std::span<const Emotion> preds) {
  if (golds.size() != preds.size()) {
    throw InputError("gold and predicted label lists differ in length (" +
                     std::to_string(golds.size()) + " vs " +
                     std::to_string(preds.size()) + ")");
  }
  if (golds.empty()) throw InputError("nothing to evaluate");
  ConfusionMatrix cm = ConfusionMatrix::ForEmotions();
  for (std::size_t i = 0; i < golds.size(); ++i) cm.Add(golds[i], preds[i]);
  return cm;
}

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

double MacroMean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

ClassMetrics MetricsFromCounts(std::string name, std::int64_t tp,
                               std::int64_t fp, std::int64_t fn) {
  ClassMetrics m;
  m.name = std::move(name);
  m.support = tp + fn;
  m.predicted = tp + fp;
  m.precision = m.predicted > 0 ? 100.0 * static_cast<double>(tp) /
                                      static_cast<double>(m.predicted)
                                : 0.0;
  m.recall = m.support > 0 ? 100.0 * static_cast<double>(tp) /
                                 static_cast<double>(m.support)
                           : 0.0;
  m.f1 = F1Score(m.precision, m.recall);
  return m;
}

EvalReport ReportFromClasses(std::vector<ClassMetrics> classes,
                             std::int64_t size, std::string subset) {
  EvalReport r;
  std::vector<double> p, rc, f;
  for (const ClassMetrics& c : classes) {
    p.push_back(c.precision);
    rc.push_back(c.recall);
    f.push_back(c.f1);
  }
  r.macro_precision = MacroMean(p);
  r.macro_recall = MacroMean(rc);
  r.macro_f1 = MacroMean(f);
  r.classes = std::move(classes);
  r.size = size;
  r.subset = std::move(subset);
  return r;
}

EvalReport Report(const ConfusionMatrix& cm, std::string subset) {
  const std::size_t n = cm.num_classes();
  std::vector<ClassMetrics> classes;
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t row = 0;
    std::int64_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += cm.at(k, j);
      col += cm.at(j, k);
    }
    const std::int64_t tp = cm.at(k, k);
    classes.push_back(
        MetricsFromCounts(cm.class_names()[k], tp, col - tp, row - tp));
  }
  return ReportFromClasses(std::move(classes), cm.total(), std::move(subset));
}

EvalReport SubsetEval(const std::vector<Document>& docs,
                      const std::vector<ScopeLabel>& scopes,
                      std::span<const Emotion> golds,
                      std::span<const Emotion> preds, ModifierKind kind) {
  if (scopes.size() != docs.size() || golds.size() != docs.size() ||
      preds.size() != docs.size()) {
    throw InputError("subset evaluation inputs are not aligned");
  }
  ConfusionMatrix cm = ConfusionMatrix::ForEmotions();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (scopes[i].Contains(kind)) cm.Add(golds[i], preds[i]);
  }
  EvalReport r = Report(cm, std::string(ModifierKindName(kind)));
  r.empty_subset = r.size == 0;
  return r;
}

ReportDelta CompareReports(const EvalReport& a, const EvalReport& b) {
  if (a.classes.size() != b.classes.size()) {
    throw InputError("reports have different class schemas");
  }
  ReportDelta d;
  for (std::size_t k = 0; k < a.classes.size(); ++k) {
    if (a.classes[k].name != b.classes[k].name) {
      throw InputError("reports have different class schemas ('" +
                       a.classes[k].name + "' vs '" + b.classes[k].name +
                       "')");
    }
    d.classes.push_back({a.classes[k].name,
                         b.classes[k].precision - a.classes[k].precision,
                         b.classes[k].recall - a.classes[k].recall,
                         b.classes[k].f1 - a.classes[k].f1});
  }
  d.macro = {"Macro", b.macro_precision - a.macro_precision,
             b.macro_recall - a.macro_recall, b.macro_f1 - a.macro_f1};
  return d;
}

namespace {

std::string Fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", RoundOneDecimal(v));
  return buf;
}

std::string Signed1(double v) {
  const double r = RoundOneDecimal(v);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.1f", r == 0.0 ? 0.0 : r);
  return buf;
}

std::string Pad(std::string_view s, std::size_t width, bool right = true) {
  std::string out(s);
  if (out.size() >= width) return out;
  const std::string fill(width - out.size(), ' ');
  return right ? fill + out : out + fill;
}

std::string Triple(double p, double r, double f) {
  return Pad(Fixed1(p), 7) + Pad(Fixed1(r), 7) + Pad(Fixed1(f), 7);
}

json MetricsJson(const ClassMetrics& c) {
  return json{{"name", c.name},         {"precision", c.precision},
              {"recall", c.recall},     {"f1", c.f1},
              {"support", c.support},   {"predicted", c.predicted}};
}

}  // namespace

std::string RenderReport(const EvalReport& report) {
  return RenderSideBySide({report.subset}, {report});
}

std::string RenderSideBySide(const std::vector<std::string>& titles,
                             const std::vector<EvalReport>& reports) {
  if (titles.size() != reports.size() || reports.empty()) {
    throw Error("side-by-side rendering needs one title per report");
  }
  const EvalReport& first = reports.front();
  for (const EvalReport& r : reports) {
    if (r.classes.size() != first.classes.size()) {
      throw InputError("reports have different class schemas");
    }
  }
  std::string out = Pad("", 10, false) + Pad("", 9);
  for (const std::string& t : titles) out += "  " + Pad(t, 21, false);
  out += "\n" + Pad("class", 10, false) + Pad("size", 9);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += "  " + Pad("P", 7) + Pad("R", 7) + Pad("F1", 7);
  }
  out += "\n";
  for (std::size_t k = 0; k < first.classes.size(); ++k) {
    out += Pad(first.classes[k].name, 10, false) +
           Pad(std::to_string(first.classes[k].support), 9);
    for (const EvalReport& r : reports) {
      const ClassMetrics& c = r.classes[k];
      out += "  " + Triple(c.precision, c.recall, c.f1);
    }
    out += "\n";
  }
  out += Pad("Macro", 10, false) + Pad(std::to_string(first.size), 9);
  for (const EvalReport& r : reports) {
    out += "  " + Triple(r.macro_precision, r.macro_recall, r.macro_f1);
  }
  out += "\n";
  return out;
}

std::string RenderComparison(const EvalReport& without_mod,
                             const EvalReport& with_mod,
                             std::string_view without_title,
                             std::string_view with_title) {
  std::string out = "subset: " + with_mod.subset;
  if (with_mod.empty_subset) out += " (empty)";
  out += "\n";
  return out + RenderSideBySide({std::string(without_title),
                                 std::string(with_title)},
                                {without_mod, with_mod});
}

std::string RenderDelta(const ReportDelta& delta) {
  std::string out = Pad("class", 10, false) + Pad("dP", 7) + Pad("dR", 7) +
                    Pad("dF1", 7) + "\n";
  const auto row = [&out](const MetricDelta& d) {
    out += Pad(d.name, 10, false) + Pad(Signed1(d.precision), 7) +
           Pad(Signed1(d.recall), 7) + Pad(Signed1(d.f1), 7) + "\n";
  };
  for (const MetricDelta& d : delta.classes) row(d);
  row(delta.macro);
  return out;
}

std::string ReportToJson(const EvalReport& report) {
  json classes = json::array();
  for (const ClassMetrics& c : report.classes) classes.push_back(MetricsJson(c));
  json j{{"subset", report.subset},
         {"size", report.size},
         {"empty_subset", report.empty_subset},
         {"classes", classes},
         {"macro",
          {{"precision", report.macro_precision},
           {"recall", report.macro_recall},
           {"f1", report.macro_f1}}}};
  return j.dump(2) + "\n";
}

std::string DeltaToJson(const ReportDelta& delta) {
  const auto to_json = [](const MetricDelta& d) {
    return json{{"name", d.name},
                {"precision", d.precision},
                {"recall", d.recall},
                {"f1", d.f1}};
  };
  json classes = json::array();
  for (const MetricDelta& d : delta.classes) classes.push_back(to_json(d));
  return json{{"classes", classes}, {"macro", to_json(delta.macro)}}.dump(2) +
         "\n";
}

}  // namespace emomod
