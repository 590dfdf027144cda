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

#include "emomod/lexical_model.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "emomod/rng.h"
#include "emomod/text_util.h"

namespace emomod {

using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, kNumModifications> kModNames = {
    "no_mod", "neg", "amp", "down"};

constexpr std::size_t kCells = kNumEmotions * kNumEmotions;

// Score of one predicted emotion. Score() and the hill climber's incremental
// updates both go through here so they agree bit for bit.
double ScoreComponent(const WeightTensor& t, const CountVectors& x,
                      std::size_t j) {
  double s = 0.0;
  for (std::size_t m = 0; m < kNumModifications; ++m) {
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      const std::int64_t c = x.counts[m][i];
      if (c != 0) s += t.slices[m][i][j] * static_cast<double>(c);
    }
  }
  return s;
}

using Confusion6 = std::array<std::array<std::int64_t, kNumEmotions>, kNumEmotions>;

double MacroF1FromConfusion(const Confusion6& cm) {
  double sum = 0.0;
  for (std::size_t k = 0; k < kNumEmotions; ++k) {
    std::int64_t row = 0;
    std::int64_t col = 0;
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      row += cm[k][j];
      col += cm[j][k];
    }
    const auto tp = static_cast<double>(cm[k][k]);
    const double p = col > 0 ? tp / static_cast<double>(col) : 0.0;
    const double r = row > 0 ? tp / static_cast<double>(row) : 0.0;
    sum += p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  return sum / static_cast<double>(kNumEmotions);
}

// Incrementally maintained predictions and confusion counts for the hill
// climber. Only examples with a nonzero count in the perturbed row change.
class ObjectiveState {
 public:
  ObjectiveState(std::span<const LabeledCounts> data, const WeightTensor& t)
      : data_(data), scores_(data.size()), preds_(data.size()) {
    for (std::size_t n = 0; n < data_.size(); ++n) {
      for (std::size_t m = 0; m < kNumModifications; ++m) {
        for (std::size_t i = 0; i < kNumEmotions; ++i) {
          if (data_[n].x.counts[m][i] != 0) rows_[m][i].push_back(n);
        }
      }
    }
    Reset(t);
  }

  void Reset(const WeightTensor& t) {
    cm_ = {};
    for (std::size_t n = 0; n < data_.size(); ++n) {
      scores_[n] = Score(t, data_[n].x);
      preds_[n] = Index(ArgmaxEmotion(scores_[n]));
      ++cm_[Index(data_[n].label)][preds_[n]];
    }
    objective_ = MacroF1FromConfusion(cm_);
  }

  double objective() const { return objective_; }

  // Applies the change of cell (m, i, j), already written into `t`, and
  // returns the new objective. Undo() restores the previous state.
  double Update(const WeightTensor& t, std::size_t m, std::size_t i,
                std::size_t j) {
    saved_.clear();
    saved_cm_ = cm_;
    saved_objective_ = objective_;
    for (std::size_t n : rows_[m][i]) {
      saved_.push_back({n, scores_[n][j], preds_[n]});
      scores_[n][j] = ScoreComponent(t, data_[n].x, j);
      const std::size_t pred = Index(ArgmaxEmotion(scores_[n]));
      if (pred != preds_[n]) {
        const std::size_t gold = Index(data_[n].label);
        --cm_[gold][preds_[n]];
        ++cm_[gold][pred];
        preds_[n] = pred;
      }
    }
    last_j_ = j;
    objective_ = MacroF1FromConfusion(cm_);
    return objective_;
  }

  void Undo() {
    for (const Saved& s : saved_) {
      scores_[s.n][last_j_] = s.score;
      preds_[s.n] = s.pred;
    }
    cm_ = saved_cm_;
    objective_ = saved_objective_;
  }

 private:
  struct Saved {
    std::size_t n;
    double score;
    std::size_t pred;
  };

  std::span<const LabeledCounts> data_;
  std::array<std::array<std::vector<std::size_t>, kNumEmotions>,
             kNumModifications>
      rows_;
  std::vector<EmotionScores> scores_;
  std::vector<std::size_t> preds_;
  Confusion6 cm_{};
  double objective_ = 0.0;

  std::vector<Saved> saved_;
  Confusion6 saved_cm_{};
  double saved_objective_ = 0.0;
  std::size_t last_j_ = 0;
};

}  // namespace

std::string_view ModificationName(Modification m) {
  return kModNames[Index(m)];
}

std::optional<Modification> ParseModification(std::string_view name) {
  const std::string lower = AsciiLower(Trim(name));
  for (std::size_t m = 0; m < kNumModifications; ++m) {
    if (lower == kModNames[m]) return static_cast<Modification>(m);
  }
  if (lower == "no-mod" || lower == "none") return Modification::kNoMod;
  if (const auto kind = ParseModifierKind(lower)) return ModificationOf(kind);
  return std::nullopt;
}

Modification ModificationOf(const std::optional<ModifierKind>& kind) {
  if (!kind) return Modification::kNoMod;
  switch (*kind) {
    case ModifierKind::kNegation:
      return Modification::kNegation;
    case ModifierKind::kAmplifier:
      return Modification::kAmplifier;
    case ModifierKind::kDowntoner:
      return Modification::kDowntoner;
  }
  return Modification::kNoMod;
}

WeightTensor WeightTensor::Identity() {
  WeightTensor t;
  for (auto& slice : t.slices) {
    for (std::size_t i = 0; i < kNumEmotions; ++i) slice[i][i] = 1.0;
  }
  return t;
}

bool WeightTensor::AllFinite() const {
  for (const auto& slice : slices) {
    for (const auto& row : slice) {
      for (double w : row) {
        if (!std::isfinite(w)) return false;
      }
    }
  }
  return true;
}

std::int64_t CountVectors::Total() const {
  std::int64_t total = 0;
  for (const auto& v : counts) {
    for (std::int64_t c : v) total += c;
  }
  return total;
}

CountVectors& CountVectors::operator+=(const CountVectors& other) {
  for (std::size_t m = 0; m < kNumModifications; ++m) {
    for (std::size_t i = 0; i < kNumEmotions; ++i) {
      counts[m][i] += other.counts[m][i];
    }
  }
  return *this;
}

CountVectors CountEmotionWords(const Document& doc, const ScopeLabel& scope,
                               const EmotionLexicon& emotions) {
  if (scope.size() != doc.size()) {
    throw InputError("scope does not match document '" + doc.id() + "'");
  }
  CountVectors x;
  for (std::size_t pos = 0; pos < doc.size(); ++pos) {
    const Modification m = ModificationOf(scope.at(pos));
    for (Emotion e : emotions.Lookup(doc.token(pos).normalized)) {
      ++x.at(m, e);
    }
  }
  return x;
}

EmotionScores Score(const WeightTensor& t, const CountVectors& x) {
  EmotionScores e{};
  for (std::size_t j = 0; j < kNumEmotions; ++j) e[j] = ScoreComponent(t, x, j);
  return e;
}

Emotion ArgmaxEmotion(const EmotionScores& scores) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < kNumEmotions; ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return static_cast<Emotion>(best);
}

Emotion Predict(const WeightTensor& t, const CountVectors& x) {
  return ArgmaxEmotion(Score(t, x));
}

double MacroF1(const WeightTensor& t, std::span<const LabeledCounts> data) {
  Confusion6 cm{};
  for (const LabeledCounts& d : data) {
    ++cm[Index(d.label)][Index(Predict(t, d.x))];
  }
  return MacroF1FromConfusion(cm);
}

HillClimbResult HillClimb(std::span<const LabeledCounts> train,
                          const HillClimbConfig& config) {
  if (train.empty()) throw InputError("hill climbing needs training data");
  if (config.restarts < 1 || config.patience < 1 || config.max_epochs < 1 ||
      config.schedule.empty()) {
    throw InputError(
        "hill climbing needs restarts, patience and max_epochs >= 1 and a "
        "non-empty slice schedule");
  }

  HillClimbResult result;
  std::set<Emotion> present;
  for (const LabeledCounts& d : train) present.insert(d.label);
  for (Emotion e : kAllEmotions) {
    if (!present.contains(e)) {
      result.warnings.push_back("no training example labeled " +
                                std::string(EmotionName(e)));
    }
  }

  WeightTensor tensor;
  ObjectiveState state(train, tensor);
  result.objective = state.objective();

  for (std::size_t stage = 0; stage < config.schedule.size(); ++stage) {
    const Modification active = config.schedule[stage];
    const std::size_t m = Index(active);
    EmotionMatrix best_slice{};
    double best_objective = -1.0;

    for (int restart = 0; restart < config.restarts; ++restart) {
      Rng rng(DeriveSeed(config.seed, stage * 1000003ULL +
                                          static_cast<std::uint64_t>(restart)));
      for (auto& row : tensor.slices[m]) {
        for (double& w : row) w = rng.Normal();
      }
      state.Reset(tensor);

      RestartSummary summary;
      summary.slice = active;
      summary.restart = restart;
      summary.initial_objective = state.objective();

      double current = state.objective();
      int since = 0;
      int epoch = 0;
      while (epoch < config.max_epochs) {
        ++epoch;
        const std::size_t cell = static_cast<std::size_t>(rng.UniformInt(kCells));
        const std::size_t i = cell / kNumEmotions;
        const std::size_t j = cell % kNumEmotions;
        const double old = tensor.slices[m][i][j];
        tensor.slices[m][i][j] = old + rng.Normal();
        const double proposed = state.Update(tensor, m, i, j);
        const bool accepted = proposed > current;
        if (accepted) {
          current = proposed;
          since = 0;
        } else {
          tensor.slices[m][i][j] = old;
          state.Undo();
          ++since;
        }
        result.trace.push_back(
            {active, restart, epoch, proposed, current, accepted, since});
        if (since >= config.patience) {
          summary.stopped_by_patience = true;
          break;
        }
      }
      summary.epochs = epoch;
      summary.final_objective = current;
      result.total_epochs += epoch;
      result.restarts.push_back(summary);
      if (current > best_objective) {
        best_objective = current;
        best_slice = tensor.slices[m];
      }
    }
    tensor.slices[m] = best_slice;
    state.Reset(tensor);
    result.objective = state.objective();
  }
  result.tensor = tensor;
  return result;
}

std::string ExportMatrices(const WeightTensor& t) {
  std::string out = "slice\tprior";
  for (Emotion e : kAllEmotions) out += "\t" + std::string(EmotionName(e));
  for (Emotion e : kAllEmotions) {
    out += "\t" + std::string(EmotionName(e)) + "_exact";
  }
  out += "\n";
  for (Modification m : kAllModifications) {
    for (Emotion prior : kAllEmotions) {
      const auto& row = t.slice(m)[Index(prior)];
      out += std::string(ModificationName(m)) + "\t" +
             std::string(EmotionName(prior));
      for (double w : row) {
        char buf[32];
        const double r = RoundOneDecimal(w);
        std::snprintf(buf, sizeof(buf), "%.1f", r == 0.0 ? 0.0 : r);
        out += "\t";
        out += buf;
      }
      for (double w : row) out += "\t" + FormatExact(w);
      out += "\n";
    }
  }
  return out;
}

WeightTensor ImportMatrices(std::string_view tsv) {
  WeightTensor t;
  std::array<std::array<bool, kNumEmotions>, kNumModifications> seen{};
  const std::vector<std::string> lines = SplitOn(tsv, '\n');
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (Trim(lines[ln]).empty()) continue;
    const auto fail = [&](const std::string& what) {
      return InputError("heatmap line " + std::to_string(ln + 1) + ": " + what);
    };
    const std::vector<std::string> cols = SplitOn(lines[ln], '\t');
    if (cols.size() != 2 + 2 * kNumEmotions) throw fail("wrong column count");
    const auto m = ParseModification(cols[0]);
    const auto prior = ParseEmotion(cols[1]);
    if (!m || !prior) throw fail("unknown slice or emotion");
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      const std::string& cell = cols[2 + kNumEmotions + j];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw fail("bad number");
      t.slice(*m)[Index(*prior)][j] = v;
    }
    seen[Index(*m)][Index(*prior)] = true;
  }
  for (const auto& row : seen) {
    for (bool s : row) {
      if (!s) throw InputError("heatmap table is missing rows");
    }
  }
  return t;
}

std::string TensorToJson(const WeightTensor& t, const TensorMeta& meta) {
  json slices;
  for (Modification m : kAllModifications) {
    slices[std::string(ModificationName(m))] = t.slice(m);
  }
  std::vector<std::string> order;
  for (Emotion e : kAllEmotions) order.emplace_back(EmotionName(e));
  json j{{"slices", slices},
         {"emotion_order", order},
         {"meta",
          {{"seed", meta.seed},
           {"objective", meta.objective},
           {"epochs", meta.epochs}}}};
  return j.dump(2) + "\n";
}

WeightTensor TensorFromJson(std::string_view text, TensorMeta* meta) {
  try {
    const json j = json::parse(text);
    std::vector<std::string> order;
    for (Emotion e : kAllEmotions) order.emplace_back(EmotionName(e));
    if (j.contains("emotion_order") &&
        j["emotion_order"].get<std::vector<std::string>>() != order) {
      throw InputError("tensor file uses a different emotion order");
    }
    WeightTensor t;
    for (Modification m : kAllModifications) {
      t.slice(m) =
          j.at("slices").at(std::string(ModificationName(m))).get<EmotionMatrix>();
    }
    if (!t.AllFinite()) throw InputError("tensor holds non-finite weights");
    if (meta != nullptr && j.contains("meta")) {
      const json& mj = j["meta"];
      meta->seed = mj.value("seed", std::uint64_t{0});
      meta->objective = mj.value("objective", 0.0);
      meta->epochs = mj.value("epochs", std::int64_t{0});
    }
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad tensor file: ") + e.what());
  }
}

InspectionReport Inspect(const WeightTensor& t) {
  InspectionReport r;
  const EmotionMatrix& no_mod = t.slice(Modification::kNoMod);
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    bool dominant = true;
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      if (no_mod[i][j] > no_mod[i][i]) dominant = false;
    }
    if (dominant) ++r.no_mod_diagonal_rows;
  }
  r.no_mod_diagonal_fraction =
      static_cast<double>(r.no_mod_diagonal_rows) / kNumEmotions;

  const auto mean_abs = [](const EmotionMatrix& w) {
    double s = 0.0;
    for (const auto& row : w) {
      for (double v : row) s += std::abs(v);
    }
    return s / static_cast<double>(kCells);
  };
  r.mean_abs_negation = mean_abs(t.slice(Modification::kNegation));
  r.mean_abs_no_mod = mean_abs(no_mod);

  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    const double base = no_mod[i][i];
    if (std::abs(base) <= 1e-9) continue;
    r.amplifier_ratio[i] = t.slice(Modification::kAmplifier)[i][i] / base;
    r.downtoner_ratio[i] = t.slice(Modification::kDowntoner)[i][i] / base;
  }
  return r;
}

std::string InspectionToJson(const InspectionReport& r) {
  const auto ratios = [](const auto& values) {
    json out;
    for (Emotion e : kAllEmotions) {
      const auto& v = values[Index(e)];
      out[std::string(EmotionName(e))] =
          v ? json(*v) : json("undefined");
    }
    return out;
  };
  json j{{"no_mod_diagonal_dominance",
          {{"rows", r.no_mod_diagonal_rows},
           {"fraction", r.no_mod_diagonal_fraction}}},
         {"negation_strength",
          {{"mean_abs_neg", r.mean_abs_negation},
           {"mean_abs_no_mod", r.mean_abs_no_mod}}},
         {"amplifier_to_no_mod_diagonal", ratios(r.amplifier_ratio)},
         {"downtoner_to_no_mod_diagonal", ratios(r.downtoner_ratio)}};
  return j.dump(2) + "\n";
}

std::string RenderInspection(const InspectionReport& r) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "H1 no-mod diagonal is row max: %d/6\n"
                "H2 mean |W_neg| = %.3f vs mean |W_no_mod| = %.3f\n",
                r.no_mod_diagonal_rows, r.mean_abs_negation, r.mean_abs_no_mod);
  out += buf;
  out += "   emotion   amp/no_mod  down/no_mod\n";
  for (Emotion e : kAllEmotions) {
    const auto fmt = [](const std::optional<double>& v) {
      char b[32];
      if (!v) return std::string("undefined");
      std::snprintf(b, sizeof(b), "%.3f", *v);
      return std::string(b);
    };
    std::snprintf(buf, sizeof(buf), "%10s %12s %12s\n",
                  std::string(EmotionName(e)).c_str(),
                  fmt(r.amplifier_ratio[Index(e)]).c_str(),
                  fmt(r.downtoner_ratio[Index(e)]).c_str());
    out += buf;
  }
  out.insert(out.find("   emotion"), "H3/H4 diagonal ratios:\n");
  return out;
}

}  // namespace emomod
