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

#ifndef EMOMOD_LEXICAL_MODEL_H_
#define EMOMOD_LEXICAL_MODEL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emomod/corpus.h"
#include "emomod/lexicons.h"
#include "emomod/scope_label.h"
#include "emomod/types.h"

namespace emomod {

// The four modification slices of the weighted emotion lexicon.
enum class Modification : int {
  kNoMod = 0,
  kNegation = 1,
  kAmplifier = 2,
  kDowntoner = 3,
};

inline constexpr std::size_t kNumModifications = 4;

inline constexpr std::array<Modification, kNumModifications> kAllModifications =
    {Modification::kNoMod, Modification::kNegation, Modification::kAmplifier,
     Modification::kDowntoner};

inline constexpr std::size_t Index(Modification m) {
  return static_cast<std::size_t>(m);
}

// "no_mod", "neg", "amp", "down".
std::string_view ModificationName(Modification m);
std::optional<Modification> ParseModification(std::string_view name);
Modification ModificationOf(const std::optional<ModifierKind>& kind);

using EmotionMatrix = std::array<std::array<double, kNumEmotions>, kNumEmotions>;
using EmotionScores = std::array<double, kNumEmotions>;

// slices[m][i][j]: weight that a word of prior emotion i under modification m
// contributes to predicted emotion j.
struct WeightTensor {
  std::array<EmotionMatrix, kNumModifications> slices{};

  EmotionMatrix& slice(Modification m) { return slices[Index(m)]; }
  const EmotionMatrix& slice(Modification m) const { return slices[Index(m)]; }

  // Every slice the identity matrix.
  static WeightTensor Identity();

  bool AllFinite() const;

  friend bool operator==(const WeightTensor&, const WeightTensor&) = default;
};

// counts[m][i]: occurrences of words with prior emotion i under modification m.
struct CountVectors {
  std::array<std::array<std::int64_t, kNumEmotions>, kNumModifications> counts{};

  std::int64_t& at(Modification m, Emotion e) {
    return counts[Index(m)][Index(e)];
  }
  std::int64_t at(Modification m, Emotion e) const {
    return counts[Index(m)][Index(e)];
  }
  std::int64_t Total() const;

  CountVectors& operator+=(const CountVectors& other);
  friend CountVectors operator+(CountVectors a, const CountVectors& b) {
    return a += b;
  }
  friend bool operator==(const CountVectors&, const CountVectors&) = default;
};

// Each emotion-lexicon token adds one count per prior emotion of its entry,
// in the slice given by its scope label.
CountVectors CountEmotionWords(const Document& doc, const ScopeLabel& scope,
                               const EmotionLexicon& emotions);

// Sum over slices of W_m^T x_m.
EmotionScores Score(const WeightTensor& t, const CountVectors& x);

// Argmax with ties to the lowest canonical index.
Emotion ArgmaxEmotion(const EmotionScores& scores);
Emotion Predict(const WeightTensor& t, const CountVectors& x);

struct LabeledCounts {
  CountVectors x;
  Emotion label = Emotion::kJoy;
};

// Macro-F1 in [0, 1]; every one of the six classes enters the mean.
double MacroF1(const WeightTensor& t, std::span<const LabeledCounts> data);

struct HillClimbConfig {
  int restarts = 8;
  int patience = 500;      // consecutive rejections that end a restart
  int max_epochs = 5000;   // per restart
  std::uint64_t seed = 42;
  // Slices optimized one after another; later stages see earlier results
  // frozen and not-yet-optimized slices at zero.
  std::vector<Modification> schedule = {
      Modification::kNoMod, Modification::kNegation, Modification::kAmplifier,
      Modification::kDowntoner};
};

struct TraceEntry {
  Modification slice = Modification::kNoMod;
  int restart = 0;
  int epoch = 0;                // 1-based within the restart
  double proposed = 0.0;        // objective of the perturbed tensor
  double objective = 0.0;       // objective held after the step
  bool accepted = false;
  int since_improvement = 0;    // consecutive rejections so far
};

struct RestartSummary {
  Modification slice = Modification::kNoMod;
  int restart = 0;
  int epochs = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  bool stopped_by_patience = false;
};

struct HillClimbResult {
  WeightTensor tensor;
  double objective = 0.0;  // training macro-F1 of `tensor`
  std::int64_t total_epochs = 0;
  std::vector<TraceEntry> trace;
  std::vector<RestartSummary> restarts;
  std::vector<std::string> warnings;
};

// Random-restart hill climbing on training macro-F1. Per restart the active
// slice is drawn from N(0,1); each epoch adds N(0,1) noise to one uniformly
// chosen cell and keeps it only if the objective strictly improves. The best
// restart of each stage is frozen before the next stage. Deterministic in
// config.seed. Throws InputError on empty data or a bad config.
HillClimbResult HillClimb(std::span<const LabeledCounts> train,
                          const HillClimbConfig& config);

// Heatmap table: one row per (slice, prior emotion), one-decimal display
// columns followed by exact columns.
std::string ExportMatrices(const WeightTensor& t);
// Reads the exact columns back.
WeightTensor ImportMatrices(std::string_view tsv);

struct TensorMeta {
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::int64_t epochs = 0;
};

std::string TensorToJson(const WeightTensor& t, const TensorMeta& meta);
WeightTensor TensorFromJson(std::string_view json, TensorMeta* meta = nullptr);

// Summary statistics for reading modifier semantics off a tensor.
struct InspectionReport {
  // Rows of the no-mod slice whose diagonal entry is the row maximum.
  int no_mod_diagonal_rows = 0;
  double no_mod_diagonal_fraction = 0.0;
  double mean_abs_negation = 0.0;
  double mean_abs_no_mod = 0.0;
  // diag(W_amp) / diag(W_no_mod) and diag(W_down) / diag(W_no_mod) per
  // emotion; nullopt when the no-mod diagonal entry is ~0.
  std::array<std::optional<double>, kNumEmotions> amplifier_ratio;
  std::array<std::optional<double>, kNumEmotions> downtoner_ratio;
};

InspectionReport Inspect(const WeightTensor& t);
std::string InspectionToJson(const InspectionReport& r);
std::string RenderInspection(const InspectionReport& r);

}  // namespace emomod

#endif  // EMOMOD_LEXICAL_MODEL_H_
