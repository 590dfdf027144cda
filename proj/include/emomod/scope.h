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

#ifndef EMOMOD_SCOPE_H_
#define EMOMOD_SCOPE_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emomod/corpus.h"
#include "emomod/evaluation.h"
#include "emomod/lexicons.h"
#include "emomod/linear.h"
#include "emomod/scope_label.h"
#include "emomod/types.h"

namespace emomod {

inline constexpr int kDefaultNextN = 2;

// Tokens made only of . , ; : ! ? ( ) and em dashes.
bool IsScopePunctuation(std::string_view token);

// but, however, yet, although, though, nevertheless, whereas, still.
bool IsAdversative(std::string_view token);

// Tokens claimed by a single cue, before cross-cue resolution.
struct CueScope {
  std::size_t cue = 0;
  ModifierKind kind = ModifierKind::kNegation;
  std::vector<std::size_t> tokens;
};

// For every cue, the up-to-n following tokens of its sentence, cut before the
// first punctuation token or adversative conjunction. Cue tokens count toward
// n but are never claimed.
std::vector<CueScope> NextNCueScopes(const Document& doc, const CueLexicon& cues,
                                     int n);

// NextNCueScopes resolved per token by modifier priority. Throws InputError
// when n < 1.
ScopeLabel NextNScope(const Document& doc, const CueLexicon& cues,
                      int n = kDefaultNextN);

// Labels every head of a cue with the cue's kind, then spreads labels across
// `conj` edges in both directions unless the edge is adversative (the
// dependent conjunct has an adversative `cc` child, or the head conjunct has
// one between the two). Throws InputError on unparsed documents.
ScopeLabel DepTreeScope(const Document& doc, const CueLexicon& cues);

// Token-level features for one modifier kind. Distances are 1-based with 0
// meaning "no cue"; dependency distances search only downwards.
struct ScopeFeatures {
  std::string word;
  std::string pos;
  int right_dist = 0;
  int left_dist = 0;
  int dep_dist = 0;
  std::optional<std::string> dep1_pos;
  int dep1_dist = 0;
  std::optional<std::string> dep2_pos;
  int dep2_dist = 0;

  friend bool operator==(const ScopeFeatures&, const ScopeFeatures&) = default;
};

ScopeFeatures ExtractScopeFeatures(const Document& doc, std::size_t pos,
                                   const CueLexicon& cues, ModifierKind kind);

// "0".."4" or "5+".
std::string DistanceBucket(int distance);

// One-hot encoding: word, POS, parent POS tags and bucketed distances.
FeatureBag ScopeFeatureBag(const ScopeFeatures& f);

// Gold annotation: does the cue at `cue` modify the emotion word at
// `emotion_word` (document-level token positions)?
struct ScopePair {
  std::string doc_id;
  std::size_t cue = 0;
  std::size_t emotion_word = 0;
  ModifierKind kind = ModifierKind::kNegation;
  bool modifies = false;
};

// TSV `doc_id<TAB>cue_index<TAB>emo_index<TAB>kind<TAB>0|1`.
std::vector<ScopePair> ParseScopePairs(std::string_view contents,
                                       std::string_view source_name = "<input>");
std::vector<ScopePair> LoadScopePairs(const std::string& path);
std::string ScopePairsToTsv(const std::vector<ScopePair>& pairs);

// Trains the binary "is modified" model of one kind on the emotion-word side
// of the gold pairs. Throws InputError on empty input, pairs of another kind,
// unknown documents or out-of-range positions, and single-class data.
BinaryClassifier TrainScopeClassifier(const std::vector<ScopePair>& pairs,
                                      const std::vector<Document>& docs,
                                      const CueLexicon& cues, ModifierKind kind,
                                      const Hyperparameters& hyper);

using ScopeModels = std::array<std::optional<BinaryClassifier>, kNumModifierKinds>;

// Classifies emotion-lexicon tokens in sentences that contain a cue; models
// are consulted in priority order, only for kinds with a cue in the sentence.
// Throws InputError when a model is missing or the document is unparsed.
ScopeLabel ClassifierScope(const Document& doc, const CueLexicon& cues,
                           const ScopeModels& models,
                           const EmotionLexicon& emotions);

// Per-kind P/R/F1 against gold pairs: a pair is predicted positive when its
// emotion word carries the pair's kind. Classes are the three kinds.
EvalReport EvaluateScope(const std::map<std::string, ScopeLabel>& predicted,
                         const std::vector<ScopePair>& gold);

struct SweepPoint {
  int n = 0;
  EvalReport report;
};

// Evaluates next-n for every n in [n_min, n_max].
std::vector<SweepPoint> SweepNextN(const std::vector<Document>& docs,
                                   const CueLexicon& cues,
                                   const std::vector<ScopePair>& gold,
                                   int n_min, int n_max);

std::string RenderSweep(const std::vector<SweepPoint>& sweep);

// JSON lines {"id":..., "n_tokens":..., "labels":[[index,"kind"],...]}.
std::string ScopesToJsonl(const std::vector<Document>& docs,
                          const std::vector<ScopeLabel>& scopes);
std::map<std::string, ScopeLabel> ParseScopesJsonl(
    std::string_view contents, std::string_view source_name = "<input>");

}  // namespace emomod

#endif  // EMOMOD_SCOPE_H_
