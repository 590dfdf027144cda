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

#ifndef EMOMOD_LEXICONS_H_
#define EMOMOD_LEXICONS_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emomod/corpus.h"
#include "emomod/types.h"

namespace emomod {

// Normalized term -> modifier kind. A term carries exactly one kind; adding
// a term twice keeps the higher-priority kind.
class CueLexicon {
 public:
  CueLexicon() = default;

  void Add(std::string_view term, ModifierKind kind);

  std::optional<ModifierKind> Lookup(std::string_view term) const;
  bool Contains(std::string_view term) const { return Lookup(term).has_value(); }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::size_t CountOf(ModifierKind kind) const;

  // Terms of one kind in lexicographic order.
  std::vector<std::string> TermsOf(ModifierKind kind) const;

  const std::map<std::string, ModifierKind, std::less<>>& entries() const {
    return terms_;
  }

 private:
  std::map<std::string, ModifierKind, std::less<>> terms_;
};

// One term per line, '#' starts a comment, terms lowercased.
std::vector<std::string> ParseTermList(std::string_view contents);
std::vector<std::string> LoadTermList(const std::string& path);

// Reads `negation.txt`, `amplifier.txt` and `downtoner.txt` from a directory.
CueLexicon LoadCueLexiconDir(const std::string& dir);

// Writes the three per-kind term lists into `dir`.
void WriteCueLexiconDir(const CueLexicon& lexicon, const std::string& dir);

struct UsageOccurrence {
  std::string doc_id;
  bool used_as_modifier = false;
};

// Manual judgments of whether a candidate term acts as a modifier.
struct UsageSample {
  std::string term;
  std::vector<UsageOccurrence> occurrences;
};

// Fraction of occurrences used as a modifier. Throws InputError when empty.
double ComputeCueRatio(const UsageSample& sample);

// TSV `term<TAB>doc_id<TAB>0|1`, grouped by term.
std::map<std::string, UsageSample, std::less<>> ParseUsageSamples(
    std::string_view contents, std::string_view source_name = "<input>");
std::map<std::string, UsageSample, std::less<>> LoadUsageSamples(
    const std::string& path);

struct CueCandidate {
  std::string term;
  ModifierKind kind = ModifierKind::kNegation;
  bool trusted = false;  // accepted without a usage sample
};

// TSV `term<TAB>kind[<TAB>trusted]`; kind is a full name or abbreviation and
// the optional third column is 0 or 1.
std::vector<CueCandidate> ParseCueCandidates(
    std::string_view contents, std::string_view source_name = "<input>");
std::vector<CueCandidate> LoadCueCandidates(const std::string& path);

inline constexpr double kDefaultCueThreshold = 0.5;

// Keeps candidates whose modifier ratio is strictly above `threshold`, plus
// trusted candidates. Throws InputError for an untrusted candidate without a
// sample, or a threshold outside [0, 1].
CueLexicon FilterCues(
    const std::vector<CueCandidate>& candidates,
    const std::map<std::string, UsageSample, std::less<>>& samples,
    double threshold = kDefaultCueThreshold);

// Term -> prior emotions, restricted to the six basic emotions.
class EmotionLexicon {
 public:
  EmotionLexicon() = default;

  void Add(std::string_view term, Emotion emotion);

  // Prior emotions of the term in canonical order; empty when unknown.
  const std::vector<Emotion>& Lookup(std::string_view term) const;
  bool Contains(std::string_view term) const {
    return entries_.find(term) != entries_.end();
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::map<std::string, std::vector<Emotion>, std::less<>>& entries()
      const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<Emotion>, std::less<>> entries_;
};

// NRC association TSV `term<TAB>emotion<TAB>0|1`. Rows with flag 0 or an
// emotion outside the six are dropped.
EmotionLexicon ParseEmotionLexicon(std::string_view contents,
                                   std::string_view source_name = "<input>");
EmotionLexicon LoadEmotionLexicon(const std::string& path);

// True when the document holds at least one emotion word and one cue.
bool HasEmotionAndCue(const Document& doc, const EmotionLexicon& emotions,
                      const CueLexicon& cues);

}  // namespace emomod

#endif  // EMOMOD_LEXICONS_H_
