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

#include "emomod/lexicons.h"

#include <algorithm>
#include <filesystem>

#include "emomod/text_util.h"

namespace emomod {

namespace {

InputError RowError(std::string_view source, std::size_t line,
                    const std::string& what) {
  return InputError(std::string(source) + ":" + std::to_string(line) + ": " +
                    what);
}

}  // namespace

void CueLexicon::Add(std::string_view term, ModifierKind kind) {
  const std::string key = AsciiLower(Trim(term));
  if (key.empty()) throw InputError("empty cue term");
  const auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, kind);
  } else if (HasPriority(kind, it->second)) {
    it->second = kind;
  }
}

std::optional<ModifierKind> CueLexicon::Lookup(std::string_view term) const {
  const auto it = terms_.find(term);
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

std::size_t CueLexicon::CountOf(ModifierKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(),
                    [kind](const auto& kv) { return kv.second == kind; }));
}

std::vector<std::string> CueLexicon::TermsOf(ModifierKind kind) const {
  std::vector<std::string> out;
  for (const auto& [term, k] : terms_) {
    if (k == kind) out.push_back(term);
  }
  return out;
}

std::vector<std::string> ParseTermList(std::string_view contents) {
  std::vector<std::string> terms;
  for (const std::string& raw : SplitOn(contents, '\n')) {
    std::string_view line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (!line.empty()) terms.push_back(AsciiLower(line));
  }
  return terms;
}

std::vector<std::string> LoadTermList(const std::string& path) {
  return ParseTermList(ReadFile(path));
}

CueLexicon LoadCueLexiconDir(const std::string& dir) {
  CueLexicon lexicon;
  for (ModifierKind kind : kAllModifierKinds) {
    const std::filesystem::path file =
        std::filesystem::path(dir) /
        (std::string(ModifierKindName(kind)) + ".txt");
    for (const std::string& term : LoadTermList(file.string())) {
      lexicon.Add(term, kind);
    }
  }
  return lexicon;
}

void WriteCueLexiconDir(const CueLexicon& lexicon, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (ModifierKind kind : kAllModifierKinds) {
    std::string body;
    for (const std::string& term : lexicon.TermsOf(kind)) body += term + "\n";
    WriteFile((std::filesystem::path(dir) /
               (std::string(ModifierKindName(kind)) + ".txt"))
                  .string(),
              body);
  }
}

double ComputeCueRatio(const UsageSample& sample) {
  if (sample.occurrences.empty()) {
    throw InputError("usage sample for '" + sample.term + "' is empty");
  }
  const auto used = std::count_if(
      sample.occurrences.begin(), sample.occurrences.end(),
      [](const UsageOccurrence& o) { return o.used_as_modifier; });
  return static_cast<double>(used) /
         static_cast<double>(sample.occurrences.size());
}

std::map<std::string, UsageSample, std::less<>> ParseUsageSamples(
    std::string_view contents, std::string_view source_name) {
  std::map<std::string, UsageSample, std::less<>> samples;
  const std::vector<std::string> lines = SplitOn(contents, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = Trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 3) {
      throw RowError(source_name, ln + 1, "expected term<TAB>doc_id<TAB>0|1");
    }
    const std::string flag(Trim(cols[2]));
    if (flag != "0" && flag != "1") {
      throw RowError(source_name, ln + 1, "flag must be 0 or 1");
    }
    const std::string term = AsciiLower(Trim(cols[0]));
    if (term.empty()) throw RowError(source_name, ln + 1, "empty term");
    UsageSample& sample = samples[term];
    sample.term = term;
    sample.occurrences.push_back({std::string(Trim(cols[1])), flag == "1"});
  }
  return samples;
}

std::map<std::string, UsageSample, std::less<>> LoadUsageSamples(
    const std::string& path) {
  return ParseUsageSamples(ReadFile(path), path);
}

std::vector<CueCandidate> ParseCueCandidates(std::string_view contents,
                                             std::string_view source_name) {
  std::vector<CueCandidate> out;
  const std::vector<std::string> lines = SplitOn(contents, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = Trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    const auto fail = [&](const std::string& what) {
      return InputError(std::string(source_name) + ":" +
                        std::to_string(ln + 1) + ": " + what);
    };
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 2 && cols.size() != 3) {
      throw fail("expected term, kind and optional trusted flag");
    }
    const auto kind = ParseModifierKind(Trim(cols[1]));
    if (!kind) throw fail("unknown modifier kind '" + cols[1] + "'");
    bool trusted = false;
    if (cols.size() == 3) {
      const std::string_view flag = Trim(cols[2]);
      if (flag != "0" && flag != "1") throw fail("trusted flag must be 0 or 1");
      trusted = flag == "1";
    }
    out.push_back({AsciiLower(Trim(cols[0])), *kind, trusted});
  }
  return out;
}

std::vector<CueCandidate> LoadCueCandidates(const std::string& path) {
  return ParseCueCandidates(ReadFile(path), path);
}

CueLexicon FilterCues(
    const std::vector<CueCandidate>& candidates,
    const std::map<std::string, UsageSample, std::less<>>& samples,
    double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InputError("cue threshold must lie in [0, 1]");
  }
  CueLexicon lexicon;
  for (const CueCandidate& c : candidates) {
    if (c.trusted) {
      lexicon.Add(c.term, c.kind);
      continue;
    }
    const auto it = samples.find(AsciiLower(Trim(c.term)));
    if (it == samples.end()) {
      throw InputError("no usage sample for candidate '" + c.term + "'");
    }
    if (ComputeCueRatio(it->second) > threshold) lexicon.Add(c.term, c.kind);
  }
  return lexicon;
}

void EmotionLexicon::Add(std::string_view term, Emotion emotion) {
  const std::string key = AsciiLower(Trim(term));
  if (key.empty()) throw InputError("empty emotion term");
  std::vector<Emotion>& set = entries_[key];
  const auto pos = std::lower_bound(set.begin(), set.end(), emotion);
  if (pos == set.end() || *pos != emotion) set.insert(pos, emotion);
}

const std::vector<Emotion>& EmotionLexicon::Lookup(
    std::string_view term) const {
  static const std::vector<Emotion> kNone;
  const auto it = entries_.find(term);
  return it == entries_.end() ? kNone : it->second;
}

EmotionLexicon ParseEmotionLexicon(std::string_view contents,
                                   std::string_view source_name) {
  EmotionLexicon lexicon;
  const std::vector<std::string> lines = SplitOn(contents, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = Trim(lines[ln]);
    if (line.empty()) continue;
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 3) {
      throw RowError(source_name, ln + 1,
                     "expected term<TAB>emotion<TAB>0|1");
    }
    const std::string flag(Trim(cols[2]));
    if (flag != "0" && flag != "1") {
      throw RowError(source_name, ln + 1, "flag must be 0 or 1");
    }
    if (Trim(cols[0]).empty()) {
      throw RowError(source_name, ln + 1, "empty term");
    }
    if (flag == "0") continue;
    if (const auto emotion = ParseEmotion(cols[1])) {
      lexicon.Add(cols[0], *emotion);
    }
  }
  return lexicon;
}

EmotionLexicon LoadEmotionLexicon(const std::string& path) {
  return ParseEmotionLexicon(ReadFile(path), path);
}

bool HasEmotionAndCue(const Document& doc, const EmotionLexicon& emotions,
                      const CueLexicon& cues) {
  bool emotion = false;
  bool cue = false;
  for (const Token& t : doc.tokens()) {
    emotion = emotion || emotions.Contains(t.normalized);
    cue = cue || cues.Contains(t.normalized);
    if (emotion && cue) return true;
  }
  return false;
}

}  // namespace emomod
