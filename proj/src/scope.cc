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

#include "emomod/scope.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <deque>
#include <set>

#include <json.hpp>

#include "emomod/text_util.h"

namespace emomod {

using json = nlohmann::json;

bool IsScopePunctuation(std::string_view token) {
  static constexpr std::string_view kEmDash = "\xE2\x80\x94";
  static constexpr std::string_view kChars = ".,;:!?()";
  if (token.empty()) return false;
  std::size_t i = 0;
  while (i < token.size()) {
    if (token.substr(i, kEmDash.size()) == kEmDash) {
      i += kEmDash.size();
    } else if (kChars.find(token[i]) != std::string_view::npos) {
      ++i;
    } else {
      return false;
    }
  }
  return true;
}

bool IsAdversative(std::string_view token) {
  static constexpr std::array<std::string_view, 8> kAdversatives = {
      "but",   "however", "yet",     "although",
      "though", "nevertheless", "whereas", "still"};
  return std::find(kAdversatives.begin(), kAdversatives.end(), token) !=
         kAdversatives.end();
}

std::vector<CueScope> NextNCueScopes(const Document& doc, const CueLexicon& cues,
                                     int n) {
  if (n < 1) throw InputError("next-n needs n >= 1");
  std::vector<CueScope> scopes;
  for (const SentenceSpan& span : doc.sentences()) {
    for (std::size_t c = span.begin; c < span.end; ++c) {
      const auto kind = cues.Lookup(doc.token(c).normalized);
      if (!kind) continue;
      CueScope scope{c, *kind, {}};
      int taken = 0;
      for (std::size_t j = c + 1; j < span.end && taken < n; ++j) {
        const std::string& word = doc.token(j).normalized;
        if (IsScopePunctuation(word) || IsAdversative(word)) break;
        ++taken;
        if (!cues.Contains(word)) scope.tokens.push_back(j);
      }
      scopes.push_back(std::move(scope));
    }
  }
  return scopes;
}

ScopeLabel NextNScope(const Document& doc, const CueLexicon& cues, int n) {
  ScopeLabel label(doc.size());
  for (const CueScope& scope : NextNCueScopes(doc, cues, n)) {
    for (std::size_t pos : scope.tokens) label.Claim(pos, scope.kind);
  }
  return label;
}

namespace {

void RequireParse(const Document& doc) {
  if (!doc.has_dependencies()) {
    throw InputError("dependencies required: document '" + doc.id() +
                     "' has no dependency annotations");
  }
}

bool IsConj(const Token& t) {
  return t.deprel == "conj" || t.deprel.starts_with("conj:");
}

bool IsCc(const Token& t) {
  return t.deprel == "cc" || t.deprel.starts_with("cc:");
}

bool IsAdversativeCc(const Document& doc, std::size_t pos) {
  return IsCc(doc.token(pos)) && IsAdversative(doc.token(pos).normalized);
}

// Edge between conjunct head `head` and conj dependent `dep`. Covers both
// attachment styles: cc on the dependent conjunct, or cc on the first
// conjunct placed between the two.
bool ConjEdgeBlocked(const Document& doc, std::size_t head, std::size_t dep) {
  for (std::size_t child : doc.Children(dep)) {
    if (IsAdversativeCc(doc, child)) return true;
  }
  const std::size_t lo = std::min(head, dep);
  const std::size_t hi = std::max(head, dep);
  for (std::size_t child : doc.Children(head)) {
    if (child > lo && child < hi && IsAdversativeCc(doc, child)) return true;
  }
  return false;
}

// Minimum number of edges from `start` down to a cue of `kind`, 0 if none.
int DownwardCueDistance(const Document& doc, std::size_t start,
                        const CueLexicon& cues, ModifierKind kind) {
  std::deque<std::pair<std::size_t, int>> queue;
  for (std::size_t child : doc.Children(start)) queue.emplace_back(child, 1);
  while (!queue.empty()) {
    const auto [node, depth] = queue.front();
    queue.pop_front();
    if (cues.Lookup(doc.token(node).normalized) == kind) return depth;
    for (std::size_t child : doc.Children(node)) {
      queue.emplace_back(child, depth + 1);
    }
  }
  return 0;
}

}  // namespace

ScopeLabel DepTreeScope(const Document& doc, const CueLexicon& cues) {
  RequireParse(doc);
  ScopeLabel label(doc.size());
  for (ModifierKind kind : kAllModifierKinds) {
    std::vector<bool> reached(doc.size(), false);
    std::deque<std::size_t> frontier;
    for (std::size_t c = 0; c < doc.size(); ++c) {
      if (cues.Lookup(doc.token(c).normalized) != kind) continue;
      const auto head = doc.Head(c);
      if (!head || reached[*head] || cues.Contains(doc.token(*head).normalized)) {
        continue;
      }
      reached[*head] = true;
      frontier.push_back(*head);
    }
    while (!frontier.empty()) {
      const std::size_t x = frontier.front();
      frontier.pop_front();
      std::vector<std::size_t> next;
      for (std::size_t child : doc.Children(x)) {
        if (IsConj(doc.token(child)) && !ConjEdgeBlocked(doc, x, child)) {
          next.push_back(child);
        }
      }
      if (IsConj(doc.token(x))) {
        if (const auto head = doc.Head(x); head && !ConjEdgeBlocked(doc, *head, x)) {
          next.push_back(*head);
        }
      }
      for (std::size_t y : next) {
        if (reached[y] || cues.Contains(doc.token(y).normalized)) continue;
        reached[y] = true;
        frontier.push_back(y);
      }
    }
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
      if (reached[pos]) label.Claim(pos, kind);
    }
  }
  return label;
}

ScopeFeatures ExtractScopeFeatures(const Document& doc, std::size_t pos,
                                   const CueLexicon& cues, ModifierKind kind) {
  RequireParse(doc);
  if (pos >= doc.size()) {
    throw InputError("token position " + std::to_string(pos) +
                     " outside document '" + doc.id() + "'");
  }
  const SentenceSpan& span = doc.sentences()[doc.SentenceOf(pos)];
  const auto is_cue = [&](std::size_t p) {
    return cues.Lookup(doc.token(p).normalized) == kind;
  };

  ScopeFeatures f;
  f.word = doc.token(pos).normalized;
  f.pos = doc.token(pos).pos;
  for (std::size_t j = pos + 1; j < span.end; ++j) {
    if (is_cue(j)) {
      f.right_dist = static_cast<int>(j - pos);
      break;
    }
  }
  for (std::size_t j = pos; j > span.begin; --j) {
    if (is_cue(j - 1)) {
      f.left_dist = static_cast<int>(pos - (j - 1));
      break;
    }
  }
  f.dep_dist = DownwardCueDistance(doc, pos, cues, kind);
  if (const auto parent = doc.Head(pos)) {
    f.dep1_pos = doc.token(*parent).pos;
    f.dep1_dist = DownwardCueDistance(doc, *parent, cues, kind);
    if (const auto grandparent = doc.Head(*parent)) {
      f.dep2_pos = doc.token(*grandparent).pos;
      f.dep2_dist = DownwardCueDistance(doc, *grandparent, cues, kind);
    }
  }
  return f;
}

std::string DistanceBucket(int distance) {
  if (distance >= 5) return "5+";
  return std::to_string(std::max(distance, 0));
}

FeatureBag ScopeFeatureBag(const ScopeFeatures& f) {
  FeatureBag bag;
  bag["word=" + f.word] = 1.0;
  bag["pos=" + f.pos] = 1.0;
  bag["right=" + DistanceBucket(f.right_dist)] = 1.0;
  bag["left=" + DistanceBucket(f.left_dist)] = 1.0;
  bag["dep=" + DistanceBucket(f.dep_dist)] = 1.0;
  bag["dep1pos=" + f.dep1_pos.value_or("<null>")] = 1.0;
  bag["dep1=" + DistanceBucket(f.dep1_dist)] = 1.0;
  bag["dep2pos=" + f.dep2_pos.value_or("<null>")] = 1.0;
  bag["dep2=" + DistanceBucket(f.dep2_dist)] = 1.0;
  return bag;
}

namespace {

bool ParseIndex(std::string_view s, std::size_t& out) {
  s = Trim(s);
  if (s.empty()) return false;
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::vector<ScopePair> ParseScopePairs(std::string_view contents,
                                       std::string_view source_name) {
  std::vector<ScopePair> pairs;
  const std::vector<std::string> lines = SplitOn(contents, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = Trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    const auto fail = [&](const std::string& what) {
      return InputError(std::string(source_name) + ":" +
                        std::to_string(ln + 1) + ": " + what);
    };
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 5) {
      throw fail("expected doc_id<TAB>cue<TAB>emo<TAB>kind<TAB>0|1");
    }
    ScopePair p;
    p.doc_id = std::string(Trim(cols[0]));
    if (!ParseIndex(cols[1], p.cue) || !ParseIndex(cols[2], p.emotion_word)) {
      throw fail("token positions must be non-negative integers");
    }
    if (p.cue == p.emotion_word) throw fail("cue and emotion word coincide");
    const auto kind = ParseModifierKind(cols[3]);
    if (!kind) throw fail("unknown modifier kind '" + cols[3] + "'");
    p.kind = *kind;
    const std::string flag(Trim(cols[4]));
    if (flag != "0" && flag != "1") throw fail("flag must be 0 or 1");
    p.modifies = flag == "1";
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<ScopePair> LoadScopePairs(const std::string& path) {
  return ParseScopePairs(ReadFile(path), path);
}

std::string ScopePairsToTsv(const std::vector<ScopePair>& pairs) {
  std::string out;
  for (const ScopePair& p : pairs) {
    out += p.doc_id + "\t" + std::to_string(p.cue) + "\t" +
           std::to_string(p.emotion_word) + "\t" +
           std::string(ModifierKindName(p.kind)) + "\t" +
           (p.modifies ? "1" : "0") + "\n";
  }
  return out;
}

BinaryClassifier TrainScopeClassifier(const std::vector<ScopePair>& pairs,
                                      const std::vector<Document>& docs,
                                      const CueLexicon& cues, ModifierKind kind,
                                      const Hyperparameters& hyper) {
  if (pairs.empty()) throw InputError("no scope pairs to train on");
  std::map<std::string_view, const Document*> by_id;
  for (const Document& d : docs) by_id.emplace(d.id(), &d);
  std::vector<std::pair<FeatureBag, bool>> examples;
  examples.reserve(pairs.size());
  for (const ScopePair& p : pairs) {
    if (p.kind != kind) {
      throw InputError("pair of kind " + std::string(ModifierKindName(p.kind)) +
                       " given to the " + std::string(ModifierKindName(kind)) +
                       " classifier");
    }
    const auto it = by_id.find(p.doc_id);
    if (it == by_id.end()) {
      throw InputError("scope pair references unknown document '" + p.doc_id +
                       "'");
    }
    const Document& doc = *it->second;
    if (p.cue >= doc.size() || p.emotion_word >= doc.size()) {
      throw InputError("scope pair position outside document '" + p.doc_id +
                       "'");
    }
    examples.emplace_back(
        ScopeFeatureBag(ExtractScopeFeatures(doc, p.emotion_word, cues, kind)),
        p.modifies);
  }
  return TrainBinaryClassifier(examples, hyper,
                               "scope:" + std::string(ModifierKindName(kind)));
}

ScopeLabel ClassifierScope(const Document& doc, const CueLexicon& cues,
                           const ScopeModels& models,
                           const EmotionLexicon& emotions) {
  for (ModifierKind kind : kAllModifierKinds) {
    if (!models[Index(kind)]) {
      throw InputError("no scope model for " +
                       std::string(ModifierKindName(kind)));
    }
  }
  RequireParse(doc);
  ScopeLabel label(doc.size());
  for (const SentenceSpan& span : doc.sentences()) {
    std::array<bool, kNumModifierKinds> present{};
    bool any = false;
    for (std::size_t j = span.begin; j < span.end; ++j) {
      if (const auto kind = cues.Lookup(doc.token(j).normalized)) {
        present[Index(*kind)] = true;
        any = true;
      }
    }
    if (!any) continue;
    for (std::size_t j = span.begin; j < span.end; ++j) {
      const std::string& word = doc.token(j).normalized;
      if (!emotions.Contains(word) || cues.Contains(word)) continue;
      for (ModifierKind kind : kAllModifierKinds) {
        if (!present[Index(kind)]) continue;
        const FeatureBag bag =
            ScopeFeatureBag(ExtractScopeFeatures(doc, j, cues, kind));
        if (models[Index(kind)]->Predict(bag)) {
          label.Set(j, kind);
          break;
        }
      }
    }
  }
  return label;
}

EvalReport EvaluateScope(const std::map<std::string, ScopeLabel>& predicted,
                         const std::vector<ScopePair>& gold) {
  std::array<std::int64_t, kNumModifierKinds> tp{}, fp{}, fn{};
  for (const ScopePair& p : gold) {
    bool hit = false;
    if (const auto it = predicted.find(p.doc_id); it != predicted.end()) {
      const ScopeLabel& label = it->second;
      hit = p.emotion_word < label.size() && label.at(p.emotion_word) == p.kind;
    }
    const std::size_t k = Index(p.kind);
    if (p.modifies && hit) {
      ++tp[k];
    } else if (p.modifies) {
      ++fn[k];
    } else if (hit) {
      ++fp[k];
    }
  }
  std::vector<ClassMetrics> classes;
  for (ModifierKind kind : kAllModifierKinds) {
    const std::size_t k = Index(kind);
    classes.push_back(MetricsFromCounts(std::string(ModifierKindName(kind)),
                                        tp[k], fp[k], fn[k]));
  }
  return ReportFromClasses(std::move(classes),
                           static_cast<std::int64_t>(gold.size()), "scope");
}

std::vector<SweepPoint> SweepNextN(const std::vector<Document>& docs,
                                   const CueLexicon& cues,
                                   const std::vector<ScopePair>& gold,
                                   int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw InputError("bad n sweep range");
  std::vector<SweepPoint> sweep;
  for (int n = n_min; n <= n_max; ++n) {
    std::map<std::string, ScopeLabel> predicted;
    for (const Document& d : docs) predicted[d.id()] = NextNScope(d, cues, n);
    EvalReport report = EvaluateScope(predicted, gold);
    report.subset = "next-" + std::to_string(n);
    sweep.push_back({n, std::move(report)});
  }
  return sweep;
}

std::string RenderSweep(const std::vector<SweepPoint>& sweep) {
  std::string out = "   n    all    neg    amp   down\n";
  for (const SweepPoint& p : sweep) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%4d %6.1f %6.1f %6.1f %6.1f\n", p.n,
                  RoundOneDecimal(p.report.macro_f1),
                  RoundOneDecimal(p.report.classes[0].f1),
                  RoundOneDecimal(p.report.classes[1].f1),
                  RoundOneDecimal(p.report.classes[2].f1));
    out += buf;
  }
  return out;
}

std::string ScopesToJsonl(const std::vector<Document>& docs,
                          const std::vector<ScopeLabel>& scopes) {
  if (docs.size() != scopes.size()) {
    throw Error("documents and scopes are not aligned");
  }
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    json labels = json::array();
    for (const auto& [pos, kind] : scopes[i].Labeled()) {
      labels.push_back(json::array({pos, ModifierKindName(kind)}));
    }
    out += json{{"id", docs[i].id()},
                {"n_tokens", docs[i].size()},
                {"labels", labels}}
               .dump() +
           "\n";
  }
  return out;
}

std::map<std::string, ScopeLabel> ParseScopesJsonl(std::string_view contents,
                                                   std::string_view source_name) {
  std::map<std::string, ScopeLabel> out;
  const std::vector<std::string> lines = SplitOn(contents, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (Trim(lines[ln]).empty()) continue;
    const auto fail = [&](const std::string& what) {
      return InputError(std::string(source_name) + ":" +
                        std::to_string(ln + 1) + ": " + what);
    };
    try {
      const json j = json::parse(lines[ln]);
      const std::string id = j.at("id").get<std::string>();
      std::vector<std::pair<std::size_t, ModifierKind>> labels;
      const bool sized = j.contains("n_tokens");
      std::size_t size = j.value("n_tokens", std::size_t{0});
      for (const json& entry : j.at("labels")) {
        const auto pos = entry.at(0).get<std::size_t>();
        const auto kind = ParseModifierKind(entry.at(1).get<std::string>());
        if (!kind) throw fail("unknown modifier kind");
        if (sized && pos >= size) throw fail("label position beyond n_tokens");
        labels.emplace_back(pos, *kind);
        size = std::max(size, pos + 1);
      }
      ScopeLabel label(size);
      for (const auto& [pos, kind] : labels) {
        if (label.at(pos)) throw fail("token labeled twice");
        label.Set(pos, kind);
      }
      out[id] = std::move(label);
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    }
  }
  return out;
}

}  // namespace emomod
