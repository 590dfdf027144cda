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

#ifndef EMOMOD_CORPUS_H_
#define EMOMOD_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emomod/types.h"

namespace emomod {

// Placeholders substituted for entities during normalization.
inline constexpr std::string_view kUrlPlaceholder = "<url>";
inline constexpr std::string_view kUserPlaceholder = "<user>";
inline constexpr std::string_view kHashtagPlaceholder = "<hashtag>";

struct Token {
  int index = 0;            // 1-based position inside its sentence
  std::string surface;
  std::string normalized;   // lowercased, or an entity placeholder
  std::string pos;          // XPOS, UPOS when XPOS is absent
  int head = -1;            // sentence-relative; 0 = root, -1 = no parse
  std::string deprel;
};

// Half-open range [begin, end) of document-level token positions.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool Contains(std::size_t pos) const { return pos >= begin && pos < end; }
};

// A tokenized text. Token positions used throughout the library (scope
// labels, gold pairs) are 0-based document-level positions, not the 1-based
// CoNLL-U sentence indices stored in Token::index.
//
// The constructor validates the invariants and throws InputError: sentence
// spans partition the tokens, and when parsed, each sentence has heads inside
// the sentence, no self loops and exactly one root.
class Document {
 public:
  Document(std::string id, std::vector<Token> tokens,
           std::vector<SentenceSpan> sentences, std::optional<Emotion> label,
           bool has_dependencies);

  const std::string& id() const { return id_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& token(std::size_t pos) const { return tokens_[pos]; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<SentenceSpan>& sentences() const { return sentences_; }
  const std::optional<Emotion>& label() const { return label_; }
  bool has_dependencies() const { return has_dependencies_; }

  // Index into sentences() of the sentence holding `pos`.
  std::size_t SentenceOf(std::size_t pos) const { return sentence_of_[pos]; }

  // Document position of the syntactic head, nullopt for roots or when the
  // document carries no parse.
  std::optional<std::size_t> Head(std::size_t pos) const;

  // Document positions of direct dependents, in token order.
  const std::vector<std::size_t>& Children(std::size_t pos) const {
    return children_[pos];
  }

  // Same document with a different label.
  Document WithLabel(std::optional<Emotion> label) const;

 private:
  std::string id_;
  std::vector<Token> tokens_;
  std::vector<SentenceSpan> sentences_;
  std::optional<Emotion> label_;
  bool has_dependencies_ = false;
  std::vector<std::size_t> sentence_of_;
  std::vector<std::vector<std::size_t>> children_;
};

// Hashtag (lowercase, without '#') to emotion.
using HashtagMap = std::map<std::string, Emotion, std::less<>>;

// Replaces URLs by <url>, @-mentions by <user>, hashtags by <hashtag>,
// lowercases the rest and collapses whitespace. Idempotent.
std::string NormalizeText(std::string_view raw);

// Normalizes a single pre-tokenized form (e.g. a CoNLL-U FORM).
std::string NormalizeToken(std::string_view form);

struct LabeledText {
  std::string text;
  Emotion label;
};

// Distant supervision: labels `raw` by its emotion hashtags. Returns nullopt
// when no label hashtag is present or when they disagree. Label hashtags are
// deleted from the text before normalization.
std::optional<LabeledText> SelfLabel(std::string_view raw,
                                     const HashtagMap& map);

// Whitespace split of normalized text with leading and trailing punctuation
// separated into tokens of their own.
std::vector<std::string> TokenizeNormalized(std::string_view normalized);

// Builds an unparsed document from raw text. Sentences end after tokens made
// of '.', '!' or '?'.
Document DocumentFromText(std::string id, std::string_view raw,
                          std::optional<Emotion> label);

// CoNLL-U reader. `# newdoc id = X` starts a document that collects the
// following sentences; without newdoc markers every sentence is a document
// named by `# sent_id`. A `# label = <emotion>` comment labels the current
// document. Multiword ranges and empty nodes are skipped.
std::vector<Document> ParseConllu(std::string_view contents,
                                  std::string_view source_name = "<input>");
std::vector<Document> LoadConllu(const std::string& path);

// JSON lines of {"id": str, "text": str, "label": optional str}. Documents
// without a label are self-labeled through `hashtags` when given; documents
// that still lack a label are kept unlabeled unless `drop_unlabeled`.
std::vector<Document> ParseRawJsonl(std::string_view contents,
                                    const HashtagMap* hashtags = nullptr,
                                    bool drop_unlabeled = false,
                                    std::string_view source_name = "<input>");
std::vector<Document> LoadRawJsonl(const std::string& path,
                                   const HashtagMap* hashtags = nullptr,
                                   bool drop_unlabeled = false);

// Dispatches on extension: .conllu / .conll are parsed corpora, anything
// else is read as JSON lines.
std::vector<Document> LoadCorpus(const std::string& path,
                                 const HashtagMap* hashtags = nullptr,
                                 bool drop_unlabeled = false);

// TSV `hashtag<TAB>emotion`; '#' prefixes are stripped.
HashtagMap ParseHashtagMap(std::string_view contents,
                           std::string_view source_name = "<input>");
HashtagMap LoadHashtagMap(const std::string& path);

struct SplitOptions {
  std::uint64_t seed = 42;
  double train_fraction = 2.0 / 3.0;
  double test_fraction = 1.0 / 3.0;
  std::size_t balanced_per_class = 0;
};

struct CorpusSplit {
  std::uint64_t seed = 0;
  std::vector<std::string> train_repr;
  std::vector<std::string> test_repr;
  std::vector<std::string> train_balanced;
};

// Uniform random split into train/test preserving the natural class skew,
// plus a class-balanced subset of the training part drawn from documents
// accepted by `qualifies`. Deterministic in the seed.
CorpusSplit SplitCorpus(const std::vector<Document>& docs,
                        const SplitOptions& options,
                        const std::function<bool(const Document&)>& qualifies);

std::string SplitToJson(const CorpusSplit& split);
CorpusSplit SplitFromJson(std::string_view json);

// Documents of `docs` whose ids are listed, in list order.
std::vector<Document> SelectDocuments(const std::vector<Document>& docs,
                                      const std::vector<std::string>& ids);

}  // namespace emomod

#endif  // EMOMOD_CORPUS_H_
