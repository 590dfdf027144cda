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

#include "emomod/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "emomod/rng.h"
#include "emomod/text_util.h"

namespace emomod {

using json = nlohmann::json;

Document::Document(std::string id, std::vector<Token> tokens,
                   std::vector<SentenceSpan> sentences,
                   std::optional<Emotion> label, bool has_dependencies)
    : id_(std::move(id)),
      tokens_(std::move(tokens)),
      sentences_(std::move(sentences)),
      label_(label),
      has_dependencies_(has_dependencies),
      sentence_of_(tokens_.size(), 0),
      children_(tokens_.size()) {
  const auto fail = [this](const std::string& what) {
    throw InputError("document '" + id_ + "': " + what);
  };
  std::size_t expected_begin = 0;
  for (std::size_t s = 0; s < sentences_.size(); ++s) {
    const SentenceSpan& span = sentences_[s];
    if (span.begin != expected_begin || span.end <= span.begin ||
        span.end > tokens_.size()) {
      fail("sentence spans do not partition the tokens");
    }
    int roots = 0;
    for (std::size_t pos = span.begin; pos < span.end; ++pos) {
      const Token& tok = tokens_[pos];
      sentence_of_[pos] = s;
      if (tok.index != static_cast<int>(pos - span.begin) + 1) {
        fail("token index " + std::to_string(tok.index) +
             " out of sequence in sentence " + std::to_string(s + 1));
      }
      if (tok.normalized.empty()) fail("empty normalized token");
      if (!has_dependencies_) continue;
      if (tok.head < 0 || tok.head > static_cast<int>(span.size())) {
        fail("head " + std::to_string(tok.head) + " of token " +
             std::to_string(tok.index) + " outside its sentence");
      }
      if (tok.head == tok.index) {
        fail("token " + std::to_string(tok.index) + " is its own head");
      }
      if (tok.head == 0) {
        ++roots;
      } else {
        children_[span.begin + static_cast<std::size_t>(tok.head) - 1]
            .push_back(pos);
      }
    }
    if (has_dependencies_ && roots != 1) {
      fail("sentence " + std::to_string(s + 1) + " has " +
           std::to_string(roots) + " roots");
    }
    if (has_dependencies_) {
      // With one root, every token must reach it within span.size() steps.
      for (std::size_t pos = span.begin; pos < span.end; ++pos) {
        std::size_t cur = pos;
        std::size_t steps = 0;
        while (tokens_[cur].head != 0) {
          cur = span.begin + static_cast<std::size_t>(tokens_[cur].head) - 1;
          if (++steps > span.size()) fail("dependency cycle");
        }
      }
    }
    expected_begin = span.end;
  }
  if (expected_begin != tokens_.size()) {
    fail("sentence spans do not cover all tokens");
  }
}

std::optional<std::size_t> Document::Head(std::size_t pos) const {
  if (!has_dependencies_) return std::nullopt;
  const int head = tokens_[pos].head;
  if (head <= 0) return std::nullopt;
  return sentences_[sentence_of_[pos]].begin + static_cast<std::size_t>(head) -
         1;
}

Document Document::WithLabel(std::optional<Emotion> label) const {
  Document copy = *this;
  copy.label_ = label;
  return copy;
}

namespace {

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u == '_' || u >= 0x80;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool StartsWithNoCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return AsciiLower(s.substr(0, prefix.size())) == prefix;
}

enum class EntityKind { kUrl, kUser, kHashtag };

struct Entity {
  EntityKind kind;
  std::size_t length;      // bytes consumed from the raw text
  std::string_view body;   // hashtag/mention name without the sigil
};

// Recognizes an entity starting at raw[i]. Entities must not be glued to a
// preceding word character, so "a@b.com" stays text.
std::optional<Entity> EntityAt(std::string_view raw, std::size_t i) {
  if (i > 0 && IsWordByte(raw[i - 1])) return std::nullopt;
  // A placeholder counts as a word so normalization stays idempotent.
  for (std::string_view p :
       {kUrlPlaceholder, kUserPlaceholder, kHashtagPlaceholder}) {
    if (i >= p.size() && StartsWithNoCase(raw.substr(i - p.size()), p)) {
      return std::nullopt;
    }
  }
  const std::string_view rest = raw.substr(i);
  if (StartsWithNoCase(rest, "http://") || StartsWithNoCase(rest, "https://") ||
      StartsWithNoCase(rest, "www.")) {
    std::size_t len = 0;
    while (len < rest.size() && !IsSpace(rest[len])) ++len;
    return Entity{EntityKind::kUrl, len, rest.substr(0, len)};
  }
  if (rest[0] == '@' || rest[0] == '#') {
    std::size_t len = 1;
    while (len < rest.size() && IsWordByte(rest[len])) ++len;
    if (len == 1) return std::nullopt;
    return Entity{rest[0] == '@' ? EntityKind::kUser : EntityKind::kHashtag,
                  len, rest.substr(1, len - 1)};
  }
  return std::nullopt;
}

std::string_view Placeholder(EntityKind kind) {
  switch (kind) {
    case EntityKind::kUrl:
      return kUrlPlaceholder;
    case EntityKind::kUser:
      return kUserPlaceholder;
    case EntityKind::kHashtag:
      return kHashtagPlaceholder;
  }
  return {};
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

bool IsStripPunct(char c) {
  static constexpr std::string_view kStrip = ".,;:!?()[]{}\"'";
  return kStrip.find(c) != std::string_view::npos;
}

bool IsSentenceFinal(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) {
    return c == '.' || c == '!' || c == '?';
  });
}

InputError ParseErrorAt(std::string_view source, std::size_t line,
                        const std::string& what) {
  return InputError(std::string(source) + ":" + std::to_string(line) + ": " +
                    what);
}

std::vector<std::string_view> Lines(std::string_view contents) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool ParseInt(std::string_view s, int& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

}  // namespace

std::string NormalizeText(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (const auto entity = EntityAt(raw, i)) {
      out += Placeholder(entity->kind);
      i += entity->length;
      continue;
    }
    out.push_back(raw[i]);
    ++i;
  }
  return CollapseWhitespace(AsciiLower(out));
}

std::string NormalizeToken(std::string_view form) {
  if (const auto entity = EntityAt(form, 0);
      entity && entity->length == form.size()) {
    return std::string(Placeholder(entity->kind));
  }
  return AsciiLower(form);
}

std::optional<LabeledText> SelfLabel(std::string_view raw,
                                     const HashtagMap& map) {
  if (map.empty()) throw InputError("hashtag map is empty");
  std::optional<Emotion> label;
  bool conflict = false;
  std::string stripped;
  stripped.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const auto entity = EntityAt(raw, i);
    if (entity && entity->kind == EntityKind::kHashtag) {
      const auto it = map.find(AsciiLower(entity->body));
      if (it != map.end()) {
        if (label && *label != it->second) conflict = true;
        label = it->second;
        stripped.push_back(' ');
        i += entity->length;
        continue;
      }
    }
    if (entity) {
      stripped.append(raw.substr(i, entity->length));
      i += entity->length;
      continue;
    }
    stripped.push_back(raw[i]);
    ++i;
  }
  if (!label || conflict) return std::nullopt;
  return LabeledText{NormalizeText(stripped), *label};
}

std::vector<std::string> TokenizeNormalized(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && IsSpace(normalized[i])) ++i;
    std::size_t j = i;
    while (j < normalized.size() && !IsSpace(normalized[j])) ++j;
    std::string_view piece = normalized.substr(i, j - i);
    i = j;
    if (piece.empty()) continue;
    std::size_t lead = 0;
    while (lead < piece.size() && IsStripPunct(piece[lead])) ++lead;
    if (lead == piece.size()) {
      tokens.emplace_back(piece);
      continue;
    }
    std::size_t trail = piece.size();
    while (trail > lead && IsStripPunct(piece[trail - 1])) --trail;
    if (lead > 0) tokens.emplace_back(piece.substr(0, lead));
    tokens.emplace_back(piece.substr(lead, trail - lead));
    if (trail < piece.size()) tokens.emplace_back(piece.substr(trail));
  }
  return tokens;
}

Document DocumentFromText(std::string id, std::string_view raw,
                          std::optional<Emotion> label) {
  const std::vector<std::string> words = TokenizeNormalized(NormalizeText(raw));
  std::vector<Token> tokens;
  std::vector<SentenceSpan> sentences;
  std::size_t begin = 0;
  for (std::size_t pos = 0; pos < words.size(); ++pos) {
    Token tok;
    tok.index = static_cast<int>(pos - begin) + 1;
    tok.surface = words[pos];
    tok.normalized = words[pos];
    tokens.push_back(std::move(tok));
    if (IsSentenceFinal(words[pos]) || pos + 1 == words.size()) {
      sentences.push_back({begin, pos + 1});
      begin = pos + 1;
    }
  }
  return Document(std::move(id), std::move(tokens), std::move(sentences),
                  label, /*has_dependencies=*/false);
}

std::vector<Document> ParseConllu(std::string_view contents,
                                  std::string_view source_name) {
  struct PendingDoc {
    std::string id;
    std::vector<Token> tokens;
    std::vector<SentenceSpan> sentences;
    std::optional<Emotion> label;
    std::size_t line = 0;
  };

  std::vector<Document> docs;
  std::optional<PendingDoc> open_doc;
  std::vector<Token> sentence;
  std::string sent_id;
  std::optional<Emotion> sentence_label;
  std::size_t sentence_line = 0;
  std::size_t anonymous = 0;

  const auto build = [&](PendingDoc& d) {
    try {
      docs.emplace_back(d.id, std::move(d.tokens), std::move(d.sentences),
                        d.label, /*has_dependencies=*/true);
    } catch (const InputError& e) {
      throw ParseErrorAt(source_name, d.line, e.what());
    }
  };

  const auto flush_sentence = [&]() {
    if (sentence.empty()) {
      sent_id.clear();
      return;
    }
    if (open_doc) {
      const std::size_t begin = open_doc->tokens.size();
      for (Token& t : sentence) open_doc->tokens.push_back(std::move(t));
      open_doc->sentences.push_back({begin, open_doc->tokens.size()});
      if (sentence_label) open_doc->label = sentence_label;
    } else {
      PendingDoc d;
      d.id = sent_id.empty() ? "s" + std::to_string(++anonymous) : sent_id;
      d.label = sentence_label;
      d.line = sentence_line;
      d.sentences.push_back({0, sentence.size()});
      d.tokens = std::move(sentence);
      build(d);
    }
    sentence.clear();
    sent_id.clear();
    sentence_label.reset();
  };

  const auto flush_doc = [&]() {
    flush_sentence();
    if (open_doc) {
      if (!open_doc->tokens.empty()) build(*open_doc);
      open_doc.reset();
    }
  };

  const std::vector<std::string_view> lines = Lines(contents);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    const std::string_view line = lines[ln];
    if (Trim(line).empty()) {
      flush_sentence();
      continue;
    }
    if (line.front() == '#') {
      const std::string_view body = Trim(line.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key = AsciiLower(Trim(body.substr(0, eq)));
      const std::string value(Trim(body.substr(eq + 1)));
      if (key == "newdoc id" || key == "newdoc") {
        flush_doc();
        open_doc.emplace();
        open_doc->id = value;
        open_doc->line = line_no;
      } else if (key == "sent_id") {
        sent_id = value;
      } else if (key == "label") {
        const auto emotion = ParseEmotion(value);
        if (!emotion) {
          throw ParseErrorAt(source_name, line_no,
                             "unknown emotion label '" + value + "'");
        }
        if (open_doc) {
          open_doc->label = emotion;
        } else {
          sentence_label = emotion;
        }
      }
      continue;
    }
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 10) {
      throw ParseErrorAt(source_name, line_no,
                         "expected 10 tab-separated columns, found " +
                             std::to_string(cols.size()));
    }
    if (cols[0].find('-') != std::string::npos ||
        cols[0].find('.') != std::string::npos) {
      continue;
    }
    Token tok;
    if (!ParseInt(cols[0], tok.index)) {
      throw ParseErrorAt(source_name, line_no,
                         "non-integer token ID '" + cols[0] + "'");
    }
    if (tok.index != static_cast<int>(sentence.size()) + 1) {
      throw ParseErrorAt(source_name, line_no,
                         "token ID " + cols[0] + " out of sequence");
    }
    if (!ParseInt(cols[6], tok.head)) {
      throw ParseErrorAt(source_name, line_no,
                         "non-integer HEAD '" + cols[6] + "'");
    }
    if (sentence.empty()) sentence_line = line_no;
    tok.surface = cols[1];
    tok.normalized = NormalizeToken(cols[1]);
    tok.pos = (cols[4].empty() || cols[4] == "_") ? cols[3] : cols[4];
    tok.deprel = cols[7];
    sentence.push_back(std::move(tok));
  }
  flush_doc();
  return docs;
}

std::vector<Document> LoadConllu(const std::string& path) {
  return ParseConllu(ReadFile(path), path);
}

std::vector<Document> ParseRawJsonl(std::string_view contents,
                                    const HashtagMap* hashtags,
                                    bool drop_unlabeled,
                                    std::string_view source_name) {
  std::vector<Document> docs;
  const std::vector<std::string_view> lines = Lines(contents);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (Trim(lines[ln]).empty()) continue;
    json obj;
    try {
      obj = json::parse(lines[ln]);
    } catch (const json::parse_error& e) {
      throw ParseErrorAt(source_name, ln + 1, e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
        !obj["text"].is_string()) {
      throw ParseErrorAt(source_name, ln + 1,
                         "expected an object with \"id\" and \"text\"");
    }
    const std::string id = obj["id"].is_string()
                               ? obj["id"].get<std::string>()
                               : obj["id"].dump();
    const std::string text = obj["text"].get<std::string>();
    std::optional<Emotion> label;
    std::string body = text;
    if (obj.contains("label") && !obj["label"].is_null()) {
      const std::string name = obj["label"].get<std::string>();
      label = ParseEmotion(name);
      if (!label) {
        throw ParseErrorAt(source_name, ln + 1,
                           "unknown emotion label '" + name + "'");
      }
    } else if (hashtags != nullptr) {
      if (auto labeled = SelfLabel(text, *hashtags)) {
        label = labeled->label;
        body = std::move(labeled->text);
      }
    }
    if (!label && drop_unlabeled) continue;
    docs.push_back(DocumentFromText(id, body, label));
  }
  return docs;
}

std::vector<Document> LoadRawJsonl(const std::string& path,
                                   const HashtagMap* hashtags,
                                   bool drop_unlabeled) {
  return ParseRawJsonl(ReadFile(path), hashtags, drop_unlabeled, path);
}

std::vector<Document> LoadCorpus(const std::string& path,
                                 const HashtagMap* hashtags,
                                 bool drop_unlabeled) {
  const auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) ==
               0;
  };
  if (ends_with(".conllu") || ends_with(".conll")) {
    std::vector<Document> docs = LoadConllu(path);
    if (drop_unlabeled) {
      std::erase_if(docs, [](const Document& d) { return !d.label(); });
    }
    return docs;
  }
  return LoadRawJsonl(path, hashtags, drop_unlabeled);
}

HashtagMap ParseHashtagMap(std::string_view contents,
                           std::string_view source_name) {
  HashtagMap map;
  const std::vector<std::string_view> lines = Lines(contents);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = Trim(lines[ln]);
    if (line.empty()) continue;
    const std::vector<std::string> cols = SplitOn(line, '\t');
    if (cols.size() != 2) {
      throw ParseErrorAt(source_name, ln + 1,
                         "expected hashtag<TAB>emotion");
    }
    std::string tag = AsciiLower(Trim(cols[0]));
    if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
    const auto emotion = ParseEmotion(cols[1]);
    if (tag.empty() || !emotion) {
      throw ParseErrorAt(source_name, ln + 1, "bad hashtag row");
    }
    const auto [it, inserted] = map.emplace(tag, *emotion);
    if (!inserted && it->second != *emotion) {
      throw ParseErrorAt(source_name, ln + 1,
                         "hashtag '" + tag + "' mapped to two emotions");
    }
  }
  return map;
}

HashtagMap LoadHashtagMap(const std::string& path) {
  return ParseHashtagMap(ReadFile(path), path);
}

CorpusSplit SplitCorpus(const std::vector<Document>& docs,
                        const SplitOptions& options,
                        const std::function<bool(const Document&)>& qualifies) {
  const double train = options.train_fraction;
  const double test = options.test_fraction;
  if (!(train > 0.0 && train < 1.0 && test > 0.0 && test < 1.0) ||
      std::abs(train + test - 1.0) > 1e-9) {
    throw InputError("split fractions must lie in (0,1) and sum to 1");
  }
  std::set<std::string, std::less<>> seen;
  for (const Document& d : docs) {
    if (!d.label()) throw InputError("document '" + d.id() + "' is unlabeled");
    if (!seen.insert(d.id()).second) {
      throw InputError("duplicate document id '" + d.id() + "'");
    }
  }

  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(options.seed);
  rng.Shuffle(order);
  const auto n_train = static_cast<std::size_t>(
      std::llround(static_cast<double>(docs.size()) * train));

  CorpusSplit split;
  split.seed = options.seed;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& target = i < n_train ? split.train_repr : split.test_repr;
    target.push_back(docs[order[i]].id());
  }

  if (options.balanced_per_class > 0) {
    std::array<std::vector<std::string>, kNumEmotions> per_class;
    for (std::size_t i = 0; i < n_train; ++i) {
      const Document& d = docs[order[i]];
      auto& bucket = per_class[Index(*d.label())];
      if (bucket.size() < options.balanced_per_class && qualifies(d)) {
        bucket.push_back(d.id());
      }
    }
    std::string missing;
    for (Emotion e : kAllEmotions) {
      const auto& bucket = per_class[Index(e)];
      if (bucket.size() < options.balanced_per_class) {
        if (!missing.empty()) missing += ", ";
        missing += std::string(EmotionName(e)) + " (" +
                   std::to_string(bucket.size()) + " of " +
                   std::to_string(options.balanced_per_class) + ")";
      }
    }
    if (!missing.empty()) {
      throw InputError("not enough qualifying training documents for: " +
                       missing);
    }
    for (const auto& bucket : per_class) {
      split.train_balanced.insert(split.train_balanced.end(), bucket.begin(),
                                  bucket.end());
    }
  }
  return split;
}

std::string SplitToJson(const CorpusSplit& split) {
  json j;
  j["seed"] = split.seed;
  j["train_repr"] = split.train_repr;
  j["test_repr"] = split.test_repr;
  j["train_balanced"] = split.train_balanced;
  return j.dump(2) + "\n";
}

CorpusSplit SplitFromJson(std::string_view text) {
  CorpusSplit split;
  try {
    const json j = json::parse(text);
    split.seed = j.at("seed").get<std::uint64_t>();
    split.train_repr = j.at("train_repr").get<std::vector<std::string>>();
    split.test_repr = j.at("test_repr").get<std::vector<std::string>>();
    split.train_balanced =
        j.value("train_balanced", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw InputError(std::string("bad split manifest: ") + e.what());
  }
  return split;
}

std::vector<Document> SelectDocuments(const std::vector<Document>& docs,
                                      const std::vector<std::string>& ids) {
  std::map<std::string_view, const Document*> by_id;
  for (const Document& d : docs) by_id.emplace(d.id(), &d);
  std::vector<Document> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw InputError("document '" + id + "' listed in split not found");
    }
    out.push_back(*it->second);
  }
  return out;
}

}  // namespace emomod
