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

#include <set>

#include <gtest/gtest.h>

#include "emomod/rng.h"

namespace emomod {
namespace {

TEST(NormalizeTextTest, ReplacesEntities) {
  EXPECT_EQ(NormalizeText("Check http://x.co @bob #fun NOW"),
            "check <url> <user> <hashtag> now");
}

TEST(NormalizeTextTest, EmptyAndPlain) {
  EXPECT_EQ(NormalizeText(""), "");
  EXPECT_EQ(NormalizeText("no entities here"), "no entities here");
  EXPECT_EQ(NormalizeText("  a \t\n b  "), "a b");
}

TEST(NormalizeTextTest, EmbeddedSigilsStayText) {
  EXPECT_EQ(NormalizeText("mail a@b.com or C#"), "mail a@b.com or c#");
  EXPECT_EQ(NormalizeText("(@Bob) WWW.Example.org"), "(<user>) <url>");
}

TEST(NormalizeTextTest, IdempotentOnRandomStrings) {
  const std::string alphabet = "aB #@h/t:.w_1 \t()!?";
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const auto len = rng.UniformInt(30);
    for (std::uint64_t i = 0; i < len; ++i) {
      s.push_back(alphabet[rng.UniformInt(alphabet.size())]);
    }
    if (rng.UniformInt(4) == 0) s += " http://x.y/z";
    const std::string once = NormalizeText(s);
    EXPECT_EQ(NormalizeText(once), once) << "input: " << s;
  }
}

TEST(SelfLabelTest, SingleLabel) {
  const HashtagMap map = {{"happy", Emotion::kJoy}};
  const auto r = SelfLabel("so great today #happy", map);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->text, "so great today");
  EXPECT_EQ(r->label, Emotion::kJoy);
}

TEST(SelfLabelTest, ConflictIsDropped) {
  const HashtagMap map = {{"sad", Emotion::kSadness}, {"rage", Emotion::kAnger}};
  EXPECT_FALSE(SelfLabel("ugh #sad #rage", map));
}

TEST(SelfLabelTest, SameEmotionHashtagsAgree) {
  const HashtagMap map = {{"joy", Emotion::kJoy}, {"glad", Emotion::kJoy}};
  const auto r = SelfLabel("#joy #glad what a day", map);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->text, "what a day");
  EXPECT_EQ(r->label, Emotion::kJoy);
}

TEST(SelfLabelTest, NoLabelHashtag) {
  const HashtagMap map = {{"happy", Emotion::kJoy}};
  EXPECT_FALSE(SelfLabel("plain #other text", map));
  EXPECT_THROW(SelfLabel("x", HashtagMap{}), InputError);
}

TEST(SelfLabelTest, OtherHashtagsBecomePlaceholders) {
  const HashtagMap map = {{"happy", Emotion::kJoy}};
  const auto r = SelfLabel("#HAPPY at the #beach", map);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->text, "at the <hashtag>");
}

TEST(SelfLabelTest, NeverLeaksMappedHashtags) {
  const HashtagMap map = {{"happy", Emotion::kJoy}, {"joy", Emotion::kJoy},
                          {"sad", Emotion::kSadness}};
  const std::vector<std::string> pieces = {"#happy", "#joy", "#sad", "#x",
                                           "word", "@u", "#happy!", "#Joy"};
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (int k = 0; k < 5; ++k) s += pieces[rng.UniformInt(pieces.size())] + " ";
    const auto r = SelfLabel(s, map);
    if (!r) continue;
    for (const auto& [tag, e] : map) {
      EXPECT_EQ(r->text.find("#" + tag), std::string::npos) << s;
    }
  }
}

TEST(TokenizeTest, SplitsEdgePunctuation) {
  EXPECT_EQ(TokenizeNormalized("happiness is not a goal; it is a by-product."),
            (std::vector<std::string>{"happiness", "is", "not", "a", "goal",
                                      ";", "it", "is", "a", "by-product",
                                      "."}));
  EXPECT_EQ(TokenizeNormalized("(<user>) don't !!!"),
            (std::vector<std::string>{"(", "<user>", ")", "don't", "!!!"}));
}

TEST(DocumentFromTextTest, SentencesEndAtTerminators) {
  const Document d = DocumentFromText("d", "I am sad. Really!", Emotion::kSadness);
  ASSERT_EQ(d.sentences().size(), 2u);
  EXPECT_EQ(d.sentences()[0].size(), 4u);
  EXPECT_EQ(d.token(4).index, 1);
  EXPECT_FALSE(d.has_dependencies());
  EXPECT_EQ(d.label(), Emotion::kSadness);
  EXPECT_EQ(DocumentFromText("e", "", std::nullopt).size(), 0u);
}

constexpr char kTwoSentences[] =
    "# newdoc id = doc1\n"
    "# label = sadness\n"
    "# sent_id = 1\n"
    "1\tI\tI\tPRON\tPRP\t_\t3\tnsubj\t_\t_\n"
    "2\tdo\tdo\tAUX\tVBP\t_\t3\taux\t_\t_\n"
    "3\tcare\tcare\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
    "# sent_id = 2\n"
    "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tdo\tdo\tAUX\tVBP\t_\t3\taux\t_\t_\n"
    "2\tn't\tnot\tPART\tRB\t_\t3\tadvmod\t_\t_\n"
    "3\tGo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n"
    "3.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "\n";

TEST(ConlluTest, NewdocGroupsSentences) {
  const auto docs = ParseConllu(kTwoSentences);
  ASSERT_EQ(docs.size(), 1u);
  const Document& d = docs[0];
  EXPECT_EQ(d.id(), "doc1");
  EXPECT_EQ(d.label(), Emotion::kSadness);
  ASSERT_EQ(d.sentences().size(), 2u);
  EXPECT_EQ(d.size(), 6u);
  EXPECT_EQ(d.token(2).pos, "VERB");  // XPOS "_" falls back to UPOS
  EXPECT_EQ(d.token(4).normalized, "n't");
  EXPECT_EQ(d.Head(3), std::optional<std::size_t>(5));
  EXPECT_EQ(d.Head(5), std::nullopt);
  EXPECT_EQ(d.Children(5), (std::vector<std::size_t>{3, 4}));
}

TEST(ConlluTest, SentencesWithoutNewdocAreDocuments) {
  const std::string text =
      "# sent_id = a\n1\tHi\thi\tINTJ\tUH\t_\t0\troot\t_\t_\n\n"
      "1\tYo\tyo\tINTJ\tUH\t_\t0\troot\t_\t_\n";
  const auto docs = ParseConllu(text);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].id(), "a");
  EXPECT_EQ(docs[1].id(), "s1");
}

TEST(ConlluTest, NineColumnsIsAnError) {
  const std::string text =
      "1\tI\tI\tPRON\tPRP\t_\t0\troot\t_\t_\n"
      "2\tam\tbe\tAUX\tVBP\t_\t1\tcop\t_\n";
  try {
    ParseConllu(text, "x.conllu");
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("x.conllu:2"), std::string::npos)
        << e.what();
  }
}

TEST(ConlluTest, NonIntegerHeadIsAnError) {
  EXPECT_THROW(ParseConllu("1\tI\tI\tPRON\tPRP\t_\tx\troot\t_\t_\n"),
               InputError);
}

TEST(ConlluTest, TreeInvariantsAreChecked) {
  // two roots
  EXPECT_THROW(ParseConllu("1\ta\ta\tX\tX\t_\t0\troot\t_\t_\n"
                           "2\tb\tb\tX\tX\t_\t0\troot\t_\t_\n"),
               InputError);
  // head outside sentence
  EXPECT_THROW(ParseConllu("1\ta\ta\tX\tX\t_\t5\tdep\t_\t_\n"), InputError);
  // cycle
  EXPECT_THROW(ParseConllu("1\ta\ta\tX\tX\t_\t2\tdep\t_\t_\n"
                           "2\tb\tb\tX\tX\t_\t1\tdep\t_\t_\n"
                           "3\tc\tc\tX\tX\t_\t0\troot\t_\t_\n"),
               InputError);
}

TEST(ConlluTest, EmptyInput) { EXPECT_TRUE(ParseConllu("").empty()); }

TEST(RawJsonlTest, LabelsAndSelfLabels) {
  const HashtagMap map = {{"happy", Emotion::kJoy}};
  const std::string text =
      "{\"id\":\"a\",\"text\":\"I am sad\",\"label\":\"sadness\"}\n"
      "{\"id\":\"b\",\"text\":\"so fun #happy\"}\n"
      "{\"id\":\"c\",\"text\":\"nothing\"}\n";
  const auto docs = ParseRawJsonl(text, &map);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].label(), Emotion::kSadness);
  EXPECT_EQ(docs[1].label(), Emotion::kJoy);
  EXPECT_EQ(docs[1].size(), 2u);
  EXPECT_FALSE(docs[2].label());
  EXPECT_EQ(ParseRawJsonl(text, &map, /*drop_unlabeled=*/true).size(), 2u);
  EXPECT_THROW(ParseRawJsonl("{\"id\":\"a\",\"text\":\"x\",\"label\":\"meh\"}"),
               InputError);
  EXPECT_THROW(ParseRawJsonl("not json"), InputError);
}

TEST(HashtagMapTest, Parses) {
  const auto map = ParseHashtagMap("#Happy\tjoy\nrage\tanger\n");
  EXPECT_EQ(map.at("happy"), Emotion::kJoy);
  EXPECT_EQ(map.at("rage"), Emotion::kAnger);
  EXPECT_THROW(ParseHashtagMap("x\tjoy\nx\tanger\n"), InputError);
  EXPECT_THROW(ParseHashtagMap("x\tnope\n"), InputError);
}

std::vector<Document> LabeledCorpus(int per_class) {
  std::vector<Document> docs;
  for (Emotion e : kAllEmotions) {
    for (int i = 0; i < per_class; ++i) {
      const std::string id = std::string(EmotionName(e)) + std::to_string(i);
      docs.push_back(DocumentFromText(id, i % 2 ? "not happy" : "happy", e));
    }
  }
  return docs;
}

TEST(SplitCorpusTest, SizesFollowRatios) {
  const auto docs = LabeledCorpus(100);
  SplitOptions opt;
  opt.seed = 3;
  opt.balanced_per_class = 10;
  const auto split = SplitCorpus(docs, opt, [](const Document&) { return true; });
  EXPECT_EQ(split.train_repr.size(), 400u);
  EXPECT_EQ(split.test_repr.size(), 200u);
  EXPECT_EQ(split.train_balanced.size(), 60u);
}

TEST(SplitCorpusTest, DisjointSubsetAndDeterministic) {
  const auto docs = LabeledCorpus(50);
  SplitOptions opt;
  opt.seed = 99;
  opt.balanced_per_class = 5;
  const auto qualifies = [](const Document& d) { return d.size() == 2; };
  const auto a = SplitCorpus(docs, opt, qualifies);
  const auto b = SplitCorpus(docs, opt, qualifies);
  EXPECT_EQ(SplitToJson(a), SplitToJson(b));

  const std::set<std::string> train(a.train_repr.begin(), a.train_repr.end());
  for (const auto& id : a.test_repr) EXPECT_FALSE(train.contains(id));
  for (const auto& id : a.train_balanced) EXPECT_TRUE(train.contains(id));
  for (const Document& d : SelectDocuments(docs, a.train_balanced)) {
    EXPECT_EQ(d.size(), 2u);
  }

  opt.seed = 100;
  EXPECT_NE(SplitToJson(SplitCorpus(docs, opt, qualifies)), SplitToJson(a));

  const auto round = SplitFromJson(SplitToJson(a));
  EXPECT_EQ(round.train_repr, a.train_repr);
  EXPECT_EQ(round.seed, 99u);
}

TEST(SplitCorpusTest, ScarceClassIsReported) {
  auto docs = LabeledCorpus(1800);
  SplitOptions opt;
  opt.balanced_per_class = 1000;
  const auto qualifies = [](const Document& d) {
    return *d.label() != Emotion::kDisgust || d.id() == "disgust1" ||
           d.id() == "disgust2" || d.id() == "disgust3" ||
           d.id() == "disgust4" || d.id() == "disgust5";
  };
  try {
    SplitCorpus(docs, opt, qualifies);
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("disgust"), std::string::npos) << what;
    EXPECT_EQ(what.find("joy"), std::string::npos) << what;
  }
}

TEST(SplitCorpusTest, RejectsBadInput) {
  auto docs = LabeledCorpus(2);
  SplitOptions opt;
  opt.train_fraction = 0.5;
  opt.test_fraction = 0.4;
  const auto any = [](const Document&) { return true; };
  EXPECT_THROW(SplitCorpus(docs, opt, any), InputError);
  docs.push_back(DocumentFromText("u", "x", std::nullopt));
  EXPECT_THROW(SplitCorpus(docs, SplitOptions{}, any), InputError);
}

}  // namespace
}  // namespace emomod
