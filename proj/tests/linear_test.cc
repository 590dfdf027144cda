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

#include "emomod/linear.h"

#include <gtest/gtest.h>

#include <cmath>

#include "emomod/rng.h"

namespace emomod {
namespace {

TEST(FeaturizeBowTest, PlainCounts) {
  const Document doc = DocumentFromText("d", "I am not happy, not at all", {});
  const FeatureBag bag = FeaturizeBow(doc, ScopeLabel(doc.size()));
  EXPECT_EQ(bag.at("not"), 2.0);
  EXPECT_EQ(bag.at("happy"), 1.0);
  EXPECT_EQ(bag.at(","), 1.0);
  EXPECT_EQ(bag.size(), 7u);
}

TEST(FeaturizeBowTest, ScopedTokensArePrefixed) {
  const Document doc = DocumentFromText("d", "not happy and happy", {});
  ScopeLabel scope(doc.size());
  scope.Set(1, ModifierKind::kNegation);
  const FeatureBag bag = FeaturizeBow(doc, scope);
  EXPECT_EQ(bag.at("neg_happy"), 1.0);
  EXPECT_EQ(bag.at("happy"), 1.0);
  EXPECT_EQ(bag.count("not"), 1u);

  ScopeLabel amp(doc.size());
  amp.Set(3, ModifierKind::kAmplifier);
  amp.Set(1, ModifierKind::kDowntoner);
  const FeatureBag bag2 = FeaturizeBow(doc, amp);
  EXPECT_EQ(bag2.at("amp_happy"), 1.0);
  EXPECT_EQ(bag2.at("down_happy"), 1.0);
  EXPECT_EQ(bag2.count("happy"), 0u);
}

TEST(FeaturizeBowTest, MassEqualsTokenCountAndOrderFree) {
  Rng rng(11);
  const std::vector<std::string> words = {"a", "b", "c", "happy", "sad"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> picked;
    const std::size_t n = 1 + rng.UniformInt(12);
    for (std::size_t i = 0; i < n; ++i) {
      picked.push_back(words[rng.UniformInt(words.size())]);
    }
    std::string text;
    for (const auto& w : picked) text += w + " ";
    const Document doc = DocumentFromText("d", text, {});
    ScopeLabel scope(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (rng.UniformInt(3) == 0) {
        scope.Set(i, static_cast<ModifierKind>(rng.UniformInt(3)));
      }
    }
    const FeatureBag bag = FeaturizeBow(doc, scope);
    double mass = 0.0;
    for (const auto& [key, value] : bag) mass += value;
    EXPECT_EQ(mass, static_cast<double>(doc.size()));

    rng.Shuffle(picked);
    std::string shuffled;
    for (const auto& w : picked) shuffled += w + " ";
    const Document doc2 = DocumentFromText("d", shuffled, {});
    EXPECT_EQ(FeaturizeBow(doc2, ScopeLabel(doc2.size())),
              FeaturizeBow(doc, ScopeLabel(doc.size())));
  }
}

TEST(FeaturizeBowTest, SizeMismatchThrows) {
  const Document doc = DocumentFromText("d", "a b", {});
  EXPECT_THROW(FeaturizeBow(doc, ScopeLabel(3)), InputError);
}

TEST(FeatureVectorTest, SortsMergesDropsZeros) {
  const FeatureVector v({{3, 1.0}, {1, 2.0}, {3, -1.0}, {2, 0.0}, {1, 1.0}});
  ASSERT_EQ(v.nnz(), 1u);
  EXPECT_EQ(v.entries()[0], (FeatureVector::Entry{1, 3.0}));
}

TEST(EncodeTest, UnseenFeaturesDroppedWithoutGrow) {
  Vocabulary vocab;
  Encode({{"a", 1.0}}, vocab, true);
  const FeatureVector v = Encode({{"a", 2.0}, {"zzz", 5.0}}, vocab);
  EXPECT_EQ(vocab.size(), 1u);
  ASSERT_EQ(v.nnz(), 1u);
  EXPECT_EQ(v.entries()[0].second, 2.0);
}

std::vector<std::pair<FeatureBag, bool>> SeparableData() {
  std::vector<std::pair<FeatureBag, bool>> data;
  for (int i = 0; i < 50; ++i) {
    data.push_back({{{"good", 1.0}, {"filler", 1.0}}, true});
    data.push_back({{{"bad", 1.0}, {"filler", 1.0}}, false});
  }
  return data;
}

TEST(TrainBinaryTest, SeparableDataIsFit) {
  const BinaryClassifier clf = TrainBinaryClassifier(SeparableData(), {});
  for (const auto& [bag, label] : SeparableData()) {
    EXPECT_EQ(clf.Predict(bag), label);
  }
  ASSERT_EQ(clf.model.loss_trace.size(), 20u);
  EXPECT_LT(clf.model.loss_trace.back(), 1.0);
  EXPECT_FALSE(clf.model.degenerate);
}

TEST(TrainBinaryTest, DeterministicInSeed) {
  const BinaryClassifier a = TrainBinaryClassifier(SeparableData(), {});
  const BinaryClassifier b = TrainBinaryClassifier(SeparableData(), {});
  EXPECT_EQ(a.model.weights, b.model.weights);
  EXPECT_EQ(a.model.bias, b.model.bias);
  EXPECT_EQ(a.vocab.terms(), b.vocab.terms());
}

TEST(TrainBinaryTest, RejectsEmptyAndSingleClass) {
  EXPECT_THROW(TrainBinaryClassifier({}, {}), InputError);
  EXPECT_THROW(TrainBinaryClassifier({{{{"a", 1.0}}, true}}, {}), InputError);
}

// Best training accuracy of any sign(w1 x1 + w2 x2 + b) on XOR, found by
// a grid search; a linear separator gets at most three of four points.
double XorOracle() {
  const int xs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const bool ys[4] = {false, true, true, false};
  int best = 0;
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      for (int c = -8; c <= 8; ++c) {
        int correct = 0;
        for (int k = 0; k < 4; ++k) {
          const double s = a * xs[k][0] + b * xs[k][1] + c * 0.5 + 0.25;
          correct += (s > 0) == ys[k];
        }
        best = std::max(best, correct);
      }
    }
  }
  return best / 4.0;
}

TEST(TrainBinaryTest, XorIsNotLinearlySeparable) {
  const double oracle = XorOracle();
  EXPECT_EQ(oracle, 0.75);
  std::vector<std::pair<FeatureBag, bool>> data;
  for (int rep = 0; rep < 25; ++rep) {
    data.push_back({{}, false});
    data.push_back({{{"x2", 1.0}}, true});
    data.push_back({{{"x1", 1.0}}, true});
    data.push_back({{{"x1", 1.0}, {"x2", 1.0}}, false});
  }
  const BinaryClassifier clf = TrainBinaryClassifier(data, {});
  int correct = 0;
  for (const auto& [bag, label] : data) correct += clf.Predict(bag) == label;
  EXPECT_LE(correct / static_cast<double>(data.size()), oracle);
}

TEST(HingeTest, ObjectiveAtZeroIsOne) {
  LinearModel model;
  model.weights = {0.0, 0.0};
  const std::vector<BinaryExample> data = {
      {FeatureVector({{0, 1.0}}), true}, {FeatureVector({{1, 1.0}}), false}};
  EXPECT_DOUBLE_EQ(HingeObjective(model, data, 0.1), 1.0);
}

TEST(HingeTest, SubgradientMatchesFiniteDifferences) {
  Rng rng(3);
  constexpr std::size_t kDim = 5;
  std::vector<BinaryExample> data;
  for (int i = 0; i < 30; ++i) {
    std::vector<FeatureVector::Entry> entries;
    for (std::size_t d = 0; d < kDim; ++d) {
      if (rng.UniformInt(2)) entries.push_back({d, rng.Normal()});
    }
    data.push_back({FeatureVector(entries), rng.UniformInt(2) == 1});
  }
  const double lambda = 0.05;
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 10; ++trial) {
    LinearModel model;
    for (std::size_t d = 0; d < kDim; ++d) model.weights.push_back(rng.Normal());
    model.bias = rng.Normal();
    bool near_kink = false;
    for (const auto& ex : data) {
      const double y = ex.label ? 1.0 : -1.0;
      if (std::abs(1.0 - y * model.Score(ex.x)) < 1e-3) near_kink = true;
    }
    if (near_kink) continue;
    ++checked;
    const std::vector<double> g = HingeSubgradient(model, data, lambda);
    ASSERT_EQ(g.size(), kDim + 1);
    const double h = 1e-6;
    for (std::size_t d = 0; d <= kDim; ++d) {
      LinearModel plus = model, minus = model;
      double& p = d < kDim ? plus.weights[d] : plus.bias;
      double& m = d < kDim ? minus.weights[d] : minus.bias;
      p += h;
      m -= h;
      const double numeric = (HingeObjective(plus, data, lambda) -
                              HingeObjective(minus, data, lambda)) /
                             (2 * h);
      EXPECT_NEAR(g[d], numeric, 1e-4 * std::max(1.0, std::abs(numeric)));
    }
  }
  EXPECT_EQ(checked, 10);
}

std::vector<std::pair<FeatureBag, Emotion>> MulticlassData() {
  std::vector<std::pair<FeatureBag, Emotion>> data;
  for (int i = 0; i < 30; ++i) {
    data.push_back({{{"happy", 1.0}}, Emotion::kJoy});
    data.push_back({{{"angry", 1.0}}, Emotion::kAnger});
    data.push_back({{{"scared", 1.0}}, Emotion::kFear});
  }
  return data;
}

TEST(MulticlassTest, OneVsRestFitsAndMarksAbsentClasses) {
  const MulticlassModel model = TrainMulticlassOvr(MulticlassData(), {});
  EXPECT_EQ(PredictEmotion(model, FeatureBag{{"happy", 1.0}}), Emotion::kJoy);
  EXPECT_EQ(PredictEmotion(model, FeatureBag{{"angry", 1.0}}),
            Emotion::kAnger);
  EXPECT_EQ(PredictEmotion(model, FeatureBag{{"scared", 1.0}}),
            Emotion::kFear);
  EXPECT_TRUE(model.members[Index(Emotion::kSadness)].degenerate);
  EXPECT_FALSE(model.members[Index(Emotion::kJoy)].degenerate);
  EXPECT_THROW(TrainMulticlassOvr({}, {}), InputError);
  EXPECT_THROW(TrainMulticlassOvr({{{{"a", 1.0}}, Emotion::kJoy}}, {}),
               InputError);
}

TEST(MulticlassTest, TiesGoToLowestIndex) {
  MulticlassModel model;
  for (auto& m : model.members) m.weights = {};
  EXPECT_EQ(PredictEmotion(model, FeatureVector()), Emotion::kJoy);
  model.members[Index(Emotion::kFear)].bias = 1.0;
  model.members[Index(Emotion::kDisgust)].bias = 1.0;
  EXPECT_EQ(PredictEmotion(model, FeatureVector()), Emotion::kFear);
}

TEST(JsonTest, BinaryRoundTripIsExact) {
  const BinaryClassifier clf = TrainBinaryClassifier(SeparableData(), {});
  const BinaryClassifier back =
      BinaryClassifierFromJson(BinaryClassifierToJson(clf));
  EXPECT_EQ(back.model.weights, clf.model.weights);
  EXPECT_EQ(back.model.bias, clf.model.bias);
  EXPECT_EQ(back.vocab.terms(), clf.vocab.terms());
}

TEST(JsonTest, MulticlassRoundTripIsExact) {
  const MulticlassModel model = TrainMulticlassOvr(MulticlassData(), {});
  const MulticlassModel back =
      MulticlassModelFromJson(MulticlassModelToJson(model));
  EXPECT_EQ(back.vocab.terms(), model.vocab.terms());
  for (std::size_t k = 0; k < kNumEmotions; ++k) {
    EXPECT_EQ(back.members[k].weights, model.members[k].weights);
    EXPECT_EQ(back.members[k].bias, model.members[k].bias);
  }
  EXPECT_THROW(MulticlassModelFromJson("{"), InputError);
}

}  // namespace
}  // namespace emomod
