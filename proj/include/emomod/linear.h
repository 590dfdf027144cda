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

#ifndef EMOMOD_LINEAR_H_
#define EMOMOD_LINEAR_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "emomod/corpus.h"
#include "emomod/scope_label.h"
#include "emomod/types.h"

namespace emomod {

// Feature name -> value, before interning.
using FeatureBag = std::map<std::string, double, std::less<>>;

// Interns feature strings to dense ids in first-seen order.
class Vocabulary {
 public:
  using Id = std::uint32_t;

  Id Intern(std::string_view feature);
  std::optional<Id> Find(std::string_view feature) const;

  const std::string& term(Id id) const { return terms_[id]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  static Vocabulary FromTerms(std::vector<std::string> terms);

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, Id> ids_;
};

// Sparse vector sorted by id, without zero entries.
class FeatureVector {
 public:
  using Entry = std::pair<Vocabulary::Id, double>;

  FeatureVector() = default;
  // Sorts, merges duplicate ids and drops zeros.
  explicit FeatureVector(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

// Encodes a bag. With `grow` unseen features are interned; otherwise they
// are dropped, so they contribute nothing to scores.
FeatureVector Encode(const FeatureBag& bag, Vocabulary& vocab, bool grow);
FeatureVector Encode(const FeatureBag& bag, const Vocabulary& vocab);

struct Hyperparameters {
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 42;
};

// w.x + b over a vocabulary. The bias is treated as the weight of a constant
// feature and is regularized along with the other weights.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  Hyperparameters hyper;
  std::string task;
  bool degenerate = false;           // trained without positive examples
  std::vector<double> loss_trace;    // objective after each epoch

  // Ids beyond the weight vector score 0.
  double Score(const FeatureVector& x) const;
};

struct BinaryExample {
  FeatureVector x;
  bool label = false;
};

// lambda/2 (|w|^2 + b^2) + mean_i max(0, 1 - y_i (w.x_i + b)).
double HingeObjective(const LinearModel& model,
                      std::span<const BinaryExample> data, double lambda);

// A subgradient of HingeObjective with respect to (w, b); the bias component
// is the last element. At a hinge kink the zero branch is taken.
std::vector<double> HingeSubgradient(const LinearModel& model,
                                     std::span<const BinaryExample> data,
                                     double lambda);

// Pegasos-style stochastic subgradient descent on the regularized hinge loss,
// step size 1/(lambda t), examples reshuffled every epoch from `hyper.seed`.
// Throws InputError on empty or single-class data.
LinearModel TrainBinary(std::span<const BinaryExample> data, std::size_t dim,
                        const Hyperparameters& hyper,
                        std::string task = "binary");

// A binary model together with its own vocabulary.
struct BinaryClassifier {
  Vocabulary vocab;
  LinearModel model;

  double Score(const FeatureBag& bag) const {
    return model.Score(Encode(bag, vocab));
  }
  bool Predict(const FeatureBag& bag) const { return Score(bag) > 0.0; }
};

BinaryClassifier TrainBinaryClassifier(
    const std::vector<std::pair<FeatureBag, bool>>& examples,
    const Hyperparameters& hyper, std::string task = "binary");

// One-vs-rest emotion classifier: one member per emotion in canonical order,
// all over one vocabulary.
struct MulticlassModel {
  Vocabulary vocab;
  std::array<LinearModel, kNumEmotions> members;

  std::array<double, kNumEmotions> Scores(const FeatureVector& x) const;
};

// Members of classes absent from the data are all-zero and flagged
// degenerate. Throws InputError on empty data or fewer than two classes.
MulticlassModel TrainMulticlassOvr(
    const std::vector<std::pair<FeatureBag, Emotion>>& examples,
    const Hyperparameters& hyper);

// Argmax of the member scores; ties go to the lowest canonical index.
Emotion PredictEmotion(const MulticlassModel& model, const FeatureVector& x);
Emotion PredictEmotion(const MulticlassModel& model, const FeatureBag& bag);

// Unigram counts over normalized tokens; a token labeled with kind k counts
// as "<abbrev(k)>_<token>" instead of the bare token.
FeatureBag FeaturizeBow(const Document& doc, const ScopeLabel& scope);

std::string BinaryClassifierToJson(const BinaryClassifier& clf);
BinaryClassifier BinaryClassifierFromJson(std::string_view json);
std::string MulticlassModelToJson(const MulticlassModel& model);
MulticlassModel MulticlassModelFromJson(std::string_view json);

}  // namespace emomod

#endif  // EMOMOD_LINEAR_H_
