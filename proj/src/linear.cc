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

#include <algorithm>
#include <set>

#include <json.hpp>

#include "emomod/rng.h"

namespace emomod {

using json = nlohmann::json;

Vocabulary::Id Vocabulary::Intern(std::string_view feature) {
  const std::string key(feature);
  const auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<Id>(terms_.size());
  terms_.push_back(key);
  ids_.emplace(key, id);
  return id;
}

std::optional<Vocabulary::Id> Vocabulary::Find(std::string_view feature) const {
  const auto it = ids_.find(std::string(feature));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::FromTerms(std::vector<std::string> terms) {
  Vocabulary vocab;
  for (const std::string& t : terms) {
    if (vocab.Find(t)) throw InputError("duplicate vocabulary entry '" + t + "'");
    vocab.Intern(t);
  }
  return vocab;
}

FeatureVector::FeatureVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const Entry& e : entries) {
    if (!entries_.empty() && entries_.back().first == e.first) {
      entries_.back().second += e.second;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
}

FeatureVector Encode(const FeatureBag& bag, Vocabulary& vocab, bool grow) {
  std::vector<FeatureVector::Entry> entries;
  entries.reserve(bag.size());
  for (const auto& [name, value] : bag) {
    if (grow) {
      entries.emplace_back(vocab.Intern(name), value);
    } else if (const auto id = vocab.Find(name)) {
      entries.emplace_back(*id, value);
    }
  }
  return FeatureVector(std::move(entries));
}

FeatureVector Encode(const FeatureBag& bag, const Vocabulary& vocab) {
  std::vector<FeatureVector::Entry> entries;
  for (const auto& [name, value] : bag) {
    if (const auto id = vocab.Find(name)) entries.emplace_back(*id, value);
  }
  return FeatureVector(std::move(entries));
}

double LinearModel::Score(const FeatureVector& x) const {
  double s = bias;
  for (const auto& [id, value] : x.entries()) {
    if (id < weights.size()) s += weights[id] * value;
  }
  return s;
}

namespace {

double Label(bool y) { return y ? 1.0 : -1.0; }

void CheckBinaryData(std::span<const BinaryExample> data) {
  if (data.empty()) throw InputError("no training examples");
  const bool first = data.front().label;
  const bool mixed = std::any_of(data.begin(), data.end(),
                                 [first](const BinaryExample& e) {
                                   return e.label != first;
                                 });
  if (!mixed) {
    throw InputError("training data holds a single class");
  }
}

}  // namespace

double HingeObjective(const LinearModel& model,
                      std::span<const BinaryExample> data, double lambda) {
  double norm = model.bias * model.bias;
  for (double w : model.weights) norm += w * w;
  double loss = 0.0;
  for (const BinaryExample& e : data) {
    loss += std::max(0.0, 1.0 - Label(e.label) * model.Score(e.x));
  }
  if (!data.empty()) loss /= static_cast<double>(data.size());
  return 0.5 * lambda * norm + loss;
}

std::vector<double> HingeSubgradient(const LinearModel& model,
                                     std::span<const BinaryExample> data,
                                     double lambda) {
  const std::size_t dim = model.weights.size();
  std::vector<double> g(dim + 1, 0.0);
  for (std::size_t i = 0; i < dim; ++i) g[i] = lambda * model.weights[i];
  g[dim] = lambda * model.bias;
  const double scale = data.empty() ? 0.0 : 1.0 / static_cast<double>(data.size());
  for (const BinaryExample& e : data) {
    const double y = Label(e.label);
    if (1.0 - y * model.Score(e.x) <= 0.0) continue;
    for (const auto& [id, value] : e.x.entries()) {
      if (id < dim) g[id] -= scale * y * value;
    }
    g[dim] -= scale * y;
  }
  return g;
}

LinearModel TrainBinary(std::span<const BinaryExample> data, std::size_t dim,
                        const Hyperparameters& hyper, std::string task) {
  CheckBinaryData(data);
  if (!(hyper.lambda > 0.0)) throw InputError("lambda must be positive");
  if (hyper.epochs < 1) throw InputError("epochs must be at least 1");

  // w = scale * v keeps the per-step shrink O(1) for sparse inputs.
  std::vector<double> v(dim, 0.0);
  double vb = 0.0;
  double scale = 1.0;

  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(hyper.seed);

  LinearModel model;
  model.hyper = hyper;
  model.task = std::move(task);

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.Shuffle(order);
    for (const std::size_t idx : order) {
      const BinaryExample& e = data[idx];
      ++t;
      const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
      const double y = Label(e.label);
      double dot = vb;
      for (const auto& [id, value] : e.x.entries()) {
        if (id < dim) dot += v[id] * value;
      }
      const double margin = y * scale * dot;

      scale *= 1.0 - eta * hyper.lambda;
      if (scale == 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        for (const auto& [id, value] : e.x.entries()) {
          if (id < dim) v[id] += step * value;
        }
        vb += step;
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        vb *= scale;
        scale = 1.0;
      }
    }
    model.weights.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) model.weights[i] = scale * v[i];
    model.bias = scale * vb;
    model.loss_trace.push_back(HingeObjective(model, data, hyper.lambda));
  }
  return model;
}

BinaryClassifier TrainBinaryClassifier(
    const std::vector<std::pair<FeatureBag, bool>>& examples,
    const Hyperparameters& hyper, std::string task) {
  BinaryClassifier clf;
  std::vector<BinaryExample> data;
  data.reserve(examples.size());
  for (const auto& [bag, label] : examples) {
    data.push_back({Encode(bag, clf.vocab, /*grow=*/true), label});
  }
  clf.model = TrainBinary(data, clf.vocab.size(), hyper, std::move(task));
  return clf;
}

std::array<double, kNumEmotions> MulticlassModel::Scores(
    const FeatureVector& x) const {
  std::array<double, kNumEmotions> s{};
  for (std::size_t c = 0; c < kNumEmotions; ++c) s[c] = members[c].Score(x);
  return s;
}

MulticlassModel TrainMulticlassOvr(
    const std::vector<std::pair<FeatureBag, Emotion>>& examples,
    const Hyperparameters& hyper) {
  if (examples.empty()) throw InputError("no training examples");
  MulticlassModel model;
  std::vector<FeatureVector> vectors;
  vectors.reserve(examples.size());
  std::set<Emotion> present;
  for (const auto& [bag, label] : examples) {
    vectors.push_back(Encode(bag, model.vocab, /*grow=*/true));
    present.insert(label);
  }
  if (present.size() < 2) {
    throw InputError("one-vs-rest training needs at least two classes");
  }
  const std::size_t dim = model.vocab.size();
  for (Emotion e : kAllEmotions) {
    LinearModel& member = model.members[Index(e)];
    const std::string task = "ovr:" + std::string(EmotionName(e));
    if (!present.contains(e)) {
      member.weights.assign(dim, 0.0);
      member.hyper = hyper;
      member.task = task;
      member.degenerate = true;
      continue;
    }
    std::vector<BinaryExample> data;
    data.reserve(examples.size());
    for (std::size_t i = 0; i < examples.size(); ++i) {
      data.push_back({vectors[i], examples[i].second == e});
    }
    member = TrainBinary(data, dim, hyper, task);
  }
  return model;
}

Emotion PredictEmotion(const MulticlassModel& model, const FeatureVector& x) {
  const auto scores = model.Scores(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumEmotions; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<Emotion>(best);
}

Emotion PredictEmotion(const MulticlassModel& model, const FeatureBag& bag) {
  return PredictEmotion(model, Encode(bag, model.vocab));
}

FeatureBag FeaturizeBow(const Document& doc, const ScopeLabel& scope) {
  if (scope.size() != doc.size()) {
    throw InputError("scope of " + std::to_string(scope.size()) +
                     " tokens does not match document '" + doc.id() + "'");
  }
  FeatureBag bag;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string& word = doc.token(i).normalized;
    if (const auto& kind = scope.at(i)) {
      bag[std::string(ModifierKindAbbrev(*kind)) + "_" + word] += 1.0;
    } else {
      bag[word] += 1.0;
    }
  }
  return bag;
}

namespace {

json MetadataJson(const LinearModel& m) {
  return json{{"task", m.task},
              {"lambda", m.hyper.lambda},
              {"epochs", m.hyper.epochs},
              {"seed", m.hyper.seed},
              {"degenerate", m.degenerate}};
}

void ReadMetadata(const json& meta, LinearModel& m) {
  m.task = meta.value("task", std::string());
  m.hyper.lambda = meta.value("lambda", Hyperparameters{}.lambda);
  m.hyper.epochs = meta.value("epochs", Hyperparameters{}.epochs);
  m.hyper.seed = meta.value("seed", Hyperparameters{}.seed);
  m.degenerate = meta.value("degenerate", false);
}

template <typename Fn>
auto ParseModelJson(std::string_view text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad model file: ") + e.what());
  }
}

}  // namespace

std::string BinaryClassifierToJson(const BinaryClassifier& clf) {
  json j;
  j["vocabulary"] = clf.vocab.terms();
  j["weights"] = clf.model.weights;
  j["bias"] = clf.model.bias;
  j["metadata"] = MetadataJson(clf.model);
  return j.dump() + "\n";
}

BinaryClassifier BinaryClassifierFromJson(std::string_view text) {
  return ParseModelJson(text, [](const json& j) {
    BinaryClassifier clf;
    clf.vocab =
        Vocabulary::FromTerms(j.at("vocabulary").get<std::vector<std::string>>());
    clf.model.weights = j.at("weights").get<std::vector<double>>();
    clf.model.bias = j.at("bias").get<double>();
    ReadMetadata(j.at("metadata"), clf.model);
    if (clf.model.weights.size() != clf.vocab.size()) {
      throw InputError("model weights do not match vocabulary size");
    }
    return clf;
  });
}

std::string MulticlassModelToJson(const MulticlassModel& model) {
  json j;
  j["vocabulary"] = model.vocab.terms();
  json weights = json::array();
  json biases = json::array();
  json members = json::array();
  for (const LinearModel& m : model.members) {
    weights.push_back(m.weights);
    biases.push_back(m.bias);
    members.push_back(MetadataJson(m));
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  std::vector<std::string> order;
  for (Emotion e : kAllEmotions) order.emplace_back(EmotionName(e));
  j["metadata"] = json{{"emotion_order", order}, {"members", members}};
  return j.dump() + "\n";
}

MulticlassModel MulticlassModelFromJson(std::string_view text) {
  return ParseModelJson(text, [](const json& j) {
    MulticlassModel model;
    model.vocab =
        Vocabulary::FromTerms(j.at("vocabulary").get<std::vector<std::string>>());
    const json& weights = j.at("weights");
    const json& biases = j.at("biases");
    const json& members = j.at("metadata").at("members");
    if (weights.size() != kNumEmotions || biases.size() != kNumEmotions ||
        members.size() != kNumEmotions) {
      throw InputError("multiclass model must have six members");
    }
    for (std::size_t c = 0; c < kNumEmotions; ++c) {
      LinearModel& m = model.members[c];
      m.weights = weights[c].get<std::vector<double>>();
      m.bias = biases[c].get<double>();
      ReadMetadata(members[c], m);
      if (m.weights.size() != model.vocab.size()) {
        throw InputError("model weights do not match vocabulary size");
      }
    }
    return model;
  });
}

}  // namespace emomod
