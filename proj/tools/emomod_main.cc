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

// Command-line driver for the modifier-aware emotion classification pipeline.
//
// Every subcommand reads its settings from flags and, optionally, from an INI
// file given with --config whose [section] names match subcommands. Flags win
// over the file. Outputs go to <runs-dir>/<subcommand>-<hash>, where the hash
// covers the effective settings of the subcommand.

#include <openssl/sha.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emomod/corpus.h"
#include "emomod/evaluation.h"
#include "emomod/lexical_model.h"
#include "emomod/lexicons.h"
#include "emomod/linear.h"
#include "emomod/scope.h"
#include "emomod/text_util.h"
#include "emomod/types.h"

namespace emomod {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

// Settings shared by all subcommands.
struct Common {
  std::string runs_dir = "runs";
};

void SetUpLogging() {
  auto logger = spdlog::stderr_logger_mt("emomod");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("EMOMOD_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

std::string HexDigest(const std::string& text) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(),
         digest);
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 6; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

// Creates the run directory named by the subcommand's effective settings.
fs::path MakeRunDir(const Common& common, const CLI::App& sub) {
  const std::string settings = sub.config_to_str(true, false);
  const fs::path dir =
      fs::path(common.runs_dir) / (sub.get_name() + "-" + HexDigest(settings));
  fs::create_directories(dir);
  WriteFile((dir / "config.ini").string(),
            "[" + sub.get_name() + "]\n" + settings);
  spdlog::info("run directory {}", dir.string());
  std::printf("run directory: %s\n", dir.string().c_str());
  return dir;
}

enum class ScopeMethod { kNone, kNextN, kDepTree, kClassifier };

const std::map<std::string, ScopeMethod>& MethodNames() {
  static const std::map<std::string, ScopeMethod> names = {
      {"none", ScopeMethod::kNone},
      {"next_n", ScopeMethod::kNextN},
      {"dep_tree", ScopeMethod::kDepTree},
      {"classifier", ScopeMethod::kClassifier}};
  return names;
}

// Scope-detection inputs shared by several subcommands.
struct ScopeSettings {
  std::string cues_dir;
  std::string method = "next_n";
  int n = kDefaultNextN;
  std::string scope_models_dir;
  std::string emotions_path;
};

void AddScopeOptions(CLI::App* sub, ScopeSettings* s, bool allow_none) {
  std::vector<std::string> methods = {"next_n", "dep_tree", "classifier"};
  if (allow_none) methods.insert(methods.begin(), "none");
  sub->add_option("--cues", s->cues_dir,
                  "Directory with negation.txt, amplifier.txt, downtoner.txt")
      ->check(CLI::ExistingDirectory);
  sub->add_option("--method", s->method, "Scope detection method")
      ->check(CLI::IsMember(methods))
      ->capture_default_str();
  sub->add_option("--n", s->n, "Window size of next-n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--scope-models", s->scope_models_dir,
                  "Directory of scope classifiers from train-scope-clf")
      ->check(CLI::ExistingDirectory);
  sub->add_option("--emotions", s->emotions_path,
                  "Emotion lexicon TSV (term, emotion, flag)")
      ->check(CLI::ExistingFile);
}

CueLexicon RequireCues(const ScopeSettings& s) {
  if (s.cues_dir.empty()) throw InputError("--cues is required");
  return LoadCueLexiconDir(s.cues_dir);
}

EmotionLexicon RequireEmotions(const std::string& path) {
  if (path.empty()) throw InputError("--emotions is required");
  return LoadEmotionLexicon(path);
}

ScopeModels LoadScopeModels(const std::string& dir) {
  if (dir.empty()) {
    throw InputError("--scope-models is required for the classifier method");
  }
  ScopeModels models;
  for (ModifierKind kind : kAllModifierKinds) {
    const fs::path file =
        fs::path(dir) / (std::string(ModifierKindName(kind)) + ".json");
    models[Index(kind)] = BinaryClassifierFromJson(ReadFile(file.string()));
  }
  return models;
}

// Runs the configured method over every document.
std::vector<ScopeLabel> DetectScopes(const std::vector<Document>& docs,
                                     const ScopeSettings& s,
                                     const std::string& method) {
  const ScopeMethod m = MethodNames().at(method);
  std::vector<ScopeLabel> scopes;
  scopes.reserve(docs.size());
  if (m == ScopeMethod::kNone) {
    for (const Document& d : docs) scopes.emplace_back(d.size());
    return scopes;
  }
  const CueLexicon cues = RequireCues(s);
  if (m == ScopeMethod::kDepTree || m == ScopeMethod::kClassifier) {
    for (const Document& d : docs) {
      if (!d.has_dependencies()) {
        throw InputError("dependencies required: method " + method +
                         " needs a CoNLL-U corpus");
      }
    }
  }
  std::optional<ScopeModels> models;
  EmotionLexicon emotions;
  if (m == ScopeMethod::kClassifier) {
    models = LoadScopeModels(s.scope_models_dir);
    emotions = RequireEmotions(s.emotions_path);
  }
  for (const Document& d : docs) {
    switch (m) {
      case ScopeMethod::kNextN:
        scopes.push_back(NextNScope(d, cues, s.n));
        break;
      case ScopeMethod::kDepTree:
        scopes.push_back(DepTreeScope(d, cues));
        break;
      case ScopeMethod::kClassifier:
        scopes.push_back(ClassifierScope(d, cues, *models, emotions));
        break;
      case ScopeMethod::kNone:
        break;
    }
  }
  spdlog::debug("detected scopes for {} documents with {}", docs.size(),
                method);
  return scopes;
}

struct CorpusSettings {
  std::string corpus;
  std::string hashtags;
  std::string split;
};

void AddCorpusOptions(CLI::App* sub, CorpusSettings* c, bool with_split) {
  sub->add_option("--corpus", c->corpus, "Corpus (.conllu or JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--hashtags", c->hashtags,
                  "Hashtag map for self-labeling raw JSON lines")
      ->check(CLI::ExistingFile);
  if (with_split) {
    sub->add_option("--split", c->split, "split.json from the split command")
        ->check(CLI::ExistingFile);
  }
}

std::vector<Document> LoadDocs(const CorpusSettings& c) {
  std::optional<HashtagMap> map;
  if (!c.hashtags.empty()) map = LoadHashtagMap(c.hashtags);
  std::vector<Document> docs =
      LoadCorpus(c.corpus, map ? &*map : nullptr, map.has_value());
  spdlog::info("loaded {} documents from {}", docs.size(), c.corpus);
  return docs;
}

enum class Part { kTrain, kTest, kBalanced };

std::vector<Document> SelectPart(const std::vector<Document>& docs,
                                 const CorpusSettings& c, Part part) {
  if (c.split.empty()) return docs;
  const CorpusSplit split = SplitFromJson(ReadFile(c.split));
  const std::vector<std::string>& ids = part == Part::kTrain ? split.train_repr
                                        : part == Part::kTest
                                            ? split.test_repr
                                            : split.train_balanced;
  if (ids.empty()) throw InputError("split " + c.split + " selects no documents");
  return SelectDocuments(docs, ids);
}

std::vector<Emotion> RequireLabels(const std::vector<Document>& docs) {
  if (docs.empty()) throw InputError("corpus is empty");
  std::vector<Emotion> labels;
  labels.reserve(docs.size());
  for (const Document& d : docs) {
    if (!d.label()) throw InputError("document '" + d.id() + "' is unlabeled");
    labels.push_back(*d.label());
  }
  return labels;
}

void WriteOut(const fs::path& dir, const std::string& name,
              const std::string& contents) {
  WriteFile((dir / name).string(), contents);
  spdlog::info("wrote {}", (dir / name).string());
}

void AddHyperOptions(CLI::App* sub, Hyperparameters* h) {
  sub->add_option("--lambda", h->lambda, "Regularization strength")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--epochs", h->epochs, "Passes over the training data")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", h->seed, "Shuffling seed")->capture_default_str();
}

// ---------------------------------------------------------------- commands

struct FilterCuesArgs {
  std::string candidates;
  std::string samples;
  double threshold = kDefaultCueThreshold;
};

void RunFilterCues(const FilterCuesArgs& a, const fs::path& dir) {
  const CueLexicon lexicon =
      FilterCues(LoadCueCandidates(a.candidates),
                 a.samples.empty()
                     ? std::map<std::string, UsageSample, std::less<>>{}
                     : LoadUsageSamples(a.samples),
                 a.threshold);
  WriteCueLexiconDir(lexicon, dir.string());
  for (ModifierKind kind : kAllModifierKinds) {
    std::printf("%-10s %zu\n", std::string(ModifierKindName(kind)).c_str(),
                lexicon.CountOf(kind));
  }
}

// Parses "a..b" or a single integer.
std::pair<int, int> ParseRange(const std::string& text) {
  const std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("bad range '" + text + "', expected e.g. 1..12");
  }
}

struct DetectScopeArgs {
  CorpusSettings corpus;
  ScopeSettings scope;
  std::string sweep;
  std::string gold;
};

void RunDetectScope(const DetectScopeArgs& a, const fs::path& dir) {
  const std::vector<Document> docs = LoadDocs(a.corpus);
  if (!a.sweep.empty()) {
    if (a.gold.empty()) throw InputError("--sweep-n needs --gold pairs");
    const auto [lo, hi] = ParseRange(a.sweep);
    const auto sweep = SweepNextN(docs, RequireCues(a.scope),
                                  LoadScopePairs(a.gold), lo, hi);
    const std::string table = RenderSweep(sweep);
    WriteOut(dir, "sweep.tsv", table);
    std::fputs(table.c_str(), stdout);
    return;
  }
  const std::vector<ScopeLabel> scopes =
      DetectScopes(docs, a.scope, a.scope.method);
  WriteOut(dir, "scopes.jsonl", ScopesToJsonl(docs, scopes));
  std::size_t labeled = 0;
  for (const ScopeLabel& s : scopes) labeled += s.Labeled().size();
  std::printf("documents: %zu\nlabeled tokens: %zu\n", docs.size(), labeled);
}

struct EvalScopeArgs {
  std::string gold;
  std::vector<std::string> predicted;
  std::vector<std::string> methods;
  CorpusSettings corpus;
  ScopeSettings scope;
};

void RunEvalScope(const EvalScopeArgs& a, const fs::path& dir) {
  const std::vector<ScopePair> gold = LoadScopePairs(a.gold);
  std::vector<std::string> titles;
  std::vector<EvalReport> reports;
  for (const std::string& path : a.predicted) {
    titles.push_back(fs::path(path).stem().string());
    reports.push_back(EvaluateScope(ParseScopesJsonl(ReadFile(path), path), gold));
  }
  if (!a.methods.empty()) {
    if (a.corpus.corpus.empty()) throw InputError("--method needs --corpus");
    const std::vector<Document> docs = LoadDocs(a.corpus);
    for (const std::string& method : a.methods) {
      const std::vector<ScopeLabel> scopes = DetectScopes(docs, a.scope, method);
      std::map<std::string, ScopeLabel> predicted;
      for (std::size_t i = 0; i < docs.size(); ++i) {
        predicted[docs[i].id()] = scopes[i];
      }
      titles.push_back(method);
      reports.push_back(EvaluateScope(predicted, gold));
    }
  }
  if (reports.empty()) throw InputError("give --predicted files or --method");
  const std::string table = RenderSideBySide(titles, reports);
  std::string json = "{";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    json += (i ? ",\n\"" : "\n\"") + titles[i] + "\": " + ReportToJson(reports[i]);
  }
  json += "}\n";
  WriteOut(dir, "report.txt", table);
  WriteOut(dir, "report.json", json);
  std::fputs(table.c_str(), stdout);
}

struct TrainScopeClfArgs {
  std::string corpus;
  std::string pairs;
  std::string cues_dir;
  Hyperparameters hyper;
};

void RunTrainScopeClf(const TrainScopeClfArgs& a, const fs::path& dir) {
  const std::vector<Document> docs = LoadConllu(a.corpus);
  const CueLexicon cues = LoadCueLexiconDir(a.cues_dir);
  const std::vector<ScopePair> pairs = LoadScopePairs(a.pairs);
  for (ModifierKind kind : kAllModifierKinds) {
    std::vector<ScopePair> of_kind;
    for (const ScopePair& p : pairs) {
      if (p.kind == kind) of_kind.push_back(p);
    }
    const BinaryClassifier clf =
        TrainScopeClassifier(of_kind, docs, cues, kind, a.hyper);
    WriteOut(dir, std::string(ModifierKindName(kind)) + ".json",
             BinaryClassifierToJson(clf));
    std::printf("%-10s pairs=%zu features=%zu\n",
                std::string(ModifierKindName(kind)).c_str(), of_kind.size(),
                clf.vocab.size());
  }
}

struct BowArgs {
  CorpusSettings corpus;
  ScopeSettings scope;
  Hyperparameters hyper;
  std::string models_dir;
};

std::vector<std::pair<FeatureBag, Emotion>> BowExamples(
    const std::vector<Document>& docs, const std::vector<ScopeLabel>& scopes,
    const std::vector<Emotion>& labels) {
  std::vector<std::pair<FeatureBag, Emotion>> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.emplace_back(FeaturizeBow(docs[i], scopes[i]), labels[i]);
  }
  return out;
}

void RunTrainBow(const BowArgs& a, const fs::path& dir) {
  const std::vector<Document> docs =
      SelectPart(LoadDocs(a.corpus), a.corpus, Part::kTrain);
  const std::vector<Emotion> labels = RequireLabels(docs);
  const std::vector<ScopeLabel> empty = DetectScopes(docs, a.scope, "none");
  const std::vector<ScopeLabel> scoped =
      DetectScopes(docs, a.scope, a.scope.method);
  WriteOut(dir, "plain.json",
           MulticlassModelToJson(
               TrainMulticlassOvr(BowExamples(docs, empty, labels), a.hyper)));
  WriteOut(dir, "scoped.json",
           MulticlassModelToJson(
               TrainMulticlassOvr(BowExamples(docs, scoped, labels), a.hyper)));
  std::printf("trained on %zu documents\n", docs.size());
}

std::vector<Emotion> PredictAll(const MulticlassModel& model,
                                const std::vector<Document>& docs,
                                const std::vector<ScopeLabel>& scopes) {
  std::vector<Emotion> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.push_back(PredictEmotion(model, FeaturizeBow(docs[i], scopes[i])));
  }
  return out;
}

void RunEvalBow(const BowArgs& a, const fs::path& dir) {
  if (a.models_dir.empty()) throw InputError("--models is required");
  const std::vector<Document> docs =
      SelectPart(LoadDocs(a.corpus), a.corpus, Part::kTest);
  const std::vector<Emotion> golds = RequireLabels(docs);
  const std::vector<ScopeLabel> empty = DetectScopes(docs, a.scope, "none");
  const std::vector<ScopeLabel> scoped =
      DetectScopes(docs, a.scope, a.scope.method);
  const MulticlassModel plain = MulticlassModelFromJson(
      ReadFile((fs::path(a.models_dir) / "plain.json").string()));
  const MulticlassModel with = MulticlassModelFromJson(
      ReadFile((fs::path(a.models_dir) / "scoped.json").string()));
  const std::vector<Emotion> p_plain = PredictAll(plain, docs, empty);
  const std::vector<Emotion> p_with = PredictAll(with, docs, scoped);

  std::string text;
  std::string json = "{\n\"all\": {\"without\": ";
  const EvalReport all_plain = Report(Confusion(golds, p_plain));
  const EvalReport all_with = Report(Confusion(golds, p_with));
  const ReportDelta all_delta = CompareReports(all_plain, all_with);
  text += "all data\n" + RenderComparison(all_plain, all_with) +
          RenderDelta(all_delta);
  json += ReportToJson(all_plain) + ", \"with\": " + ReportToJson(all_with) +
          ", \"delta\": " + DeltaToJson(all_delta) + "}";
  for (ModifierKind kind : kAllModifierKinds) {
    // Subsets are defined by the detected scopes for both models.
    const EvalReport s_plain = SubsetEval(docs, scoped, golds, p_plain, kind);
    const EvalReport s_with = SubsetEval(docs, scoped, golds, p_with, kind);
    const std::string name(ModifierKindName(kind));
    text += "\n" + name + " subset (" + std::to_string(s_plain.size) +
            " documents)\n";
    if (s_plain.empty_subset) {
      text += "empty subset\n";
    } else {
      text += RenderComparison(s_plain, s_with);
    }
    json += ",\n\"" + name + "\": {\"without\": " + ReportToJson(s_plain) +
            ", \"with\": " + ReportToJson(s_with) +
            ", \"delta\": " + DeltaToJson(CompareReports(s_plain, s_with)) + "}";
  }
  json += "\n}\n";
  WriteOut(dir, "report.txt", text);
  WriteOut(dir, "report.json", json);
  std::fputs(text.c_str(), stdout);
}

struct LexModelArgs {
  CorpusSettings corpus;
  ScopeSettings scope;
  HillClimbConfig climb;
};

std::vector<LabeledCounts> CountsFor(const std::vector<Document>& docs,
                                     const std::vector<ScopeLabel>& scopes,
                                     const EmotionLexicon& emotions) {
  const std::vector<Emotion> labels = RequireLabels(docs);
  std::vector<LabeledCounts> out;
  out.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out.push_back({CountEmotionWords(docs[i], scopes[i], emotions), labels[i]});
  }
  return out;
}

std::string TraceTsv(const HillClimbResult& r) {
  std::string out =
      "slice\trestart\tepoch\tproposed\tobjective\taccepted\tsince_improvement\n";
  for (const TraceEntry& t : r.trace) {
    out += std::string(ModificationName(t.slice)) + "\t" +
           std::to_string(t.restart) + "\t" + std::to_string(t.epoch) + "\t" +
           FormatExact(t.proposed) + "\t" + FormatExact(t.objective) + "\t" +
           (t.accepted ? "1" : "0") + "\t" +
           std::to_string(t.since_improvement) + "\n";
  }
  return out;
}

void RunTrainLexModel(const LexModelArgs& a, const fs::path& dir) {
  const EmotionLexicon emotions = RequireEmotions(a.scope.emotions_path);
  const std::vector<Document> all = LoadDocs(a.corpus);
  const std::vector<Document> train = SelectPart(all, a.corpus, Part::kBalanced);
  const std::vector<LabeledCounts> data =
      CountsFor(train, DetectScopes(train, a.scope, a.scope.method), emotions);
  const HillClimbResult r = HillClimb(data, a.climb);
  for (const std::string& w : r.warnings) spdlog::warn("{}", w);
  WriteOut(dir, "tensor.json",
           TensorToJson(r.tensor, {a.climb.seed, r.objective, r.total_epochs}));
  WriteOut(dir, "trace.tsv", TraceTsv(r));
  WriteOut(dir, "matrices.tsv", ExportMatrices(r.tensor));
  std::printf("training documents: %zu\ntraining macro-F1: %.4f\nepochs: %lld\n",
              data.size(), r.objective,
              static_cast<long long>(r.total_epochs));
  if (!a.corpus.split.empty()) {
    const std::vector<Document> test = SelectPart(all, a.corpus, Part::kTest);
    const std::vector<LabeledCounts> held =
        CountsFor(test, DetectScopes(test, a.scope, a.scope.method), emotions);
    std::printf("test macro-F1: %.4f\n", MacroF1(r.tensor, held));
  }
}

struct InspectArgs {
  std::string tensor;
};

void RunInspect(const InspectArgs& a, const fs::path& dir) {
  const WeightTensor t = TensorFromJson(ReadFile(a.tensor));
  const InspectionReport r = Inspect(t);
  WriteOut(dir, "heatmap.tsv", ExportMatrices(t));
  WriteOut(dir, "inspection.json", InspectionToJson(r));
  std::fputs(RenderInspection(r).c_str(), stdout);
}

struct SplitArgs {
  CorpusSettings corpus;
  SplitOptions options;
  std::string cues_dir;
  std::string emotions_path;
};

void RunSplit(const SplitArgs& a, const fs::path& dir) {
  const std::vector<Document> docs = LoadDocs(a.corpus);
  RequireLabels(docs);
  std::function<bool(const Document&)> qualifies = [](const Document&) {
    return true;
  };
  std::optional<CueLexicon> cues;
  std::optional<EmotionLexicon> emotions;
  if (!a.cues_dir.empty() || !a.emotions_path.empty()) {
    if (a.cues_dir.empty() || a.emotions_path.empty()) {
      throw InputError("--cues and --emotions go together");
    }
    cues = LoadCueLexiconDir(a.cues_dir);
    emotions = LoadEmotionLexicon(a.emotions_path);
    qualifies = [&](const Document& d) {
      return HasEmotionAndCue(d, *emotions, *cues);
    };
  }
  const CorpusSplit split = SplitCorpus(docs, a.options, qualifies);
  WriteOut(dir, "split.json", SplitToJson(split));
  std::printf("train: %zu\ntest: %zu\nbalanced: %zu\n", split.train_repr.size(),
              split.test_repr.size(), split.train_balanced.size());
}

int Main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Modifier-aware emotion classification pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with one [section] per subcommand");
  Common common;
  app.add_option("--runs-dir", common.runs_dir,
                 "Parent directory of run directories")
      ->capture_default_str();

  FilterCuesArgs fc;
  CLI::App* fc_cmd =
      app.add_subcommand("filter-cues", "Filter cue candidates by usage ratio");
  fc_cmd->add_option("--candidates", fc.candidates,
                     "TSV term, kind, optional trusted flag")
      ->required()
      ->check(CLI::ExistingFile);
  fc_cmd->add_option("--samples", fc.samples,
                     "TSV term, doc_id, 0|1 usage judgments")
      ->check(CLI::ExistingFile);
  fc_cmd->add_option("--threshold", fc.threshold,
                     "Keep terms whose modifier ratio is above this")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  DetectScopeArgs ds;
  CLI::App* ds_cmd =
      app.add_subcommand("detect-scope", "Label modifier scopes in a corpus");
  AddCorpusOptions(ds_cmd, &ds.corpus, false);
  AddScopeOptions(ds_cmd, &ds.scope, false);
  ds_cmd->add_option("--sweep-n", ds.sweep,
                     "Evaluate next-n for a range of n, e.g. 1..12");
  ds_cmd->add_option("--gold", ds.gold, "Gold scope pairs TSV")
      ->check(CLI::ExistingFile);

  EvalScopeArgs es;
  CLI::App* es_cmd =
      app.add_subcommand("eval-scope", "Score scopes against gold pairs");
  es_cmd->add_option("--gold", es.gold, "Gold scope pairs TSV")
      ->required()
      ->check(CLI::ExistingFile);
  es_cmd->add_option("--predicted", es.predicted,
                     "Scope JSON-lines files; one column group each")
      ->check(CLI::ExistingFile);
  es_cmd->add_option("--methods", es.methods,
                     "Methods to run on --corpus; one column group each")
      ->check(CLI::IsMember({"next_n", "dep_tree", "classifier"}));
  es_cmd->add_option("--corpus", es.corpus.corpus, "Corpus for --methods")
      ->check(CLI::ExistingFile);
  AddScopeOptions(es_cmd, &es.scope, false);
  es_cmd->remove_option(es_cmd->get_option("--method"));

  TrainScopeClfArgs tc;
  CLI::App* tc_cmd = app.add_subcommand(
      "train-scope-clf", "Train one scope classifier per modifier kind");
  tc_cmd->add_option("--corpus", tc.corpus, "Parsed corpus (.conllu)")
      ->required()
      ->check(CLI::ExistingFile);
  tc_cmd->add_option("--pairs", tc.pairs, "Gold scope pairs TSV")
      ->required()
      ->check(CLI::ExistingFile);
  tc_cmd->add_option("--cues", tc.cues_dir, "Cue lexicon directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  AddHyperOptions(tc_cmd, &tc.hyper);

  BowArgs tb;
  CLI::App* tb_cmd = app.add_subcommand(
      "train-bow", "Train bag-of-words models without and with scopes");
  AddCorpusOptions(tb_cmd, &tb.corpus, true);
  AddScopeOptions(tb_cmd, &tb.scope, false);
  AddHyperOptions(tb_cmd, &tb.hyper);

  BowArgs eb;
  CLI::App* eb_cmd = app.add_subcommand(
      "eval-bow", "Compare bag-of-words models without and with scopes");
  AddCorpusOptions(eb_cmd, &eb.corpus, true);
  AddScopeOptions(eb_cmd, &eb.scope, false);
  eb_cmd->add_option("--models", eb.models_dir, "Run directory of train-bow")
      ->required()
      ->check(CLI::ExistingDirectory);

  LexModelArgs lm;
  CLI::App* lm_cmd = app.add_subcommand(
      "train-lexmodel", "Fit the weighted emotion lexicon by hill climbing");
  AddCorpusOptions(lm_cmd, &lm.corpus, true);
  AddScopeOptions(lm_cmd, &lm.scope, true);
  lm_cmd->add_option("--restarts", lm.climb.restarts, "Restarts per slice")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lm_cmd->add_option("--patience", lm.climb.patience,
                     "Consecutive rejections that end a restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lm_cmd->add_option("--max-epochs", lm.climb.max_epochs,
                     "Epoch cap per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lm_cmd->add_option("--seed", lm.climb.seed, "Optimizer seed")
      ->capture_default_str();

  InspectArgs in;
  CLI::App* in_cmd =
      app.add_subcommand("inspect", "Summarize a weight tensor");
  in_cmd->add_option("--tensor", in.tensor, "tensor.json of train-lexmodel")
      ->required()
      ->check(CLI::ExistingFile);

  SplitArgs sp;
  CLI::App* sp_cmd = app.add_subcommand(
      "split", "Split a labeled corpus into train, test and balanced parts");
  AddCorpusOptions(sp_cmd, &sp.corpus, false);
  sp_cmd->add_option("--seed", sp.options.seed, "Split seed")
      ->capture_default_str();
  sp_cmd->add_option("--train-fraction", sp.options.train_fraction,
                     "Fraction of documents used for training")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sp_cmd->add_option("--balanced-per-class", sp.options.balanced_per_class,
                     "Documents per class in the balanced subset")
      ->capture_default_str();
  sp_cmd->add_option("--cues", sp.cues_dir,
                     "Restrict the balanced subset to documents with a cue")
      ->check(CLI::ExistingDirectory);
  sp_cmd->add_option("--emotions", sp.emotions_path,
                     "... and an emotion word from this lexicon")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }

  try {
    if (sp.options.train_fraction <= 0.0 || sp.options.train_fraction >= 1.0) {
      throw InputError("--train-fraction must lie strictly between 0 and 1");
    }
    sp.options.test_fraction = 1.0 - sp.options.train_fraction;
    CLI::App* sub = app.get_subcommands().front();
    const fs::path dir = MakeRunDir(common, *sub);
    if (sub == fc_cmd) RunFilterCues(fc, dir);
    if (sub == ds_cmd) RunDetectScope(ds, dir);
    if (sub == es_cmd) RunEvalScope(es, dir);
    if (sub == tc_cmd) RunTrainScopeClf(tc, dir);
    if (sub == tb_cmd) RunTrainBow(tb, dir);
    if (sub == eb_cmd) RunEvalBow(eb, dir);
    if (sub == lm_cmd) RunTrainLexModel(lm, dir);
    if (sub == in_cmd) RunInspect(in, dir);
    if (sub == sp_cmd) RunSplit(sp, dir);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUser;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace
}  // namespace emomod

int main(int argc, char** argv) { return emomod::Main(argc, argv); }
