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

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "emomod/lexical_model.h"
#include "emomod/text_util.h"

namespace emomod {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string output;
  fs::path run_dir;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("emomod_cli_" +
             std::string(
                 ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string Path(const std::string& name) const {
    return (root_ / name).string();
  }

  std::string Write(const std::string& name, const std::string& contents) {
    WriteFile(Path(name), contents);
    return Path(name);
  }

  RunResult Run(const std::string& args) const {
    const std::string cmd = "EMOMOD_LOG=warn " + std::string(EMOMOD_CLI) +
                            " --runs-dir " + Path("runs") + " " + args +
                            " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    const std::string marker = "run directory: ";
    if (const auto pos = r.output.find(marker); pos != std::string::npos) {
      const auto end = r.output.find('\n', pos);
      r.run_dir = r.output.substr(pos + marker.size(),
                                  end - pos - marker.size());
    }
    return r;
  }

  std::string Lexicons() const {
    return std::string(EMOMOD_DATA_DIR) + "/lexicons";
  }

  std::string Emotions() const {
    return std::string(EMOMOD_DATA_DIR) + "/emotion_lexicon.sample.tsv";
  }

  // Three classes separated by one word each.
  std::string LabeledCorpus(bool labeled = true) {
    std::string out;
    for (int i = 0; i < 30; ++i) {
      const std::string label = labeled ? "\"joy\"" : "null";
      out += "{\"id\":\"j" + std::to_string(i) +
             "\",\"text\":\"what a happy day\",\"label\":" + label + "}\n";
      out += "{\"id\":\"a" + std::to_string(i) +
             "\",\"text\":\"this is so angry\",\"label\":" +
             (labeled ? "\"anger\"" : "null") + "}\n";
      out += "{\"id\":\"s" + std::to_string(i) +
             "\",\"text\":\"i feel sad tonight\",\"label\":" +
             (labeled ? "\"sadness\"" : "null") + "}\n";
    }
    return Write(labeled ? "corpus.jsonl" : "unlabeled.jsonl", out);
  }

  // Six classes, each with a cue and a word of its prior emotion.
  std::string SixClassCorpus() {
    const std::array<std::pair<const char*, const char*>, 6> rows = {
        {{"joy", "i am not happy"},
         {"anger", "so angry now"},
         {"fear", "very scared tonight"},
         {"sadness", "really sad day"},
         {"surprise", "so surprised"},
         {"disgust", "very gross food"}}};
    std::string out;
    for (int i = 0; i < 20; ++i) {
      for (const auto& [label, text] : rows) {
        out += "{\"id\":\"" + std::string(label) + std::to_string(i) +
               "\",\"text\":\"" + text + "\",\"label\":\"" + label +
               "\"}\n";
      }
    }
    return Write("six.jsonl", out);
  }

  // "I do not love and hate you ." plus a sentence without cues.
  std::string ParsedCorpus() {
    return Write("parsed.conllu",
                 "# newdoc id = d1\n"
                 "1\tI\t_\tPRON\tPRP\t_\t4\tnsubj\t_\t_\n"
                 "2\tdo\t_\tAUX\tVBP\t_\t4\taux\t_\t_\n"
                 "3\tnot\t_\tPART\tRB\t_\t4\tneg\t_\t_\n"
                 "4\tlove\t_\tVERB\tVB\t_\t0\troot\t_\t_\n"
                 "5\tand\t_\tCCONJ\tCC\t_\t4\tcc\t_\t_\n"
                 "6\thate\t_\tVERB\tVB\t_\t4\tconj\t_\t_\n"
                 "7\tyou\t_\tPRON\tPRP\t_\t4\tdobj\t_\t_\n"
                 "8\t.\t_\tPUNCT\t.\t_\t4\tpunct\t_\t_\n"
                 "\n"
                 "# newdoc id = d2\n"
                 "1\tvery\t_\tADV\tRB\t_\t2\tadvmod\t_\t_\n"
                 "2\thappy\t_\tADJ\tJJ\t_\t0\troot\t_\t_\n"
                 "3\tand\t_\tCCONJ\tCC\t_\t5\tcc\t_\t_\n"
                 "4\tslightly\t_\tADV\tRB\t_\t5\tadvmod\t_\t_\n"
                 "5\tsad\t_\tADJ\tJJ\t_\t2\tconj\t_\t_\n"
                 "6\tfear\t_\tNOUN\tNN\t_\t2\tdep\t_\t_\n"
                 "\n");
  }

  std::string GoldPairs() {
    return Write("gold.tsv",
                 "d1\t2\t3\tnegation\t1\n"
                 "d1\t2\t5\tnegation\t1\n"
                 "d1\t2\t6\tnegation\t0\n"
                 "d2\t0\t1\tamplifier\t1\n"
                 "d2\t0\t5\tamplifier\t0\n"
                 "d2\t3\t4\tdowntoner\t1\n"
                 "d2\t3\t5\tdowntoner\t0\n");
  }

  fs::path root_;
};

TEST_F(CliTest, FilterCuesWritesThreeLists) {
  Write("cand.tsv", "not\tneg\t1\ntoo\tamp\nvery\tamp\nbit\tdown\n");
  Write("samples.tsv",
        "too\t1\t1\ntoo\t2\t0\ntoo\t3\t0\nvery\t1\t1\nbit\t1\t1\n");
  const RunResult r = Run("filter-cues --candidates " + Path("cand.tsv") +
                          " --samples " + Path("samples.tsv"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(ReadFile((r.run_dir / "negation.txt").string()).find("not"),
            std::string::npos);
  EXPECT_EQ(ReadFile((r.run_dir / "amplifier.txt").string()).find("too"),
            std::string::npos);
  EXPECT_TRUE(fs::exists(r.run_dir / "downtoner.txt"));
}

TEST_F(CliTest, FilterCuesUserErrors) {
  Write("cand.tsv", "too\tamp\n");
  const RunResult missing = Run("filter-cues --candidates " + Path("cand.tsv") +
                                " --samples " + Path("absent.tsv"));
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.output.find("absent.tsv"), std::string::npos);
  const RunResult threshold =
      Run("filter-cues --candidates " + Path("cand.tsv") + " --threshold 1.1");
  EXPECT_EQ(threshold.code, 2);
  const RunResult no_sample = Run("filter-cues --candidates " + Path("cand.tsv"));
  EXPECT_EQ(no_sample.code, 2) << no_sample.output;
}

TEST_F(CliTest, DetectScopeMethodsAndSweep) {
  const std::string raw = LabeledCorpus();
  const RunResult next =
      Run("detect-scope --corpus " + raw + " --cues " + Lexicons());
  ASSERT_EQ(next.code, 0) << next.output;
  EXPECT_NE(ReadFile((next.run_dir / "scopes.jsonl").string()).find("\"a0\""),
            std::string::npos);

  const RunResult dep = Run("detect-scope --corpus " + raw + " --cues " +
                            Lexicons() + " --method dep_tree");
  EXPECT_EQ(dep.code, 2);
  EXPECT_NE(dep.output.find("dependencies required"), std::string::npos);

  const RunResult sweep =
      Run("detect-scope --corpus " + ParsedCorpus() + " --cues " + Lexicons() +
          " --gold " + GoldPairs() + " --sweep-n 1..12");
  ASSERT_EQ(sweep.code, 0) << sweep.output;
  EXPECT_NE(ReadFile((sweep.run_dir / "sweep.tsv").string()).find("12"),
            std::string::npos);
}

TEST_F(CliTest, EvalScopeGoldAsPredictionAndSideBySide) {
  Write("gold_scopes.jsonl",
        "{\"id\":\"d1\",\"labels\":[[3,\"negation\"],[5,\"negation\"]]}\n"
        "{\"id\":\"d2\",\"labels\":[[1,\"amplifier\"],[4,\"downtoner\"]]}\n");
  const RunResult gold = Run("eval-scope --gold " + GoldPairs() +
                             " --predicted " + Path("gold_scopes.jsonl"));
  ASSERT_EQ(gold.code, 0) << gold.output;
  EXPECT_NE(gold.output.find("100.0"), std::string::npos);
  EXPECT_EQ(gold.output.find(" 0.0"), std::string::npos) << gold.output;

  const RunResult clf =
      Run("train-scope-clf --corpus " + ParsedCorpus() + " --pairs " +
          GoldPairs() + " --cues " + Lexicons());
  ASSERT_EQ(clf.code, 0) << clf.output;
  const RunResult three =
      Run("eval-scope --gold " + GoldPairs() + " --corpus " + ParsedCorpus() +
          " --cues " + Lexicons() + " --methods next_n dep_tree classifier" +
          " --scope-models " + clf.run_dir.string() + " --emotions " +
          Emotions());
  ASSERT_EQ(three.code, 0) << three.output;
  EXPECT_NE(three.output.find("next_n"), std::string::npos);
  EXPECT_NE(three.output.find("dep_tree"), std::string::npos);
  EXPECT_NE(three.output.find("classifier"), std::string::npos);

  const RunResult missing =
      Run("eval-scope --gold " + Path("nope.tsv") + " --predicted " +
          Path("gold_scopes.jsonl"));
  EXPECT_EQ(missing.code, 2);
}

TEST_F(CliTest, BowTrainAndEvaluate) {
  const std::string corpus = LabeledCorpus();
  const RunResult train =
      Run("train-bow --corpus " + corpus + " --cues " + Lexicons());
  ASSERT_EQ(train.code, 0) << train.output;
  const RunResult eval = Run("eval-bow --corpus " + corpus + " --cues " +
                             Lexicons() + " --models " +
                             train.run_dir.string());
  ASSERT_EQ(eval.code, 0) << eval.output;
  EXPECT_NE(eval.output.find("100.0"), std::string::npos);
  EXPECT_NE(eval.output.find("+0.0"), std::string::npos) << eval.output;
  EXPECT_TRUE(fs::exists(eval.run_dir / "report.json"));

  const RunResult unlabeled =
      Run("eval-bow --corpus " + LabeledCorpus(false) + " --cues " +
          Lexicons() + " --models " + train.run_dir.string());
  EXPECT_EQ(unlabeled.code, 2);
  EXPECT_NE(unlabeled.output.find("unlabeled"), std::string::npos);
}

TEST_F(CliTest, SplitThenLexModelIsReproducible) {
  const std::string corpus = SixClassCorpus();
  const RunResult split =
      Run("split --corpus " + corpus + " --balanced-per-class 5 --cues " +
          Lexicons() + " --emotions " + Emotions());
  ASSERT_EQ(split.code, 0) << split.output;
  const std::string split_file = (split.run_dir / "split.json").string();
  const std::string args = "train-lexmodel --corpus " + corpus + " --split " +
                           split_file + " --cues " + Lexicons() +
                           " --emotions " + Emotions() +
                           " --restarts 2 --patience 20 --max-epochs 200";
  const RunResult a = Run(args);
  ASSERT_EQ(a.code, 0) << a.output;
  const std::string first = ReadFile((a.run_dir / "tensor.json").string());
  fs::remove_all(a.run_dir);
  const RunResult b = Run(args);
  ASSERT_EQ(b.code, 0) << b.output;
  EXPECT_EQ(b.run_dir, a.run_dir);
  EXPECT_EQ(ReadFile((b.run_dir / "tensor.json").string()), first);
  EXPECT_TRUE(fs::exists(b.run_dir / "trace.tsv"));
  EXPECT_NE(b.output.find("test macro-F1"), std::string::npos);
}

TEST_F(CliTest, InspectIdentity) {
  Write("identity.json", TensorToJson(WeightTensor::Identity(), {}));
  const RunResult r = Run("inspect --tensor " + Path("identity.json"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("6/6"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(r.run_dir / "heatmap.tsv"));
}

TEST_F(CliTest, ConfigSectionsAndFlagsWin) {
  const std::string corpus = LabeledCorpus();
  Write("run.ini", "[detect-scope]\ncorpus = " + corpus + "\ncues = " +
                       Lexicons() + "\nn = 1\n");
  const RunResult from_file = Run("--config " + Path("run.ini") +
                                  " detect-scope");
  ASSERT_EQ(from_file.code, 0) << from_file.output;
  EXPECT_NE(ReadFile((from_file.run_dir / "config.ini").string()).find("n=1"),
            std::string::npos);
  const RunResult overridden = Run("--config " + Path("run.ini") +
                                   " detect-scope --n 3");
  ASSERT_EQ(overridden.code, 0) << overridden.output;
  EXPECT_NE(ReadFile((overridden.run_dir / "config.ini").string()).find("n=3"),
            std::string::npos);
  EXPECT_NE(from_file.run_dir, overridden.run_dir);
}

TEST_F(CliTest, UnknownSubcommandIsUserError) {
  EXPECT_EQ(Run("frobnicate").code, 2);
  EXPECT_EQ(Run("").code, 2);
  EXPECT_EQ(Run("--help").code, 0);
}

}  // namespace
}  // namespace emomod
