// Copyright 2026 The nereval Authors.
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

// Runs the nereval binary end to end on small files.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "nereval/corpus.h"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("nereval_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  std::string Write(const std::string &name, const std::string &content) const {
    std::ofstream(Path(name), std::ios::binary) << content;
    return Path(name);
  }

  std::string Read(const std::string &name) const {
    std::ifstream in(Path(name), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  // Returns the exit code; stdout and stderr go to files in the temp dir.
  int Run(const std::string &args) const {
    const std::string command = std::string(NEREVAL_BINARY) + " " + args + " >" +
                                Path("stdout.txt") + " 2>" + Path("stderr.txt");
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  nlohmann::json Json(const std::string &name) const {
    return nlohmann::json::parse(Read(name));
  }

  fs::path dir_;
};

constexpr char kLiverGold[] =
    "-DOCSTART- fig1\n"
    "1cm\tB-problem\ncyst\tI-problem\nin\tI-problem\nthe\tI-problem\n"
    "right\tI-problem\nlobe\tI-problem\nof\tI-problem\nthe\tI-problem\n"
    "liver\tI-problem\n";
constexpr char kLiverPred[] =
    "-DOCSTART- fig1\n"
    "1cm\tB-problem\ncyst\tI-problem\nin\tI-problem\nthe\tI-problem\n"
    "right\tI-problem\nlobe\tI-problem\nof\tO\nthe\tO\nliver\tB-problem\n";

TEST_F(CliTest, EvalLiverFixture) {
  const std::string gold = Write("gold.iob", kLiverGold);
  const std::string pred = Write("pred.iob", kLiverPred);
  ASSERT_EQ(Run("eval " + gold + " " + pred + " --out " + Path("r.json") + " --ledger " +
                Path("ledger.jsonl")),
            0)
      << Read("stderr.txt");
  auto report = Json("r.json");
  EXPECT_EQ(report["metrics"]["exact"]["f1"].get<double>(), 0.0);
  EXPECT_EQ(report["metrics"]["relaxed"]["f1"].get<double>(), 1.0);
  EXPECT_EQ(report["match"]["counts"]["Type5_RightLabelOverlapSpan"].get<int>(), 2);
  EXPECT_NE(Read("stdout.txt").find("relaxed P=100.00"), std::string::npos);
  std::istringstream ledger(Read("ledger.jsonl"));
  std::string line;
  int lines = 0;
  while (std::getline(ledger, line)) ++lines;
  EXPECT_EQ(lines, 2);
}

TEST_F(CliTest, EvalIdentityAndDeterminism) {
  const std::string gold = Write("gold.iob", kLiverGold);
  ASSERT_EQ(Run("eval " + gold + " " + gold + " --out " + Path("a.json")), 0);
  auto report = Json("a.json");
  EXPECT_EQ(report["metrics"]["exact"]["f1"].get<double>(), 1.0);
  EXPECT_EQ(report["match"]["num_errors"].get<int>(), 0);
  ASSERT_EQ(Run("eval " + gold + " " + gold + " --out " + Path("b.json")), 0);
  EXPECT_EQ(Read("a.json"), Read("b.json"));
  ASSERT_EQ(Run("eval " + gold + " " + gold + " --out " + Path("c.json") +
                " --render markdown"),
            0);
  EXPECT_NE(Read("stdout.txt").find("| exact |"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  const std::string gold = Write("gold.iob", kLiverGold);
  EXPECT_EQ(Run("eval " + gold + " " + Path("missing.iob")), 1);
  EXPECT_EQ(Run("eval " + gold), 1);
  EXPECT_EQ(Run("frobnicate"), 1);
  EXPECT_EQ(Run("eval " + gold + " " + gold + " --format xml"), 1);
  const std::string bad = Write("bad.iob", "-DOCSTART- fig1\nliver\tX-problem\n");
  EXPECT_EQ(Run("eval " + gold + " " + bad), 2);
  EXPECT_NE(Read("stderr.txt").find("line 2"), std::string::npos);
  std::string shifted = kLiverPred;
  shifted.replace(shifted.find("liver"), 5, "Liver");
  EXPECT_EQ(Run("eval " + gold + " " + Write("shifted.iob", shifted)), 3);
  EXPECT_EQ(Run("--version"), 0);
}

// Ten errors: six Type-5 records (four accepted), two Type-1, two Type-2.
std::string TenErrorLedger() {
  nereval::Corpus corpus;
  nereval::Document doc;
  doc.doc_id = "d";
  for (int i = 0; i < 40; ++i) {
    nereval::Token t;
    t.text = "w" + std::to_string(i);
    t.token_index = i;
    doc.tokens.push_back(t);
  }
  using nereval::Source;
  for (int k = 0; k < 6; ++k) {
    doc.gold_entities.push_back(doc.MakeMention({4 * k, 4 * k + 3}, "A", Source::kGold));
    doc.pred_entities.push_back(
        doc.MakeMention({4 * k, 4 * k + 2}, "A", Source::kPredicted));
  }
  doc.gold_entities.push_back(doc.MakeMention({30, 31}, "A", Source::kGold));
  doc.gold_entities.push_back(doc.MakeMention({32, 33}, "B", Source::kGold));
  doc.pred_entities.push_back(doc.MakeMention({35, 36}, "A", Source::kPredicted));
  doc.pred_entities.push_back(doc.MakeMention({37, 38}, "B", Source::kPredicted));
  corpus.documents = {doc};
  nereval::FinalizeCorpus(&corpus);
  return nereval::WriteStandoff(corpus);
}

std::string Responses(int accepted) {
  std::string out;
  for (int k = 0; k < 6; ++k) {
    out += "{\"id\":\"d#" + std::to_string(k) + "\",\"label\":\"" +
           (k < accepted ? "A" : "other") + "\",\"confidence\":0.7}\n";
  }
  return out;
}

TEST_F(CliTest, RefineWithExternalDecisions) {
  const std::string data = Write("data.standoff.jsonl", TenErrorLedger());
  ASSERT_EQ(Run("eval " + data + " " + data + " --format standoff --out " +
                Path("eval.json") + " --ledger " + Path("ledger.jsonl")),
            0)
      << Read("stderr.txt");
  auto eval = Json("eval.json");
  ASSERT_EQ(eval["match"]["num_errors"].get<int>(), 10);

  const std::string ledger = Path("ledger.jsonl");
  ASSERT_EQ(Run("refine " + ledger + " --external-decisions " + Write("four.jsonl", Responses(4)) +
                " --out " + Path("four.json") + " --decisions-out " + Path("decisions.jsonl")),
            0)
      << Read("stderr.txt");
  auto four = Json("four.json");
  EXPECT_EQ(four["decisions"]["accepted"].get<int>(), 4);
  EXPECT_EQ(four["decisions"]["accepted_of_errors"]["pct"].get<std::string>(), "40.00");

  ASSERT_EQ(Run("refine " + ledger + " --external-decisions " + Write("all.jsonl", Responses(6)) +
                " --out " + Path("all.json")),
            0);
  auto all = Json("all.json");
  EXPECT_EQ(all["metrics"]["learning_based"]["f1"], eval["metrics"]["relaxed"]["f1"]);

  ASSERT_EQ(Run("refine " + ledger + " --external-decisions " + Write("none.jsonl", Responses(0)) +
                " --out " + Path("none.json")),
            0);
  auto none = Json("none.json");
  EXPECT_EQ(none["metrics"]["learning_based"]["f1"], eval["metrics"]["exact"]["f1"]);

  std::string partial = Responses(4);
  partial.erase(partial.rfind("{"));
  EXPECT_EQ(Run("refine " + ledger + " --external-decisions " + Write("partial.jsonl", partial)),
            4);
  EXPECT_NE(Read("stderr.txt").find("d#5"), std::string::npos);

  EXPECT_EQ(Run("refine " + ledger), 1);

  // Judgements for all six Type-5 records, together with the decisions.
  std::string judgements;
  for (int k = 0; k < 6; ++k) judgements += "d#" + std::to_string(k) + "\t" + std::to_string(1 + k % 5) + "\n";
  ASSERT_EQ(Run("judge " + ledger + " " + Write("j.tsv", judgements) + " --decisions " +
                Path("decisions.jsonl") + " --out " + Path("judge.json")),
            0)
      << Read("stderr.txt");
  auto judge = Json("judge.json");
  EXPECT_TRUE(judge["judgement"].contains("agreement"));
  EXPECT_TRUE(judge["judgement"]["human_f"].contains("strict"));
  ASSERT_EQ(Run("judge " + ledger + " " + Path("j.tsv") + " --profile forgiving --out " +
                Path("judge2.json")),
            0);
  EXPECT_FALSE(Json("judge2.json")["judgement"]["human_f"].contains("strict"));
  EXPECT_EQ(Run("judge " + ledger + " " + Write("short.tsv", "d#0\t5\n")), 4);
  EXPECT_EQ(Run("judge " + ledger + " " + Write("bad.tsv", "d#0\t9\n")), 2);
}

TEST_F(CliTest, ClassifierPipeline) {
  std::string train;
  const char *drugs[] = {"aspirin", "heparin", "insulin"};
  const char *problems[] = {"fever", "cough", "rash"};
  for (int i = 0; i < 30; ++i) {
    train += "-DOCSTART- t" + std::to_string(i) + "\n";
    train += std::string("gave\tO\n") + drugs[i % 3] + "\tB-drug\nfor\tO\n" +
             problems[i % 3] + "\tB-problem\ntoday\tO\n";
  }
  const std::string train_path = Write("train.iob", train);
  ASSERT_EQ(Run("build-clsdata " + train_path + " --seed 3 --out " + Path("pairs.jsonl")), 0)
      << Read("stderr.txt");
  ASSERT_EQ(Run("build-clsdata " + train_path + " --seed 3 --out " + Path("pairs2.jsonl")), 0);
  EXPECT_EQ(Read("pairs.jsonl"), Read("pairs2.jsonl"));
  ASSERT_EQ(Run("train-cls " + Path("pairs.jsonl") + " --bucket-bits 12 --out " +
                Path("model.bin")),
            0)
      << Read("stderr.txt");
  ASSERT_EQ(Run("train-cls " + Path("pairs.jsonl") + " --bucket-bits 12 --out " +
                Path("model2.bin")),
            0);
  EXPECT_EQ(Read("model.bin"), Read("model2.bin"));

  const std::string gold = Write("g.iob", "-DOCSTART- x\ngave\tO\nhigh\tB-problem\nfever\tI-problem\n");
  const std::string pred = Write("p.iob", "-DOCSTART- x\ngave\tO\nhigh\tO\nfever\tB-problem\n");
  ASSERT_EQ(Run("eval " + gold + " " + pred + " --ledger " + Path("l.jsonl") + " --out " +
                Path("e.json")),
            0);
  ASSERT_EQ(Run("refine " + Path("l.jsonl") + " --model " + Path("model.bin") + " --out " +
                Path("r.json")),
            0)
      << Read("stderr.txt");
  auto refined = Json("r.json");
  EXPECT_EQ(refined["decisions"]["accepted"].get<int>(), 1);
  EXPECT_EQ(refined["metrics"]["learning_based"]["f1"].get<double>(), 1.0);

  EXPECT_EQ(Run("build-clsdata " + Write("empty.iob", "a\tO\n") + " --out " + Path("x.jsonl")), 2);
  EXPECT_EQ(Run("refine " + Path("l.jsonl") + " --model " + Write("junk.bin", "junk")), 2);
}

TEST_F(CliTest, PerturbWritesConsistentFiles) {
  const std::string gold = Write("gold.iob", kLiverGold);
  ASSERT_EQ(Run("perturb " + gold + " --seed 5 --shrink 1 --out-prefix " + Path("syn")), 0)
      << Read("stderr.txt");
  const std::string data = Path("syn.standoff.jsonl");
  ASSERT_EQ(Run("eval " + data + " " + data + " --format standoff --out " + Path("r.json") +
                " --ledger " + Path("actual.jsonl")),
            0)
      << Read("stderr.txt");
  EXPECT_EQ(Read("actual.jsonl"), Read("syn.expected.jsonl"));
}

}  // namespace
