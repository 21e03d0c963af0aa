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

#include "nereval/entity_classifier.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "nereval/errors.h"

namespace nereval {
namespace {

// Three labels with disjoint vocabularies plus an "other" class.
std::vector<LabeledText> SeparableSet(int n, uint64_t seed) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> vocab = {
      {"drug", {"aspirin", "heparin", "insulin", "warfarin", "morphine"}},
      {"problem", {"fever", "cough", "rash", "edema", "nausea"}},
      {"test", {"x-ray", "biopsy", "ultrasound", "culture", "panel"}},
      {"other", {"patient", "today", "was", "given", "home"}},
  };
  std::mt19937_64 rng(seed);
  std::vector<LabeledText> pairs;
  for (int i = 0; i < n; ++i) {
    const auto &[label, words] = vocab[i % vocab.size()];
    std::string text = words[rng() % words.size()];
    if (rng() % 2) text += " " + words[rng() % words.size()];
    pairs.push_back({text, label});
  }
  return pairs;
}

Corpus Fixture(const std::vector<std::tuple<std::string, std::string, std::string>> &cases) {
  // Each case: gold text, predicted text (whole tokens inside gold), label.
  Corpus corpus;
  int n = 0;
  for (const auto &[gold, pred, label] : cases) {
    Document doc;
    doc.doc_id = "doc" + std::to_string(n++);
    int i = 0;
    size_t pos = 0;
    while (pos <= gold.size()) {
      size_t sp = gold.find(' ', pos);
      if (sp == std::string::npos) sp = gold.size();
      Token t;
      t.text = gold.substr(pos, sp - pos);
      t.token_index = i++;
      doc.tokens.push_back(t);
      pos = sp + 1;
    }
    const int pred_tokens = static_cast<int>(std::count(pred.begin(), pred.end(), ' ')) + 1;
    int start = 0;
    while (doc.MakeMention({start, start + pred_tokens}, label, Source::kGold).text != pred) {
      ++start;
    }
    doc.gold_entities = {doc.MakeMention({0, i}, label, Source::kGold)};
    doc.pred_entities = {
        doc.MakeMention({start, start + pred_tokens}, label, Source::kPredicted)};
    corpus.documents.push_back(doc);
  }
  FinalizeCorpus(&corpus);
  return corpus;
}

TEST(Train, ConvergesOnSeparableData) {
  auto pairs = SeparableSet(200, 1);
  TrainConfig config;
  config.epochs = 5;
  ClassifierModel model = Train(pairs, config);
  EXPECT_GE(Accuracy(model, pairs), 0.95);
  EXPECT_EQ(model.labels(), (std::vector<std::string>{"drug", "other", "problem", "test"}));
}

TEST(Train, IsDeterministic) {
  auto pairs = SeparableSet(120, 2);
  TrainConfig config;
  config.seed = 7;
  config.buckets = 1 << 12;
  const std::string a = Train(pairs, config).Serialize();
  const std::string b = Train(pairs, config).Serialize();
  EXPECT_EQ(a, b);
  config.seed = 8;
  EXPECT_NE(Train(pairs, config).Serialize(), a);
}

TEST(Train, RejectsBadInput) {
  EXPECT_THROW(Train({}, {}), ContractError);
  EXPECT_THROW(Train({{"a", "A"}, {"b", "A"}}, {}), ContractError);
  EXPECT_THROW(Train({{"a", "A"}, {"  ", "B"}}, {}), ContractError);
  TrainConfig bad;
  bad.epochs = 0;
  EXPECT_THROW(Train({{"a", "A"}, {"b", "B"}}, bad), ContractError);
}

TEST(Predict, MemorizesRepeatedText) {
  std::vector<LabeledText> pairs;
  for (int i = 0; i < 50; ++i) pairs.push_back({"chest pain", "problem"});
  for (int i = 0; i < 50; ++i) pairs.push_back({"blood culture", "test"});
  ClassifierModel model = Train(pairs, {});
  Prediction p = model.Predict("chest pain");
  EXPECT_EQ(p.label, "problem");
  EXPECT_GT(p.confidence, 0.9);
}

TEST(Predict, DistributionIsNormalized) {
  ClassifierModel model = Train(SeparableSet(80, 3), {});
  for (const char *text : {"zzqx", "aspirin", "ÜÖß 漢字", "a", "x-ray biopsy home"}) {
    Prediction p = model.Predict(text);
    double sum = 0.0;
    for (double v : p.distribution) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(p.distribution.size(), model.labels().size());
  }
  EXPECT_THROW(model.Predict("   "), ContractError);
}

TEST(Model, SerializationRoundTrip) {
  TrainConfig config;
  config.buckets = 1 << 14;
  ClassifierModel model = Train(SeparableSet(80, 4), config);
  const std::string bytes = model.Serialize();
  ClassifierModel loaded = ClassifierModel::Deserialize(bytes);
  EXPECT_EQ(loaded.Serialize(), bytes);
  EXPECT_EQ(loaded.labels(), model.labels());
  for (const char *text : {"aspirin", "fever rash", "unknown words"}) {
    EXPECT_EQ(loaded.Predict(text).distribution, model.Predict(text).distribution);
  }
  EXPECT_THROW(ClassifierModel::Deserialize("garbage"), ParseError);
  EXPECT_THROW(ClassifierModel::Deserialize(bytes.substr(0, bytes.size() - 3)), ParseError);
}

TEST(DecideType5, AcceptsOnlyMatchingLabel) {
  std::vector<LabeledText> pairs;
  for (int i = 0; i < 30; ++i) {
    pairs.push_back({"Agonist Therapies", "healthcare_activity"});
    pairs.push_back({"Central", "spatial_concept"});
    pairs.push_back({"liver", "other"});
    pairs.push_back({"cyst of liver", "problem"});
  }
  ClassifierModel model = Train(pairs, {});
  Corpus corpus = Fixture({
      {"1cm cyst in the right lobe of the liver", "liver", "problem"},
      {"Central Nervous System Agents", "Central", "biomedical_discipline"},
      {"Receptor Agonist Therapies", "Agonist Therapies", "healthcare_activity"},
  });
  MatchReport report = ClassifyCorpus(corpus);
  ASSERT_EQ(report.count(MatchKind::kType5RightLabelOverlapSpan), 3);
  DecisionMap decisions = DecideType5(model, report);
  ASSERT_EQ(decisions.size(), 3u);
  EXPECT_FALSE(decisions.at("doc0#0").accepted());
  EXPECT_EQ(decisions.at("doc0#0").predicted_label, "other");
  EXPECT_FALSE(decisions.at("doc1#0").accepted());
  EXPECT_EQ(decisions.at("doc1#0").predicted_label, "spatial_concept");
  EXPECT_TRUE(decisions.at("doc2#0").accepted());
}

TEST(ExternalClassifier, ResponseHandling) {
  Corpus corpus = Fixture({{"a b c", "c", "A"}, {"d e", "e", "B"}});
  MatchReport report = ClassifyCorpus(corpus);
  const std::string request = WriteClassifierRequest(report);
  EXPECT_EQ(request, "{\"id\":\"doc0#0\",\"text\":\"c\"}\n{\"id\":\"doc1#0\",\"text\":\"e\"}\n");

  DecisionMap echo = ParseClassifierResponse(
      "{\"id\":\"doc0#0\",\"label\":\"A\",\"confidence\":0.8}\n"
      "{\"id\":\"doc1#0\",\"label\":\"B\",\"confidence\":1}\n",
      report);
  EXPECT_TRUE(echo.at("doc0#0").accepted());
  EXPECT_TRUE(echo.at("doc1#0").accepted());
  EXPECT_DOUBLE_EQ(echo.at("doc0#0").confidence, 0.8);

  DecisionMap other = ParseClassifierResponse(
      "{\"id\":\"doc0#0\",\"label\":\"other\",\"confidence\":0.8}\n"
      "{\"id\":\"doc1#0\",\"label\":\"A\",\"confidence\":0.3}\n",
      report);
  EXPECT_FALSE(other.at("doc0#0").accepted());
  EXPECT_FALSE(other.at("doc1#0").accepted());

  try {
    ParseClassifierResponse("{\"id\":\"doc0#0\",\"label\":\"A\",\"confidence\":0.8}\n",
                            report);
    FAIL();
  } catch (const CoverageError &e) {
    EXPECT_NE(std::string(e.what()).find("doc1#0"), std::string::npos);
  }
  EXPECT_THROW(ParseClassifierResponse(
                   "{\"id\":\"doc0#0\",\"label\":\"Z\",\"confidence\":0.8}\n"
                   "{\"id\":\"doc1#0\",\"label\":\"B\",\"confidence\":1}\n",
                   report),
               ParseError);
  EXPECT_THROW(ParseClassifierResponse(
                   "{\"id\":\"doc0#0\",\"label\":\"A\",\"confidence\":1.5}\n"
                   "{\"id\":\"doc1#0\",\"label\":\"B\",\"confidence\":1}\n",
                   report),
               ParseError);
  EXPECT_THROW(ParseClassifierResponse(
                   "{\"id\":\"doc0#0\",\"label\":\"A\",\"confidence\":0.5}\n"
                   "{\"id\":\"doc0#0\",\"label\":\"A\",\"confidence\":0.5}\n"
                   "{\"id\":\"doc1#0\",\"label\":\"B\",\"confidence\":1}\n",
                   report),
               ParseError);
  EXPECT_THROW(ParseClassifierResponse(
                   "{\"id\":\"zzz\",\"label\":\"A\",\"confidence\":0.5}\n", report),
               ParseError);
}

}  // namespace
}  // namespace nereval
