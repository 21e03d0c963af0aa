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

#include "nereval/corpus.h"

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "nereval/errors.h"
#include "testing/oracle.h"

namespace nereval {
namespace {

TEST(ParseIob, MinimalInput) {
  Corpus c = ParseIob("cough\tB-problem\n\nx O\n", TagScheme::kIob2);
  ASSERT_EQ(c.documents.size(), 1u);
  const Document &doc = c.documents[0];
  EXPECT_EQ(doc.doc_id, "doc0");
  ASSERT_EQ(doc.tokens.size(), 2u);
  EXPECT_EQ(doc.tokens[0].sent_index, 0);
  EXPECT_EQ(doc.tokens[1].sent_index, 1);
  ASSERT_EQ(doc.gold_entities.size(), 1u);
  EXPECT_EQ(doc.gold_entities[0].label, "problem");
  EXPECT_EQ(doc.gold_entities[0].span, (TokenSpan{0, 1}));
  EXPECT_EQ(c.label_set, std::vector<std::string>{"problem"});
}

TEST(ParseIob, CanonicalDecode) {
  Corpus c = ParseIob("a B-problem\nb I-problem\nc O\n", TagScheme::kIob2);
  ASSERT_EQ(c.documents[0].gold_entities.size(), 1u);
  EXPECT_EQ(c.documents[0].gold_entities[0].span, (TokenSpan{0, 2}));
  EXPECT_EQ(c.documents[0].gold_entities[0].text, "a b");
}

TEST(ParseIob, OrphanInsideIsRepairedWithWarning) {
  std::vector<Diagnostic> warnings;
  Corpus c = ParseIob("a I-problem\nb O\n", TagScheme::kIob2, Source::kGold,
                      &warnings);
  ASSERT_EQ(c.documents[0].gold_entities.size(), 1u);
  EXPECT_EQ(c.documents[0].gold_entities[0].span, (TokenSpan{0, 1}));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0].line, 1);
}

TEST(ParseIob, Iob1StartsEntitiesWithInsideTagsSilently) {
  std::vector<Diagnostic> warnings;
  Corpus c = ParseIob("a I-x\nb I-x\nc B-x\nd I-y\n", TagScheme::kIob1,
                      Source::kGold, &warnings);
  const auto &m = c.documents[0].gold_entities;
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].span, (TokenSpan{0, 2}));
  EXPECT_EQ(m[1].span, (TokenSpan{2, 3}));
  EXPECT_EQ(m[2].span, (TokenSpan{3, 4}));
  EXPECT_TRUE(warnings.empty());
}

TEST(ParseIob, DocumentsAndOffsets) {
  Corpus c = ParseIob(
      "-DOCSTART- first\nliver B-problem\ncyst I-problem\n\n"
      "-DOCSTART- second\nok O\n",
      TagScheme::kIob2, Source::kPredicted);
  ASSERT_EQ(c.documents.size(), 2u);
  EXPECT_EQ(c.documents[0].doc_id, "first");
  EXPECT_EQ(c.documents[1].doc_id, "second");
  EXPECT_TRUE(c.documents[0].gold_entities.empty());
  ASSERT_EQ(c.documents[0].pred_entities.size(), 1u);
  EXPECT_EQ(c.documents[0].pred_entities[0].source, Source::kPredicted);
  const Token &cyst = c.documents[0].tokens[1];
  EXPECT_EQ(cyst.char_start, 6);
  EXPECT_EQ(cyst.char_end, 10);
  EXPECT_EQ(cyst.doc_id, "first");
}

TEST(ParseIob, EntitiesEndAtSentenceBreaks) {
  Corpus c = ParseIob("a B-x\n\nb I-x\n", TagScheme::kIob1);
  EXPECT_EQ(c.documents[0].gold_entities.size(), 2u);
}

TEST(ParseIob, EmptyContentGivesEmptyCorpus) {
  EXPECT_TRUE(ParseIob("", TagScheme::kIob2).documents.empty());
  EXPECT_TRUE(ParseIob("\n\n\r\n", TagScheme::kIob2).documents.empty());
}

TEST(ParseIob, ErrorsCarryLineNumbers) {
  try {
    ParseIob("a O\nb c O\n", TagScheme::kIob2);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ParseIob("a X-foo\n", TagScheme::kIob2), ParseError);
  EXPECT_THROW(ParseIob("a B-\n", TagScheme::kIob2), ParseError);
  EXPECT_THROW(ParseIob("a\n", TagScheme::kIob2), ParseError);
  EXPECT_THROW(ParseIob("a\tB-x\tz\n", TagScheme::kIob2), ParseError);
  EXPECT_THROW(ParseIob("\xff\xfe O\n", TagScheme::kIob2), ParseError);
  EXPECT_THROW(ParseIob("-DOCSTART- a\nx O\n-DOCSTART- a\n", TagScheme::kIob2),
               ParseError);
}

TEST(ParseIob, LabelsAreTrimmedAndCaseSensitive) {
  Corpus c = ParseIob("a\tB-Problem \nb\tB-problem\n", TagScheme::kIob2);
  EXPECT_EQ(c.label_set, (std::vector<std::string>{"Problem", "problem"}));
}

// Arbitrary bytes either parse or raise a located ParseError.
TEST(ParseIob, TotalOnRandomBytes) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab \t\nBIO-x\xc3\xa9\xff";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string content;
    const int len = static_cast<int>(rng() % 60);
    for (int i = 0; i < len; ++i) content.push_back(alphabet[rng() % alphabet.size()]);
    try {
      Corpus c = ParseIob(content, trial % 2 ? TagScheme::kIob1 : TagScheme::kIob2);
      for (const auto &doc : c.documents) {
        for (const auto &m : doc.gold_entities) {
          EXPECT_LT(m.span.start, m.span.end);
          EXPECT_NE(m.label, "O");
        }
      }
    } catch (const ParseError &) {
    }
  }
}

// Decoding then re-encoding a well-formed IOB2 stream is the identity.
TEST(WriteIob, ReencodesWellFormedInput) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus c = testing::RandomCorpus(rng, 3);
    const std::string text = WriteIob(c);
    EXPECT_EQ(WriteIob(ParseIob(text, TagScheme::kIob2)), text);
  }
}

TEST(ParseStandoff, SingleGoldSpan) {
  Corpus c = ParseStandoff(
      R"({"doc_id": "d", "tokens": ["a", "b"], "entities": [{"start": 0, "end": 2, "label": "x", "source": "gold"}]})");
  ASSERT_EQ(c.documents.size(), 1u);
  ASSERT_EQ(c.documents[0].gold_entities.size(), 1u);
  EXPECT_EQ(c.documents[0].gold_entities[0].text, "a b");
  EXPECT_TRUE(c.documents[0].pred_entities.empty());
}

TEST(ParseStandoff, Errors) {
  auto doc = [](const std::string &entities) {
    return R"({"doc_id": "d", "tokens": ["a", "b", "c"], "entities": [)" +
           entities + "]}";
  };
  EXPECT_THROW(ParseStandoff(doc(R"({"start": 1, "end": 1, "label": "x", "source": "gold"})")),
               ParseError);
  EXPECT_THROW(ParseStandoff(doc(R"({"start": 2, "end": 4, "label": "x", "source": "gold"})")),
               ParseError);
  EXPECT_THROW(ParseStandoff(doc(R"({"start": 0, "end": 1, "label": "x", "source": "oops"})")),
               ParseError);
  EXPECT_THROW(ParseStandoff("{not json"), ParseError);
  try {
    ParseStandoff(doc(R"({"start": 0, "end": 2, "label": "x", "source": "gold"}, {"start": 1, "end": 3, "label": "y", "source": "gold"})"));
    FAIL();
  } catch (const ParseError &e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("x[0,2)"), std::string::npos) << message;
    EXPECT_NE(message.find("y[1,3)"), std::string::npos) << message;
  }
  // Overlap across sources is fine.
  EXPECT_NO_THROW(ParseStandoff(doc(R"({"start": 0, "end": 2, "label": "x", "source": "gold"}, {"start": 1, "end": 3, "label": "y", "source": "predicted"})")));
}

TEST(Standoff, RoundTripsIobCorpora) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus original = testing::RandomCorpus(rng, 4);
    for (auto &doc : original.documents) doc.pred_entities.clear();
    FinalizeCorpus(&original);
    const Corpus from_iob = ParseIob(WriteIob(original), TagScheme::kIob2);
    EXPECT_EQ(ParseStandoff(WriteStandoff(from_iob)), from_iob);
  }
}

TEST(PairCorpora, MergesEntityLists) {
  Corpus gold = ParseIob("a B-x\nb O\n", TagScheme::kIob2, Source::kGold);
  Corpus pred = ParseIob("a O\nb B-y\n", TagScheme::kIob2, Source::kPredicted);
  Corpus merged = PairCorpora(gold, pred);
  ASSERT_EQ(merged.documents.size(), 1u);
  EXPECT_EQ(merged.documents[0].gold_entities.size(), 1u);
  EXPECT_EQ(merged.documents[0].pred_entities.size(), 1u);
  EXPECT_EQ(merged.label_set, (std::vector<std::string>{"x", "y"}));
}

TEST(PairCorpora, AlignmentErrors) {
  Corpus gold = ParseIob("-DOCSTART- a\nx O\n-DOCSTART- b\ny O\n", TagScheme::kIob2);
  Corpus pred = ParseIob("-DOCSTART- a\nx O\n", TagScheme::kIob2, Source::kPredicted);
  try {
    PairCorpora(gold, pred);
    FAIL();
  } catch (const AlignmentError &e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
  Corpus g = ParseIob("the O\nliver B-problem\n", TagScheme::kIob2);
  Corpus p = ParseIob("the O\nLiver B-problem\n", TagScheme::kIob2, Source::kPredicted);
  try {
    PairCorpora(g, p);
    FAIL();
  } catch (const AlignmentError &e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos) << e.what();
  }
  Corpus shorter = ParseIob("the O\n", TagScheme::kIob2, Source::kPredicted);
  EXPECT_THROW(PairCorpora(g, shorter), AlignmentError);
}

}  // namespace
}  // namespace nereval
