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

// Annotated corpora: tokens, entity mentions and the readers/writers for
// the two supported on-disk formats.
//
// IOB files hold one "token<TAB>tag" (or "token tag") pair per line. A blank
// line ends a sentence and a line starting with "-DOCSTART-" opens a new
// document whose id is the remainder of the line. Without any -DOCSTART-
// line the whole file is the single document "doc0".
//
// Standoff files hold one JSON object per line:
//   {"doc_id": str, "tokens": [str], "entities": [{"start": int, "end": int,
//    "label": str, "source": "gold"|"predicted"}]}
// with optional "sentence_starts": [int] listing the token index of every
// sentence after the first.
//
// Token indices are the canonical coordinates. Character offsets are
// synthesized by joining a document's tokens with single spaces.

#ifndef NEREVAL_CORPUS_H_
#define NEREVAL_CORPUS_H_

#include <string>
#include <string_view>
#include <vector>

namespace nereval {

// Half-open interval [start, end) of token indices.
struct TokenSpan {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }

  // Number of tokens shared with `other`.
  int Overlap(const TokenSpan &other) const;
  bool Overlaps(const TokenSpan &other) const { return Overlap(other) > 0; }

  auto operator<=>(const TokenSpan &) const = default;
};

enum class Source { kGold, kPredicted };

const char *SourceName(Source source);

struct Token {
  std::string text;
  std::string doc_id;
  int sent_index = 0;
  int token_index = 0;  // document-global
  int char_start = 0;
  int char_end = 0;

  bool operator==(const Token &) const = default;
};

struct EntityMention {
  std::string doc_id;
  TokenSpan span;
  std::string label;
  std::string text;  // covered tokens joined by single spaces
  Source source = Source::kGold;

  bool operator==(const EntityMention &) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<EntityMention> gold_entities;
  std::vector<EntityMention> pred_entities;

  // Builds a mention over [start, end) with its surface text filled in.
  EntityMention MakeMention(TokenSpan span, const std::string &label,
                            Source source) const;

  // Index of the first token of every sentence, in order.
  std::vector<int> SentenceStarts() const;

  bool operator==(const Document &) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> label_set;  // sorted, unique

  size_t NumGold() const;
  size_t NumPred() const;

  bool operator==(const Corpus &) const = default;
};

enum class TagScheme { kIob2, kIob1 };

struct Diagnostic {
  int line = 0;
  std::string message;
};

// Parses an IOB file. Decoded mentions are stored as gold or predicted
// entities according to `source`. Orphan I- tags (IOB2) are repaired to B-
// and reported through `warnings` when it is non-null. Throws ParseError.
Corpus ParseIob(std::string_view content, TagScheme scheme,
                Source source = Source::kGold,
                std::vector<Diagnostic> *warnings = nullptr);

// Renders the mentions of `source` as an IOB2 file.
std::string WriteIob(const Corpus &corpus, Source source = Source::kGold);

// Parses a standoff file. Throws ParseError.
Corpus ParseStandoff(std::string_view content);

// Renders `corpus` as a standoff file (gold then predicted entities).
std::string WriteStandoff(const Corpus &corpus);

// Merges the gold entities of `gold` with the predicted entities of `pred`.
// Documents are matched by id and must carry identical token streams.
// Throws AlignmentError.
Corpus PairCorpora(const Corpus &gold, const Corpus &pred);

// Fills token char offsets, the sorted label set and mention texts, then
// validates every corpus invariant. Throws ContractError on violation.
void FinalizeCorpus(Corpus *corpus);

// Throws ContractError if `mentions` contains two overlapping spans.
void CheckFlat(const std::vector<EntityMention> &mentions);

}  // namespace nereval

#endif  // NEREVAL_CORPUS_H_
