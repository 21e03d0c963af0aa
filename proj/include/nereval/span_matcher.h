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

// Classification of gold/prediction relations into an exact match or one of
// five mismatch types.
//
// Within one document the matcher runs in stages:
//   1. a prediction with the same span and label as a gold entity is an
//      exact match;
//   2. a prediction with the same span but another label is Type 3;
//   3. a prediction overlapping at least one gold of its own label is
//      Type 5, anchored to the best such gold;
//   4. a prediction overlapping only golds of other labels is Type 4,
//      anchored to the best overlapping gold;
//   5. remaining predictions are Type 1 and golds that took part in none of
//      the above are Type 2.
// The best anchor has the largest token overlap, then the leftmost start,
// then the longest span. Anchors are not consumed: one gold can anchor any
// number of Type-4/Type-5 predictions, including golds that were already
// matched in stages 1-2.

#ifndef NEREVAL_SPAN_MATCHER_H_
#define NEREVAL_SPAN_MATCHER_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nereval/corpus.h"

namespace nereval {

enum class MatchKind {
  kExactMatch = 0,
  kType1CompleteFalsePositive,
  kType2CompleteFalseNegative,
  kType3WrongLabelRightSpan,
  kType4WrongLabelOverlapSpan,
  kType5RightLabelOverlapSpan,
};

inline constexpr int kNumMatchKinds = 6;
inline constexpr std::array<MatchKind, kNumMatchKinds> kAllMatchKinds = {
    MatchKind::kExactMatch,
    MatchKind::kType1CompleteFalsePositive,
    MatchKind::kType2CompleteFalseNegative,
    MatchKind::kType3WrongLabelRightSpan,
    MatchKind::kType4WrongLabelOverlapSpan,
    MatchKind::kType5RightLabelOverlapSpan,
};

// Ledger names: "ExactMatch", "Type1_CompleteFalsePositive", ...
const char *MatchKindName(MatchKind kind);
// Short names used in tables: "exact", "type1" .. "type5".
const char *MatchKindShortName(MatchKind kind);
std::optional<MatchKind> MatchKindFromName(std::string_view name);

struct MatchRecord {
  std::string record_id;  // "<doc_id>#<ordinal>"
  MatchKind kind = MatchKind::kExactMatch;
  std::optional<EntityMention> pred;
  std::optional<EntityMention> gold;
  int overlap_tokens = 0;

  const std::string &doc_id() const { return pred ? pred->doc_id : gold->doc_id; }
  // Pred label when a prediction is present, gold label otherwise.
  const std::string &label() const { return pred ? pred->label : gold->label; }

  bool operator==(const MatchRecord &) const = default;
};

// Mutually exclusive status of one gold entity, by priority.
enum class GoldStatus { kExactMatched, kType3Paired, kCovered, kType2 };

struct GoldEntry {
  EntityMention mention;
  GoldStatus status = GoldStatus::kType2;
  // Indices into MatchReport::records of every record naming this gold.
  std::vector<size_t> records;
};

using KindCounts = std::array<int64_t, kNumMatchKinds>;

struct MatchReport {
  std::vector<MatchRecord> records;
  std::vector<GoldEntry> golds;

  KindCounts counts{};
  // Per label; a record is attributed to its gold label when it has a gold
  // side and to its prediction label otherwise.
  std::map<std::string, KindCounts> label_counts;

  int64_t num_gold = 0;
  int64_t num_pred = 0;
  std::map<std::string, int64_t> gold_per_label;
  std::map<std::string, int64_t> pred_per_label;

  int64_t count(MatchKind kind) const {
    return counts[static_cast<int>(kind)];
  }
  // Records of every kind except kExactMatch.
  int64_t NumErrors() const;
  std::vector<std::string> Labels() const;
};

// Classifies one document. Records come back in canonical order (prediction
// start, then gold start; gold-only records last) with empty record ids.
// Throws ContractError if either list is not flat or mixes documents.
std::vector<MatchRecord> ClassifyDocument(
    const std::vector<EntityMention> &gold,
    const std::vector<EntityMention> &pred);

// Classifies every document of a paired corpus.
MatchReport ClassifyCorpus(const Corpus &corpus);

// Sorts records canonically (doc id, prediction start, gold start), assigns
// record ids and derives gold statuses and all counts. The records must
// describe a complete classification: every gold entity appears in at least
// one record. Used both after matching and when reloading a ledger.
MatchReport BuildReport(std::vector<MatchRecord> records);

// Mismatch ledger: one JSON object per record and line.
std::string WriteLedger(const MatchReport &report);
// Throws ParseError.
MatchReport ParseLedger(std::string_view content);

}  // namespace nereval

#endif  // NEREVAL_SPAN_MATCHER_H_
