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

// Test-only oracles and random generators. Nothing here calls the library's
// matching or scoring code; the oracles recompute everything from raw
// entity lists by exhaustive scans.

#ifndef NEREVAL_TESTS_TESTING_ORACLE_H_
#define NEREVAL_TESTS_TESTING_ORACLE_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nereval/corpus.h"

namespace nereval {
namespace testing {

// Record as computed by the brute-force oracle. Indices refer to the input
// lists; -1 means absent.
struct OracleRecord {
  int kind = 0;  // same numbering as MatchKind
  int pred = -1;
  int gold = -1;
  int overlap = 0;
};

// Exhaustive classification under the documented stage priorities.
std::vector<OracleRecord> OracleClassify(const std::vector<EntityMention> &gold,
                                         const std::vector<EntityMention> &pred);

std::array<int64_t, 6> OracleCounts(const std::vector<OracleRecord> &records);

// Raw counts for one convention recomputed from records and entity lists.
struct OracleTally {
  int64_t tp_pred = 0;
  int64_t tp_gold = 0;
  int64_t num_pred = 0;
  int64_t num_gold = 0;
};

// `credit[kind]` says whether a record kind earns credit; `accept_type5`, if
// non-empty, overrides credit for Type-5 records per prediction index.
OracleTally OracleTallyFor(const std::vector<EntityMention> &gold,
                           const std::vector<EntityMention> &pred,
                           const std::array<bool, 6> &credit,
                           const std::vector<bool> &accept_type5 = {});

// Exact-F recount straight from entity lists: number of (gold, pred) pairs
// with identical span and label.
int64_t OracleExactPairs(const std::vector<EntityMention> &gold,
                         const std::vector<EntityMention> &pred);

double OracleF1(int64_t tp_pred, int64_t num_pred, int64_t tp_gold,
                int64_t num_gold);

struct RandomDocOptions {
  int max_tokens = 20;
  int max_entities = 8;
  int num_labels = 3;
  int max_entity_tokens = 5;
  // Entities never cross sentence boundaries.
  int sentence_length = 7;
};

// A document with random flat gold and predicted entity lists.
Document RandomDocument(std::mt19937_64 &rng, const std::string &doc_id,
                        const RandomDocOptions &options = {});

Corpus RandomCorpus(std::mt19937_64 &rng, int num_docs,
                    const RandomDocOptions &options = {});

}  // namespace testing
}  // namespace nereval

#endif  // NEREVAL_TESTS_TESTING_ORACLE_H_
