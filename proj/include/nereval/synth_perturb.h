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

// Prediction corpora synthesized from gold corpora by controlled
// perturbations, together with the ledger the matcher must produce for them.
//
// Each gold entity receives at most one edit; the edit whose coin comes up
// first in the order drop, relabel, split, shrink, extend wins. Edits that
// would make predictions overlap each other or reach into another gold
// entity (or across a sentence boundary) are skipped, and the entity is then
// copied unchanged. Spurious predictions are placed only on tokens covered by
// no gold and no prediction.

#ifndef NEREVAL_SYNTH_PERTURB_H_
#define NEREVAL_SYNTH_PERTURB_H_

#include <cstdint>

#include "nereval/corpus.h"
#include "nereval/span_matcher.h"

namespace nereval {

struct PerturbationPlan {
  uint64_t seed = 0;
  double extend_rate = 0.0;   // grow by 1..max_extend tokens on one side
  double shrink_rate = 0.0;   // drop 1..max_shrink tokens from the ends
  double split_rate = 0.0;    // cut into two adjacent predictions
  double relabel_rate = 0.0;  // same span, another label
  double drop_rate = 0.0;     // no prediction
  double insert_rate = 0.0;   // per gold entity plus once per document
  int max_extend = 2;
  int max_shrink = 2;
  int max_spurious_tokens = 3;
};

struct AppliedPerturbations {
  int64_t extended = 0;
  int64_t shrunk = 0;
  int64_t split = 0;
  int64_t relabeled = 0;
  int64_t dropped = 0;
  int64_t inserted = 0;
  int64_t skipped = 0;
  int64_t untouched = 0;
};

struct ExpectedLedger {
  MatchReport report;  // expected records and counts
  AppliedPerturbations applied;
};

struct PerturbResult {
  Corpus corpus;  // gold entities of the input plus generated predictions
  ExpectedLedger expected;
};

// Throws ContractError for rates outside [0, 1] or non-positive bounds, or
// when `gold` is not flat.
PerturbResult Perturb(const Corpus &gold, const PerturbationPlan &plan);

}  // namespace nereval

#endif  // NEREVAL_SYNTH_PERTURB_H_
