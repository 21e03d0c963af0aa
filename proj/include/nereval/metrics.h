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

// Entity-level precision, recall and F1 under several counting conventions.
//
// Every convention is a choice of which records earn credit:
//   Exact / SemEvalStrict    exact matches
//   Relaxed / SemEvalType    exact matches and Type 5
//   SemEvalExactBoundary     exact matches and Type 3
//   SemEvalPartialBoundary   exact matches and Types 3, 4, 5
//   LearningBased, Human*    exact matches and accepted Type 5
// A prediction is a true positive when its record earns credit. A gold
// entity is a true positive when any record naming it earns credit. Credit
// is therefore counted separately on each side: one gold covered by two
// credited predictions yields two prediction-side hits and one gold-side hit.

#ifndef NEREVAL_METRICS_H_
#define NEREVAL_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nereval/decision.h"
#include "nereval/span_matcher.h"

namespace nereval {

enum class Convention {
  kExact,
  kRelaxed,
  kSemEvalStrict,
  kSemEvalExactBoundary,
  kSemEvalPartialBoundary,
  kSemEvalType,
  kLearningBased,
  kHumanStrict,
  kHumanForgiving,
};

const char *ConventionName(Convention convention);

// True for conventions that require matching labels; only those get a
// per-label breakdown.
bool IsLabelAware(Convention convention);

struct Prf {
  Convention convention = Convention::kExact;
  int64_t tp_pred = 0;
  int64_t tp_gold = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // Fills the ratios from the counts, with 0/0 taken as 0.
  static Prf FromCounts(Convention convention, int64_t tp_pred, int64_t fp,
                        int64_t tp_gold, int64_t fn);
};

struct ConventionScore {
  Prf overall;
  std::map<std::string, Prf> per_label;  // empty for label-blind modes
  // Unweighted means over per_label; informational.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

struct SemEvalScores {
  Prf strict;
  Prf exact_boundary;
  Prf partial_boundary;
  Prf type_match;
};

Prf ExactF(const MatchReport &report);
Prf RelaxedF(const MatchReport &report);
SemEvalScores SemEvalModes(const MatchReport &report);

// Throws CoverageError naming every Type-5 record without a decision.
Prf LearningBasedF(const MatchReport &report, const DecisionMap &decisions);

// Full score for one convention. `decisions` is required for LearningBased
// and the Human conventions and ignored otherwise.
ConventionScore Score(const MatchReport &report, Convention convention,
                      const DecisionMap *decisions = nullptr);

struct MetricSuite {
  std::vector<ConventionScore> scores;

  const ConventionScore *Find(Convention convention) const;
};

// Exact, Relaxed and the four SemEval modes, plus LearningBased when
// `decisions` is given.
MetricSuite ComputeSuite(const MatchReport &report,
                         const DecisionMap *decisions = nullptr);

// Ids of Type-5 records absent from `decisions`, in record order.
std::vector<std::string> MissingDecisions(const MatchReport &report,
                                          const DecisionMap &decisions);

}  // namespace nereval

#endif  // NEREVAL_METRICS_H_
