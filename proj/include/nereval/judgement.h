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

// Expert judgements of Type-5 mismatches and the human-experience
// benchmarks derived from them.
//
// Scores run from 1 (prediction rejected) to 5 (prediction more complete
// than the annotation). A strict user accepts scores of 3 and above, a
// forgiving user also accepts 2.

#ifndef NEREVAL_JUDGEMENT_H_
#define NEREVAL_JUDGEMENT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nereval/decision.h"
#include "nereval/metrics.h"
#include "nereval/span_matcher.h"

namespace nereval {

struct JudgementRecord {
  std::string record_id;
  int score = 0;
};

struct JudgementSet {
  std::vector<JudgementRecord> records;
  // Fraction of the report's Type-5 records that carry a judgement.
  double coverage = 0.0;
};

enum class UserProfile { kStrictUser, kForgivingUser };

int AcceptThreshold(UserProfile profile);
const char *UserProfileName(UserProfile profile);

// Accepts JSON lines {"record_id": str, "score": int} and two-column
// "record_id<TAB>score" lines, mixed freely. Throws ParseError on malformed
// lines, scores outside 1..5, duplicate ids and ids that are not Type-5
// records of `report`.
JudgementSet LoadJudgements(std::string_view content, const MatchReport &report);

struct ScoreDistribution {
  int64_t total = 0;
  std::array<int64_t, 5> counts{};     // index s-1
  std::array<double, 5> percent{};     // index s-1
  double share_at_least_2 = 0.0;       // percent
  double share_at_least_3 = 0.0;       // percent
};

// Throws ContractError on empty input.
ScoreDistribution ComputeScoreDistribution(
    const std::vector<JudgementRecord> &records);

// Decisions implied by the judgements for `profile`.
DecisionMap JudgementDecisions(const std::vector<JudgementRecord> &records,
                               UserProfile profile);

// Learning-based scoring with the profile's verdicts. Throws CoverageError
// listing unjudged Type-5 records.
Prf HumanF(const MatchReport &report, const std::vector<JudgementRecord> &records,
           UserProfile profile);

// Signed difference metric.f1 - human.f1 in percentage points.
double MetricError(const Prf &metric, const Prf &human);

struct ConfidenceSummary {
  int64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

struct AgreementStats {
  int64_t num_records = 0;
  int64_t classifier_accepts = 0;
  int64_t expert_accepts = 0;  // score >= 2
  int64_t both_accept = 0;
  int64_t disagreements = 0;
  int64_t low_confidence_disagreements = 0;  // confidence < 0.5

  // Ratios in [0, 1]; absent when the denominator is zero.
  std::optional<double> expert_accept_given_classifier_accept;
  std::optional<double> classifier_accept_given_expert_accept;
  double disagreement_rate = 0.0;
  std::optional<double> low_confidence_share_of_disagreements;

  // Classifier confidence by expert outcome; absent for empty groups.
  std::optional<ConfidenceSummary> accepted;           // score >= 3
  std::optional<ConfidenceSummary> partially_accepted; // score == 2
  std::optional<ConfidenceSummary> rejected;           // score == 1
};

inline constexpr double kLowConfidence = 0.5;

// Compares classifier decisions with expert judgements over the records
// present in both. Throws ContractError when they share no record.
AgreementStats ComputeAgreement(const DecisionMap &decisions,
                                const std::vector<JudgementRecord> &records);

}  // namespace nereval

#endif  // NEREVAL_JUDGEMENT_H_
