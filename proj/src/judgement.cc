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

#include "nereval/judgement.h"

#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

int AcceptThreshold(UserProfile profile) {
  return profile == UserProfile::kStrictUser ? 3 : 2;
}

const char *UserProfileName(UserProfile profile) {
  return profile == UserProfile::kStrictUser ? "strict" : "forgiving";
}

namespace {

int ParseScore(std::string_view text, int line) {
  text = internal::Trim(text);
  if (text.size() != 1 || text[0] < '0' || text[0] > '9') {
    throw ParseError("score must be an integer in 1..5, got '" +
                         std::string(text) + "'",
                     line);
  }
  return text[0] - '0';
}

}  // namespace

JudgementSet LoadJudgements(std::string_view content, const MatchReport &report) {
  std::set<std::string> type5;
  for (const MatchRecord &r : report.records) {
    if (r.kind == MatchKind::kType5RightLabelOverlapSpan) type5.insert(r.record_id);
  }
  JudgementSet set;
  std::set<std::string> seen;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    std::string_view trimmed = internal::Trim(line);
    if (trimmed.empty()) continue;
    JudgementRecord record;
    if (trimmed.front() == '{') {
      try {
        const auto object = nlohmann::json::parse(trimmed);
        record.record_id = object.at("record_id").get<std::string>();
        const auto &score = object.at("score");
        if (!score.is_number_integer()) {
          throw ParseError("score must be an integer", line_no);
        }
        const auto value = score.get<int64_t>();
        record.score = value < 0 || value > 9 ? -1 : static_cast<int>(value);
      } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad judgement: ") + e.what(), line_no);
      }
    } else {
      const size_t tab = trimmed.find('\t');
      if (tab == std::string_view::npos ||
          trimmed.find('\t', tab + 1) != std::string_view::npos) {
        throw ParseError("expected 'record_id<TAB>score'", line_no);
      }
      record.record_id = std::string(internal::Trim(trimmed.substr(0, tab)));
      record.score = ParseScore(trimmed.substr(tab + 1), line_no);
    }
    if (record.score < 1 || record.score > 5) {
      throw ParseError("score outside 1..5 for record " + record.record_id,
                       line_no);
    }
    if (!type5.count(record.record_id)) {
      throw ParseError("record '" + record.record_id +
                           "' is not a Type-5 record of the report",
                       line_no);
    }
    if (!seen.insert(record.record_id).second) {
      throw ParseError("duplicate judgement for record " + record.record_id,
                       line_no);
    }
    set.records.push_back(std::move(record));
  }
  set.coverage = type5.empty() ? 0.0
                               : static_cast<double>(set.records.size()) /
                                     static_cast<double>(type5.size());
  return set;
}

ScoreDistribution ComputeScoreDistribution(
    const std::vector<JudgementRecord> &records) {
  if (records.empty()) throw ContractError("no judgements to summarize");
  ScoreDistribution d;
  d.total = static_cast<int64_t>(records.size());
  for (const JudgementRecord &r : records) {
    if (r.score < 1 || r.score > 5) throw ContractError("score outside 1..5");
    ++d.counts[r.score - 1];
  }
  const double total = static_cast<double>(d.total);
  for (int s = 0; s < 5; ++s) d.percent[s] = 100.0 * d.counts[s] / total;
  d.share_at_least_3 = 100.0 * (d.counts[2] + d.counts[3] + d.counts[4]) / total;
  d.share_at_least_2 =
      100.0 * (d.counts[1] + d.counts[2] + d.counts[3] + d.counts[4]) / total;
  return d;
}

DecisionMap JudgementDecisions(const std::vector<JudgementRecord> &records,
                               UserProfile profile) {
  DecisionMap decisions;
  for (const JudgementRecord &r : records) {
    Decision d;
    d.record_id = r.record_id;
    d.verdict = r.score >= AcceptThreshold(profile) ? Verdict::kAccept
                                                    : Verdict::kReject;
    d.confidence = 1.0;
    decisions.emplace(r.record_id, std::move(d));
  }
  return decisions;
}

Prf HumanF(const MatchReport &report, const std::vector<JudgementRecord> &records,
           UserProfile profile) {
  const DecisionMap decisions = JudgementDecisions(records, profile);
  auto missing = MissingDecisions(report, decisions);
  if (!missing.empty()) {
    throw CoverageError("unjudged Type-5 records: " + internal::Join(missing, ", "));
  }
  const Convention convention = profile == UserProfile::kStrictUser
                                    ? Convention::kHumanStrict
                                    : Convention::kHumanForgiving;
  return Score(report, convention, &decisions).overall;
}

double MetricError(const Prf &metric, const Prf &human) {
  return 100.0 * (metric.f1 - human.f1);
}

namespace {

std::optional<double> Ratio(int64_t num, int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<ConfidenceSummary> Summarize(const std::vector<double> &values) {
  if (values.empty()) return std::nullopt;
  ConfidenceSummary s;
  s.count = static_cast<int64_t>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(s.count);
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(s.count));
  return s;
}

}  // namespace

AgreementStats ComputeAgreement(const DecisionMap &decisions,
                                const std::vector<JudgementRecord> &records) {
  AgreementStats stats;
  std::vector<double> accepted, partial, rejected;
  for (const JudgementRecord &j : records) {
    auto it = decisions.find(j.record_id);
    if (it == decisions.end()) continue;
    const Decision &d = it->second;
    ++stats.num_records;
    const bool cls = d.accepted();
    const bool expert = j.score >= 2;
    stats.classifier_accepts += cls;
    stats.expert_accepts += expert;
    stats.both_accept += cls && expert;
    if (cls != expert) {
      ++stats.disagreements;
      if (d.confidence < kLowConfidence) ++stats.low_confidence_disagreements;
    }
    (j.score >= 3 ? accepted : j.score == 2 ? partial : rejected)
        .push_back(d.confidence);
  }
  if (stats.num_records == 0) {
    throw ContractError("decisions and judgements share no record");
  }
  stats.expert_accept_given_classifier_accept =
      Ratio(stats.both_accept, stats.classifier_accepts);
  stats.classifier_accept_given_expert_accept =
      Ratio(stats.both_accept, stats.expert_accepts);
  stats.disagreement_rate = *Ratio(stats.disagreements, stats.num_records);
  stats.low_confidence_share_of_disagreements =
      Ratio(stats.low_confidence_disagreements, stats.disagreements);
  stats.accepted = Summarize(accepted);
  stats.partially_accepted = Summarize(partial);
  stats.rejected = Summarize(rejected);
  return stats;
}

}  // namespace nereval
