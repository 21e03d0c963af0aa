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

#include "nereval/metrics.h"

#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

const char *ConventionName(Convention convention) {
  switch (convention) {
    case Convention::kExact:
      return "exact";
    case Convention::kRelaxed:
      return "relaxed";
    case Convention::kSemEvalStrict:
      return "semeval_strict";
    case Convention::kSemEvalExactBoundary:
      return "semeval_exact_boundary";
    case Convention::kSemEvalPartialBoundary:
      return "semeval_partial_boundary";
    case Convention::kSemEvalType:
      return "semeval_type";
    case Convention::kLearningBased:
      return "learning_based";
    case Convention::kHumanStrict:
      return "human_strict";
    case Convention::kHumanForgiving:
      return "human_forgiving";
  }
  return "unknown";
}

bool IsLabelAware(Convention convention) {
  return convention != Convention::kSemEvalExactBoundary &&
         convention != Convention::kSemEvalPartialBoundary;
}

Prf Prf::FromCounts(Convention convention, int64_t tp_pred, int64_t fp,
                    int64_t tp_gold, int64_t fn) {
  Prf prf;
  prf.convention = convention;
  prf.tp_pred = tp_pred;
  prf.fp = fp;
  prf.tp_gold = tp_gold;
  prf.fn = fn;
  const int64_t pred_total = tp_pred + fp;
  const int64_t gold_total = tp_gold + fn;
  prf.precision = pred_total > 0 ? static_cast<double>(tp_pred) / pred_total : 0.0;
  prf.recall = gold_total > 0 ? static_cast<double>(tp_gold) / gold_total : 0.0;
  const double sum = prf.precision + prf.recall;
  prf.f1 = sum > 0.0 ? 2.0 * prf.precision * prf.recall / sum : 0.0;
  return prf;
}

std::vector<std::string> MissingDecisions(const MatchReport &report,
                                          const DecisionMap &decisions) {
  std::vector<std::string> missing;
  for (const MatchRecord &r : report.records) {
    if (r.kind == MatchKind::kType5RightLabelOverlapSpan &&
        !decisions.count(r.record_id)) {
      missing.push_back(r.record_id);
    }
  }
  return missing;
}

namespace {

bool NeedsDecisions(Convention c) {
  return c == Convention::kLearningBased || c == Convention::kHumanStrict ||
         c == Convention::kHumanForgiving;
}

bool Credits(Convention c, const MatchRecord &r, const DecisionMap *decisions) {
  switch (r.kind) {
    case MatchKind::kExactMatch:
      return true;
    case MatchKind::kType1CompleteFalsePositive:
    case MatchKind::kType2CompleteFalseNegative:
      return false;
    case MatchKind::kType3WrongLabelRightSpan:
      return c == Convention::kSemEvalExactBoundary ||
             c == Convention::kSemEvalPartialBoundary;
    case MatchKind::kType4WrongLabelOverlapSpan:
      return c == Convention::kSemEvalPartialBoundary;
    case MatchKind::kType5RightLabelOverlapSpan:
      if (NeedsDecisions(c)) return decisions->at(r.record_id).accepted();
      return c == Convention::kRelaxed || c == Convention::kSemEvalType ||
             c == Convention::kSemEvalPartialBoundary;
  }
  return false;
}

}  // namespace

ConventionScore Score(const MatchReport &report, Convention convention,
                      const DecisionMap *decisions) {
  if (NeedsDecisions(convention)) {
    if (decisions == nullptr) {
      throw ContractError(std::string(ConventionName(convention)) +
                          " scoring needs Type-5 decisions");
    }
    auto missing = MissingDecisions(report, *decisions);
    if (!missing.empty()) {
      throw CoverageError("no decision for Type-5 records: " +
                          internal::Join(missing, ", "));
    }
  }

  std::vector<bool> credited(report.records.size());
  int64_t tp_pred = 0;
  std::map<std::string, int64_t> tp_pred_label;
  for (size_t i = 0; i < report.records.size(); ++i) {
    const MatchRecord &r = report.records[i];
    credited[i] = Credits(convention, r, decisions);
    if (credited[i] && r.pred) {
      ++tp_pred;
      ++tp_pred_label[r.pred->label];
    }
  }
  int64_t tp_gold = 0;
  std::map<std::string, int64_t> tp_gold_label;
  for (const GoldEntry &g : report.golds) {
    for (size_t i : g.records) {
      if (credited[i]) {
        ++tp_gold;
        ++tp_gold_label[g.mention.label];
        break;
      }
    }
  }

  ConventionScore score;
  score.overall = Prf::FromCounts(convention, tp_pred, report.num_pred - tp_pred,
                                  tp_gold, report.num_gold - tp_gold);
  if (!IsLabelAware(convention)) return score;

  for (const std::string &label : report.Labels()) {
    auto count = [&label](const std::map<std::string, int64_t> &m) -> int64_t {
      auto it = m.find(label);
      return it == m.end() ? 0 : it->second;
    };
    const int64_t tpp = count(tp_pred_label);
    const int64_t tpg = count(tp_gold_label);
    score.per_label[label] = Prf::FromCounts(
        convention, tpp, count(report.pred_per_label) - tpp, tpg,
        count(report.gold_per_label) - tpg);
  }
  if (!score.per_label.empty()) {
    for (const auto &[label, prf] : score.per_label) {
      score.macro_precision += prf.precision;
      score.macro_recall += prf.recall;
      score.macro_f1 += prf.f1;
    }
    const double n = static_cast<double>(score.per_label.size());
    score.macro_precision /= n;
    score.macro_recall /= n;
    score.macro_f1 /= n;
  }
  return score;
}

Prf ExactF(const MatchReport &report) {
  return Score(report, Convention::kExact).overall;
}

Prf RelaxedF(const MatchReport &report) {
  return Score(report, Convention::kRelaxed).overall;
}

SemEvalScores SemEvalModes(const MatchReport &report) {
  SemEvalScores s;
  s.strict = Score(report, Convention::kSemEvalStrict).overall;
  s.exact_boundary = Score(report, Convention::kSemEvalExactBoundary).overall;
  s.partial_boundary =
      Score(report, Convention::kSemEvalPartialBoundary).overall;
  s.type_match = Score(report, Convention::kSemEvalType).overall;
  return s;
}

Prf LearningBasedF(const MatchReport &report, const DecisionMap &decisions) {
  return Score(report, Convention::kLearningBased, &decisions).overall;
}

const ConventionScore *MetricSuite::Find(Convention convention) const {
  for (const ConventionScore &s : scores) {
    if (s.overall.convention == convention) return &s;
  }
  return nullptr;
}

MetricSuite ComputeSuite(const MatchReport &report,
                         const DecisionMap *decisions) {
  MetricSuite suite;
  for (Convention c :
       {Convention::kExact, Convention::kRelaxed, Convention::kSemEvalStrict,
        Convention::kSemEvalExactBoundary, Convention::kSemEvalPartialBoundary,
        Convention::kSemEvalType}) {
    suite.scores.push_back(Score(report, c));
  }
  if (decisions != nullptr) {
    suite.scores.push_back(Score(report, Convention::kLearningBased, decisions));
  }
  return suite;
}

}  // namespace nereval
