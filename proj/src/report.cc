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

#include "nereval/report.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

#include "nereval/errors.h"

namespace nereval {

using nlohmann::ordered_json;

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static const char *kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < size; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string FormatPercent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * ratio);
  return buf;
}

namespace {

std::string FormatSigned(double points) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f", points);
  return buf;
}

ordered_json Share(int64_t count, int64_t total) {
  return {{"count", count},
          {"pct", FormatPercent(total > 0 ? static_cast<double>(count) / total
                                          : 0.0)}};
}

ordered_json OptionalRatio(const std::optional<double> &value) {
  if (!value) return nullptr;
  return {{"value", *value}, {"pct", FormatPercent(*value)}};
}

ordered_json ConfidenceJson(const std::optional<ConfidenceSummary> &s) {
  if (!s) return nullptr;
  return {{"count", s->count}, {"mean", s->mean}, {"stddev", s->stddev}};
}

ordered_json InputsJson(const std::vector<InputFile> &inputs) {
  ordered_json out = ordered_json::array();
  for (const InputFile &f : inputs) {
    out.push_back({{"role", f.role},
                   {"path", f.path},
                   {"bytes", f.content.size()},
                   {"sha256", Sha256Hex(f.content)}});
  }
  return out;
}

ordered_json MatchJson(const MatchReport &m) {
  ordered_json counts = ordered_json::object();
  for (MatchKind k : kAllMatchKinds) counts[MatchKindName(k)] = m.count(k);
  ordered_json errors = ordered_json::object();
  for (MatchKind k : kAllMatchKinds) {
    if (k == MatchKind::kExactMatch) continue;
    errors[MatchKindName(k)] = Share(m.count(k), m.NumErrors());
  }
  ordered_json per_label = ordered_json::object();
  for (const std::string &label : m.Labels()) {
    ordered_json entry;
    auto g = m.gold_per_label.find(label);
    auto p = m.pred_per_label.find(label);
    entry["gold"] = g == m.gold_per_label.end() ? 0 : g->second;
    entry["pred"] = p == m.pred_per_label.end() ? 0 : p->second;
    ordered_json kinds = ordered_json::object();
    auto lc = m.label_counts.find(label);
    for (MatchKind k : kAllMatchKinds) {
      kinds[MatchKindName(k)] =
          lc == m.label_counts.end() ? 0 : lc->second[static_cast<int>(k)];
    }
    entry["counts"] = std::move(kinds);
    per_label[label] = std::move(entry);
  }
  return {{"num_gold", m.num_gold},
          {"num_pred", m.num_pred},
          {"num_records", m.records.size()},
          {"num_errors", m.NumErrors()},
          {"counts", std::move(counts)},
          {"error_distribution", std::move(errors)},
          {"per_label", std::move(per_label)}};
}

ordered_json SuiteJson(const MetricSuite &suite) {
  ordered_json out = ordered_json::object();
  for (const ConventionScore &s : suite.scores) {
    ordered_json entry = PrfJson(s.overall);
    if (!s.per_label.empty()) {
      entry["macro"] = {{"precision", s.macro_precision},
                        {"recall", s.macro_recall},
                        {"f1", s.macro_f1},
                        {"f1_pct", FormatPercent(s.macro_f1)}};
      ordered_json labels = ordered_json::object();
      for (const auto &[label, prf] : s.per_label) labels[label] = PrfJson(prf);
      entry["per_label"] = std::move(labels);
    }
    out[ConventionName(s.overall.convention)] = std::move(entry);
  }
  return out;
}

ordered_json DecisionJson(const MatchReport &m, const DecisionMap &decisions,
                          const std::string &source) {
  int64_t accepted = 0;
  int64_t rejected = 0;
  int64_t rejected_as_other = 0;
  int64_t low_confidence = 0;
  for (const MatchRecord &r : m.records) {
    if (r.kind != MatchKind::kType5RightLabelOverlapSpan) continue;
    const Decision &d = decisions.at(r.record_id);
    if (d.accepted()) {
      ++accepted;
    } else {
      ++rejected;
      if (d.predicted_label == "other") ++rejected_as_other;
    }
    if (d.confidence < kLowConfidence) ++low_confidence;
  }
  const int64_t type5 = accepted + rejected;
  return {{"source", source},
          {"type5_total", type5},
          {"accepted", accepted},
          {"rejected", rejected},
          {"rejected_as_other", rejected_as_other},
          {"low_confidence", low_confidence},
          {"accepted_of_type5", Share(accepted, type5)},
          {"accepted_of_errors", Share(accepted, m.NumErrors())},
          {"rejected_of_errors", Share(rejected, m.NumErrors())}};
}

ordered_json AgreementJson(const AgreementStats &a) {
  return {{"records", a.num_records},
          {"classifier_accepts", a.classifier_accepts},
          {"expert_accepts", a.expert_accepts},
          {"both_accept", a.both_accept},
          {"disagreements", a.disagreements},
          {"low_confidence_disagreements", a.low_confidence_disagreements},
          {"expert_accept_given_classifier_accept",
           OptionalRatio(a.expert_accept_given_classifier_accept)},
          {"classifier_accept_given_expert_accept",
           OptionalRatio(a.classifier_accept_given_expert_accept)},
          {"disagreement_rate", OptionalRatio(a.disagreement_rate)},
          {"low_confidence_share_of_disagreements",
           OptionalRatio(a.low_confidence_share_of_disagreements)},
          {"confidence_by_expert_outcome",
           {{"accepted", ConfidenceJson(a.accepted)},
            {"partially_accepted", ConfidenceJson(a.partially_accepted)},
            {"rejected", ConfidenceJson(a.rejected)}}}};
}

ordered_json JudgementJson(const MatchReport &m, const JudgementSet &judgements,
                           const DecisionMap *decisions,
                           const std::vector<UserProfile> &profiles) {
  const ScoreDistribution dist = ComputeScoreDistribution(judgements.records);
  ordered_json scores = ordered_json::object();
  for (int s = 1; s <= 5; ++s) {
    scores[std::to_string(s)] = {{"count", dist.counts[s - 1]},
                                 {"pct", FormatPercent(dist.percent[s - 1] / 100.0)}};
  }
  ordered_json out;
  out["records"] = judgements.records.size();
  out["coverage"] = {{"value", judgements.coverage},
                     {"pct", FormatPercent(judgements.coverage)}};
  out["distribution"] = {
      {"scores", std::move(scores)},
      {"share_at_least_2_pct", FormatPercent(dist.share_at_least_2 / 100.0)},
      {"share_at_least_3_pct", FormatPercent(dist.share_at_least_3 / 100.0)}};

  const Prf exact = ExactF(m);
  const Prf relaxed = RelaxedF(m);
  std::optional<Prf> learned;
  if (decisions != nullptr) learned = LearningBasedF(m, *decisions);

  ordered_json human = ordered_json::object();
  ordered_json errors = ordered_json::object();
  for (UserProfile profile : profiles) {
    const Prf h = HumanF(m, judgements.records, profile);
    human[UserProfileName(profile)] = PrfJson(h);
    ordered_json e = ordered_json::object();
    auto add = [&](const char *name, const Prf &metric) {
      const double points = MetricError(metric, h);
      e[name] = {{"points", points}, {"signed_pct", FormatSigned(points)}};
    };
    add("exact", exact);
    if (learned) add("learning_based", *learned);
    add("relaxed", relaxed);
    errors[UserProfileName(profile)] = std::move(e);
  }
  out["human_f"] = std::move(human);
  out["metric_error"] = std::move(errors);
  if (decisions != nullptr) {
    out["agreement"] = AgreementJson(ComputeAgreement(*decisions, judgements.records));
  }
  return out;
}

}  // namespace

ordered_json PrfJson(const Prf &prf) {
  return {{"convention", ConventionName(prf.convention)},
          {"tp_pred", prf.tp_pred},
          {"tp_gold", prf.tp_gold},
          {"fp", prf.fp},
          {"fn", prf.fn},
          {"precision", prf.precision},
          {"recall", prf.recall},
          {"f1", prf.f1},
          {"precision_pct", FormatPercent(prf.precision)},
          {"recall_pct", FormatPercent(prf.recall)},
          {"f1_pct", FormatPercent(prf.f1)}};
}

ordered_json BuildRunReport(const RunReportRequest &request) {
  ordered_json report;
  report["tool"] = {{"name", "nereval"}, {"version", kToolVersion}};
  report["command"] = request.command;
  report["seed"] = request.seed ? ordered_json(*request.seed) : ordered_json(nullptr);
  report["inputs"] = InputsJson(request.inputs);
  if (request.match == nullptr) return report;

  const MatchReport &m = *request.match;
  if (request.decisions != nullptr) {
    auto missing = MissingDecisions(m, *request.decisions);
    if (!missing.empty()) {
      std::string ids;
      for (const auto &id : missing) ids += (ids.empty() ? "" : ", ") + id;
      throw CoverageError("no decision for Type-5 records: " + ids);
    }
  }
  report["match"] = MatchJson(m);
  report["metrics"] = SuiteJson(ComputeSuite(m, request.decisions));
  if (request.decisions != nullptr) {
    report["decisions"] = DecisionJson(m, *request.decisions, request.decision_source);
  }
  if (request.judgements != nullptr) {
    if (request.profiles.empty()) throw ContractError("no user profile requested");
    report["judgement"] =
        JudgementJson(m, *request.judgements, request.decisions, request.profiles);
  }
  return report;
}

namespace {

std::string Cell(const ordered_json &value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "-";
  return value.dump();
}

void PrfRow(std::string *out, const std::string &name, const ordered_json &prf) {
  *out += "| " + name + " | " + Cell(prf["precision_pct"]) + " | " +
          Cell(prf["recall_pct"]) + " | " + Cell(prf["f1_pct"]) + " | " +
          Cell(prf["tp_pred"]) + " | " + Cell(prf["tp_gold"]) + " | " +
          Cell(prf["fp"]) + " | " + Cell(prf["fn"]) + " |\n";
}

const char *kPrfHeader =
    "| | P (%) | R (%) | F1 (%) | TP pred | TP gold | FP | FN |\n"
    "|---|---:|---:|---:|---:|---:|---:|---:|\n";

}  // namespace

std::string RenderMarkdown(const ordered_json &report) {
  std::string out = "# nereval report\n\n";
  out += "Command: `" + Cell(report["command"]) + "`, tool version " +
         Cell(report["tool"]["version"]) + ", seed " + Cell(report["seed"]) + ".\n\n";
  if (!report["inputs"].empty()) {
    out += "| Input | Path | SHA-256 |\n|---|---|---|\n";
    for (const auto &f : report["inputs"]) {
      out += "| " + Cell(f["role"]) + " | " + Cell(f["path"]) + " | `" +
             Cell(f["sha256"]).substr(0, 16) + "` |\n";
    }
    out += "\n";
  }
  if (report.contains("match")) {
    const auto &m = report["match"];
    out += "## Mismatch types\n\n";
    out += "Gold entities: " + Cell(m["num_gold"]) + ", predicted: " +
           Cell(m["num_pred"]) + ", errors: " + Cell(m["num_errors"]) + ".\n\n";
    out += "| Kind | Count | Share of errors (%) |\n|---|---:|---:|\n";
    for (const auto &[kind, count] : m["counts"].items()) {
      const auto &share = m["error_distribution"];
      out += "| " + kind + " | " + Cell(count) + " | " +
             (share.contains(kind) ? Cell(share[kind]["pct"]) : std::string("-")) +
             " |\n";
    }
    out += "\n## F-scores\n\n";
    out += kPrfHeader;
    for (const auto &[name, prf] : report["metrics"].items()) PrfRow(&out, name, prf);
    out += "\n";
  }
  if (report.contains("decisions")) {
    const auto &d = report["decisions"];
    out += "## Type-5 decisions (" + Cell(d["source"]) + ")\n\n";
    out += "Accepted " + Cell(d["accepted"]) + " of " + Cell(d["type5_total"]) +
           " (" + Cell(d["accepted_of_type5"]["pct"]) + "%), " +
           Cell(d["accepted_of_errors"]["pct"]) +
           "% of all errors; rejected " + Cell(d["rejected"]) + " (" +
           Cell(d["rejected_as_other"]) + " as other).\n\n";
  }
  if (report.contains("judgement")) {
    const auto &j = report["judgement"];
    out += "## Expert judgement\n\n";
    out += "Judged records: " + Cell(j["records"]) + " (coverage " +
           Cell(j["coverage"]["pct"]) + "%).\n\n";
    out += "| Score | Count | Share (%) |\n|---|---:|---:|\n";
    for (const auto &[score, entry] : j["distribution"]["scores"].items()) {
      out += "| " + score + " | " + Cell(entry["count"]) + " | " +
             Cell(entry["pct"]) + " |\n";
    }
    out += "\nScore >= 3: " + Cell(j["distribution"]["share_at_least_3_pct"]) +
           "%, score >= 2: " + Cell(j["distribution"]["share_at_least_2_pct"]) +
           "%.\n\n";
    out += kPrfHeader;
    for (const auto &[name, prf] : j["human_f"].items()) {
      PrfRow(&out, "human " + name, prf);
    }
    const auto &errors = j["metric_error"];
    out += "\n| F-score |";
    std::string rule = "|---|";
    for (const auto &[profile, unused] : errors.items()) {
      out += " err. vs " + profile + " user |";
      rule += "---:|";
    }
    out += "\n" + rule + "\n";
    for (const auto &[metric, unused] : errors.begin()->items()) {
      out += "| " + metric + " |";
      for (const auto &[profile, values] : errors.items()) {
        out += " " + Cell(values[metric]["signed_pct"]) + " |";
      }
      out += "\n";
    }
    out += "\n";
    if (j.contains("agreement")) {
      const auto &a = j["agreement"];
      auto pct = [](const ordered_json &v) {
        return v.is_null() ? std::string("-") : Cell(v["pct"]);
      };
      out += "Classifier vs expert over " + Cell(a["records"]) + " records: " +
             "expert accepts " + pct(a["expert_accept_given_classifier_accept"]) +
             "% of classifier accepts, classifier accepts " +
             pct(a["classifier_accept_given_expert_accept"]) +
             "% of expert accepts, disagreement " + pct(a["disagreement_rate"]) +
             "%, low-confidence share of disagreements " +
             pct(a["low_confidence_share_of_disagreements"]) + "%.\n\n";
    }
  }
  return out;
}

std::string RenderHeadline(const ordered_json &report) {
  std::string out;
  if (!report.contains("metrics")) return out;
  for (const char *name : {"exact", "relaxed", "learning_based"}) {
    if (!report["metrics"].contains(name)) continue;
    const auto &prf = report["metrics"][name];
    out += std::string(name) + " P=" + Cell(prf["precision_pct"]) +
           " R=" + Cell(prf["recall_pct"]) + " F1=" + Cell(prf["f1_pct"]) + "\n";
  }
  return out;
}

}  // namespace nereval
