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

// Structured run report shared by every CLI command. The JSON document is
// the single source of truth; the Markdown summary is rendered from it.

#ifndef NEREVAL_REPORT_H_
#define NEREVAL_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nereval/decision.h"
#include "nereval/judgement.h"
#include "nereval/metrics.h"
#include "nereval/span_matcher.h"

namespace nereval {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct InputFile {
  std::string role;
  std::string path;
  std::string content;
};

struct RunReportRequest {
  std::string command;
  std::optional<uint64_t> seed;
  std::vector<InputFile> inputs;
  const MatchReport *match = nullptr;
  // Classifier or external decisions on the Type-5 records.
  const DecisionMap *decisions = nullptr;
  std::string decision_source;  // "model" or "external"
  const JudgementSet *judgements = nullptr;
  // Human benchmarks to report; must not be empty when judgements are set.
  std::vector<UserProfile> profiles = {UserProfile::kStrictUser,
                                       UserProfile::kForgivingUser};
};

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

// Percentage with two decimals, e.g. 0.123456 -> "12.35".
std::string FormatPercent(double ratio);

nlohmann::ordered_json PrfJson(const Prf &prf);

// Builds the report. Throws CoverageError when decisions or judgements do
// not cover every Type-5 record.
nlohmann::ordered_json BuildRunReport(const RunReportRequest &request);

std::string RenderMarkdown(const nlohmann::ordered_json &report);

// Two-line headline: exact and relaxed F (plus learning-based if present).
std::string RenderHeadline(const nlohmann::ordered_json &report);

}  // namespace nereval

#endif  // NEREVAL_REPORT_H_
