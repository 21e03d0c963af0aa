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

#include "nereval/decision.h"

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

using nlohmann::ordered_json;

std::string WriteDecisions(const DecisionMap &decisions) {
  std::string out;
  for (const auto &[id, d] : decisions) {
    ordered_json line{{"record_id", id},
                      {"verdict", d.accepted() ? "accept" : "reject"},
                      {"predicted_label", d.predicted_label},
                      {"confidence", d.confidence}};
    out.append(line.dump()).append("\n");
  }
  return out;
}

DecisionMap ParseDecisions(std::string_view content) {
  DecisionMap decisions;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    Decision d;
    try {
      const auto object = ordered_json::parse(line);
      d.record_id = object.at("record_id").get<std::string>();
      const std::string verdict = object.at("verdict").get<std::string>();
      if (verdict == "accept") {
        d.verdict = Verdict::kAccept;
      } else if (verdict == "reject") {
        d.verdict = Verdict::kReject;
      } else {
        throw ParseError("unknown verdict '" + verdict + "'", line_no);
      }
      d.predicted_label = object.at("predicted_label").get<std::string>();
      d.confidence = object.at("confidence").get<double>();
    } catch (const ordered_json::exception &e) {
      throw ParseError(std::string("bad decision: ") + e.what(), line_no);
    }
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw ParseError("confidence outside [0, 1]", line_no);
    }
    const std::string id = d.record_id;
    if (!decisions.emplace(id, std::move(d)).second) {
      throw ParseError("duplicate decision for " + id, line_no);
    }
  }
  return decisions;
}

}  // namespace nereval
