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

#ifndef NEREVAL_DECISION_H_
#define NEREVAL_DECISION_H_

#include <map>
#include <string>
#include <string_view>

namespace nereval {

enum class Verdict { kAccept, kReject };

// Accept/reject verdict on one Type-5 record. Accept iff the classifier's
// label equals the record's shared entity label.
struct Decision {
  std::string record_id;
  Verdict verdict = Verdict::kReject;
  std::string predicted_label;
  double confidence = 0.0;

  bool accepted() const { return verdict == Verdict::kAccept; }
  bool operator==(const Decision &) const = default;
};

using DecisionMap = std::map<std::string, Decision>;

// Decision file: one {"record_id", "verdict", "predicted_label",
// "confidence"} object per line.
std::string WriteDecisions(const DecisionMap &decisions);
// Throws ParseError.
DecisionMap ParseDecisions(std::string_view content);

}  // namespace nereval

#endif  // NEREVAL_DECISION_H_
