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

// Entity-text classifier used to accept or reject Type-5 mismatches.
//
// The built-in model is multinomial logistic regression over hashed
// features: character n-grams (3 to 5 code points by default) of the
// lowercased text and its lowercased words. Training is plain SGD with a
// seeded shuffle per epoch and is single-threaded, so a given (pairs, config)
// always yields the same weights. Heavier classifiers can be run out of
// process through the request/response files below.

#ifndef NEREVAL_ENTITY_CLASSIFIER_H_
#define NEREVAL_ENTITY_CLASSIFIER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nereval/cls_data.h"
#include "nereval/decision.h"
#include "nereval/span_matcher.h"

namespace nereval {

struct TrainConfig {
  int epochs = 5;
  double learning_rate = 0.5;
  uint64_t seed = 0;
  uint64_t buckets = uint64_t{1} << 20;
  int min_ngram = 3;
  int max_ngram = 5;
};

struct Prediction {
  std::string label;
  double confidence = 0.0;
  // Aligned with ClassifierModel::labels().
  std::vector<double> distribution;
};

class ClassifierModel {
 public:
  static constexpr uint32_t kFormatVersion = 1;

  ClassifierModel() = default;

  // Sorted training labels plus "other".
  const std::vector<std::string> &labels() const { return labels_; }
  const TrainConfig &config() const { return config_; }

  // Throws ContractError on empty text.
  Prediction Predict(std::string_view text) const;

  // Little-endian binary format; only non-zero weight rows are stored.
  std::string Serialize() const;
  // Throws ParseError.
  static ClassifierModel Deserialize(std::string_view bytes);

 private:
  friend ClassifierModel Train(const std::vector<LabeledText> &pairs,
                               const TrainConfig &config);

  struct Feature {
    uint64_t bucket;
    float value;
  };
  std::vector<Feature> Featurize(std::string_view text) const;
  void Logits(const std::vector<Feature> &features,
              std::vector<double> *logits) const;

  TrainConfig config_;
  std::vector<std::string> labels_;
  std::vector<float> bias_;
  std::vector<float> weights_;  // buckets x labels, row-major
};

// Throws ContractError on empty input, fewer than two distinct labels, an
// empty text or an invalid configuration.
ClassifierModel Train(const std::vector<LabeledText> &pairs,
                      const TrainConfig &config);

// Fraction of `pairs` whose predicted label equals their label.
double Accuracy(const ClassifierModel &model,
                const std::vector<LabeledText> &pairs);

// Runs the model on the predicted text of every Type-5 record.
DecisionMap DecideType5(const ClassifierModel &model, const MatchReport &report);

// External classifier request: one {"id", "text"} per Type-5 record.
std::string WriteClassifierRequest(const MatchReport &report);

// Converts an external response ({"id", "label", "confidence"} per line) into
// decisions. Throws ParseError for malformed lines, unknown or duplicate ids,
// labels outside the report's labels plus "other" and confidences outside
// [0, 1]; throws CoverageError naming Type-5 records without a response.
DecisionMap ParseClassifierResponse(std::string_view content,
                                    const MatchReport &report);

}  // namespace nereval

#endif  // NEREVAL_ENTITY_CLASSIFIER_H_
