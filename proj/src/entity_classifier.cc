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

#include "nereval/entity_classifier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

namespace {

constexpr uint64_t kCharSeed = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kWordSeed = 0xc2b2ae3d27d4eb4fULL;
constexpr char kMagic[8] = {'N', 'E', 'R', 'E', 'V', 'C', 'L', 'S'};

void ValidateConfig(const TrainConfig &config) {
  if (config.epochs < 1) throw ContractError("epochs must be at least 1");
  if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
    throw ContractError("learning rate must be positive");
  }
  if (config.buckets < 1 || config.buckets > (uint64_t{1} << 32)) {
    throw ContractError("bucket count must lie in [1, 2^32]");
  }
  if (config.min_ngram < 1 || config.max_ngram < config.min_ngram) {
    throw ContractError("invalid n-gram range");
  }
}

void Softmax(std::vector<double> *values) {
  const double max = *std::max_element(values->begin(), values->end());
  double sum = 0.0;
  for (double &v : *values) {
    v = std::exp(v - max);
    sum += v;
  }
  for (double &v : *values) v /= sum;
}

// Little-endian primitive writer/reader for the model file.
class Writer {
 public:
  void U32(uint32_t v) { Bytes(v, 4); }
  void U64(uint64_t v) { Bytes(v, 8); }
  void F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Str(const std::string &s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.append(s);
  }
  void Raw(const char *data, size_t n) { out_.append(data, n); }
  std::string Take() { return std::move(out_); }

 private:
  void Bytes(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  uint32_t U32() { return static_cast<uint32_t>(Bytes(4)); }
  uint64_t U64() { return Bytes(8); }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Str() {
    const uint32_t n = U32();
    Need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view Raw(size_t n) {
    Need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == data_.size(); }

 private:
  void Need(size_t n) {
    if (data_.size() - pos_ < n) throw ParseError("truncated model file");
  }
  uint64_t Bytes(int n) {
    Need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    return v;
  }
  std::string_view data_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<ClassifierModel::Feature> ClassifierModel::Featurize(
    std::string_view text) const {
  const std::string lower = internal::AsciiLower(internal::Trim(text));
  std::map<uint64_t, int> counts;
  const std::vector<size_t> bounds = internal::CodePointBoundaries(lower);
  const int num_chars = static_cast<int>(bounds.size()) - 1;
  for (int n = config_.min_ngram; n <= config_.max_ngram; ++n) {
    for (int i = 0; i + n <= num_chars; ++i) {
      std::string_view gram(lower.data() + bounds[i], bounds[i + n] - bounds[i]);
      ++counts[internal::Fnv1a64(gram, kCharSeed) % config_.buckets];
    }
  }
  for (std::string_view word : internal::SplitWhitespace(lower)) {
    ++counts[internal::Fnv1a64(word, kWordSeed) % config_.buckets];
  }
  int total = 0;
  for (const auto &[bucket, n] : counts) total += n;
  std::vector<Feature> features;
  features.reserve(counts.size());
  for (const auto &[bucket, n] : counts) {
    features.push_back({bucket, static_cast<float>(n) / static_cast<float>(total)});
  }
  return features;
}

void ClassifierModel::Logits(const std::vector<Feature> &features,
                             std::vector<double> *logits) const {
  const size_t k = labels_.size();
  logits->assign(bias_.begin(), bias_.end());
  for (const Feature &f : features) {
    const float *row = &weights_[f.bucket * k];
    for (size_t j = 0; j < k; ++j) {
      (*logits)[j] += static_cast<double>(f.value) * row[j];
    }
  }
}

Prediction ClassifierModel::Predict(std::string_view text) const {
  if (internal::Trim(text).empty()) {
    throw ContractError("cannot classify empty text");
  }
  if (labels_.empty()) throw ContractError("model is not trained");
  Prediction prediction;
  Logits(Featurize(text), &prediction.distribution);
  Softmax(&prediction.distribution);
  // First maximum wins, i.e. ties go to the earlier label.
  const auto best = std::max_element(prediction.distribution.begin(),
                                     prediction.distribution.end());
  prediction.label = labels_[best - prediction.distribution.begin()];
  prediction.confidence = *best;
  return prediction;
}

ClassifierModel Train(const std::vector<LabeledText> &pairs,
                      const TrainConfig &config) {
  ValidateConfig(config);
  if (pairs.empty()) throw ContractError("no training pairs");
  std::set<std::string> label_set;
  for (const LabeledText &p : pairs) {
    if (internal::Trim(p.text).empty()) {
      throw ContractError("training pair with empty text");
    }
    label_set.insert(p.label);
  }
  if (label_set.size() < 2) {
    throw ContractError("training pairs need at least two distinct labels");
  }
  label_set.insert(std::string(kOtherLabel));

  ClassifierModel model;
  model.config_ = config;
  model.labels_.assign(label_set.begin(), label_set.end());
  const size_t k = model.labels_.size();
  model.bias_.assign(k, 0.0f);
  model.weights_.assign(config.buckets * k, 0.0f);

  std::vector<std::vector<ClassifierModel::Feature>> features;
  std::vector<size_t> targets;
  features.reserve(pairs.size());
  for (const LabeledText &p : pairs) {
    features.push_back(model.Featurize(p.text));
    targets.push_back(std::lower_bound(model.labels_.begin(), model.labels_.end(),
                                       p.label) -
                      model.labels_.begin());
  }

  std::vector<size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::mt19937_64 engine(config.seed);
  std::vector<double> probs;
  const float lr = static_cast<float>(config.learning_rate);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    internal::Shuffle(engine, &order);
    for (size_t index : order) {
      model.Logits(features[index], &probs);
      Softmax(&probs);
      for (size_t j = 0; j < k; ++j) {
        const float grad = static_cast<float>(probs[j] - (j == targets[index] ? 1.0 : 0.0));
        model.bias_[j] -= lr * grad;
        for (const auto &f : features[index]) {
          model.weights_[f.bucket * k + j] -= lr * grad * f.value;
        }
      }
    }
  }
  return model;
}

double Accuracy(const ClassifierModel &model,
                const std::vector<LabeledText> &pairs) {
  if (pairs.empty()) return 0.0;
  size_t correct = 0;
  for (const LabeledText &p : pairs) {
    if (model.Predict(p.text).label == p.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

std::string ClassifierModel::Serialize() const {
  Writer w;
  w.Raw(kMagic, sizeof(kMagic));
  w.U32(kFormatVersion);
  w.U32(static_cast<uint32_t>(config_.epochs));
  w.F64(config_.learning_rate);
  w.U64(config_.seed);
  w.U64(config_.buckets);
  w.U32(static_cast<uint32_t>(config_.min_ngram));
  w.U32(static_cast<uint32_t>(config_.max_ngram));
  w.U32(static_cast<uint32_t>(labels_.size()));
  for (const std::string &label : labels_) w.Str(label);
  for (float b : bias_) w.F32(b);

  const size_t k = labels_.size();
  auto nonzero = [&](uint64_t row) {
    for (size_t j = 0; j < k; ++j) {
      if (std::bit_cast<uint32_t>(weights_[row * k + j]) != 0) return true;
    }
    return false;
  };
  uint64_t rows = 0;
  for (uint64_t r = 0; r < config_.buckets; ++r) rows += nonzero(r) ? 1 : 0;
  w.U64(rows);
  for (uint64_t r = 0; r < config_.buckets; ++r) {
    if (!nonzero(r)) continue;
    w.U64(r);
    for (size_t j = 0; j < k; ++j) w.F32(weights_[r * k + j]);
  }
  return w.Take();
}

ClassifierModel ClassifierModel::Deserialize(std::string_view bytes) {
  Reader r(bytes);
  if (r.Raw(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw ParseError("not a classifier model file");
  }
  const uint32_t version = r.U32();
  if (version != kFormatVersion) {
    throw ParseError("unsupported model format version " + std::to_string(version));
  }
  ClassifierModel model;
  model.config_.epochs = static_cast<int>(r.U32());
  model.config_.learning_rate = r.F64();
  model.config_.seed = r.U64();
  model.config_.buckets = r.U64();
  model.config_.min_ngram = static_cast<int>(r.U32());
  model.config_.max_ngram = static_cast<int>(r.U32());
  try {
    ValidateConfig(model.config_);
  } catch (const ContractError &e) {
    throw ParseError(std::string("bad model header: ") + e.what());
  }
  const uint32_t k = r.U32();
  if (k < 2 || k > 1'000'000) throw ParseError("bad label count");
  for (uint32_t j = 0; j < k; ++j) model.labels_.push_back(r.Str());
  if (!std::is_sorted(model.labels_.begin(), model.labels_.end())) {
    throw ParseError("model labels not sorted");
  }
  for (uint32_t j = 0; j < k; ++j) model.bias_.push_back(r.F32());
  model.weights_.assign(model.config_.buckets * k, 0.0f);
  const uint64_t rows = r.U64();
  uint64_t previous = 0;
  for (uint64_t i = 0; i < rows; ++i) {
    const uint64_t row = r.U64();
    if (row >= model.config_.buckets || (i > 0 && row <= previous)) {
      throw ParseError("bad weight row index");
    }
    previous = row;
    for (uint32_t j = 0; j < k; ++j) model.weights_[row * k + j] = r.F32();
  }
  if (!r.AtEnd()) throw ParseError("trailing bytes in model file");
  return model;
}

DecisionMap DecideType5(const ClassifierModel &model, const MatchReport &report) {
  DecisionMap decisions;
  for (const MatchRecord &r : report.records) {
    if (r.kind != MatchKind::kType5RightLabelOverlapSpan) continue;
    const Prediction p = model.Predict(r.pred->text);
    Decision d;
    d.record_id = r.record_id;
    d.predicted_label = p.label;
    d.confidence = p.confidence;
    d.verdict = p.label == r.pred->label ? Verdict::kAccept : Verdict::kReject;
    decisions.emplace(r.record_id, std::move(d));
  }
  return decisions;
}

std::string WriteClassifierRequest(const MatchReport &report) {
  std::string out;
  for (const MatchRecord &r : report.records) {
    if (r.kind != MatchKind::kType5RightLabelOverlapSpan) continue;
    nlohmann::ordered_json line{{"id", r.record_id}, {"text", r.pred->text}};
    out.append(line.dump()).append("\n");
  }
  return out;
}

DecisionMap ParseClassifierResponse(std::string_view content,
                                    const MatchReport &report) {
  std::map<std::string, const MatchRecord *> type5;
  for (const MatchRecord &r : report.records) {
    if (r.kind == MatchKind::kType5RightLabelOverlapSpan) type5[r.record_id] = &r;
  }
  std::set<std::string> labels;
  for (const std::string &label : report.Labels()) labels.insert(label);
  labels.insert(std::string(kOtherLabel));

  DecisionMap decisions;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    Decision d;
    try {
      const auto object = nlohmann::json::parse(line);
      d.record_id = object.at("id").get<std::string>();
      d.predicted_label = object.at("label").get<std::string>();
      d.confidence = object.at("confidence").get<double>();
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("bad classifier response: ") + e.what(),
                       line_no);
    }
    auto it = type5.find(d.record_id);
    if (it == type5.end()) {
      throw ParseError("response for unknown Type-5 record '" + d.record_id + "'",
                       line_no);
    }
    if (!labels.count(d.predicted_label)) {
      throw ParseError("unknown label '" + d.predicted_label + "' for record " +
                           d.record_id,
                       line_no);
    }
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
      throw ParseError("confidence outside [0, 1] for record " + d.record_id,
                       line_no);
    }
    d.verdict = d.predicted_label == it->second->pred->label ? Verdict::kAccept
                                                             : Verdict::kReject;
    const std::string id = d.record_id;
    if (!decisions.emplace(id, std::move(d)).second) {
      throw ParseError("duplicate response for record " + id, line_no);
    }
  }
  std::vector<std::string> missing;
  for (const auto &[id, record] : type5) {
    if (!decisions.count(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    throw CoverageError("no classifier response for Type-5 records: " +
                        internal::Join(missing, ", "));
  }
  return decisions;
}

}  // namespace nereval
