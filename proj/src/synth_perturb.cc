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

#include "nereval/synth_perturb.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

namespace {

void ValidatePlan(const PerturbationPlan &plan) {
  for (double rate : {plan.extend_rate, plan.shrink_rate, plan.split_rate,
                      plan.relabel_rate, plan.drop_rate, plan.insert_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw ContractError("perturbation rates must lie in [0, 1]");
    }
  }
  if (plan.max_extend < 1 || plan.max_shrink < 1 || plan.max_spurious_tokens < 1) {
    throw ContractError("perturbation sizes must be at least 1");
  }
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Edit { kNone, kDrop, kRelabel, kSplit, kShrink, kExtend };

class DocumentPerturber {
 public:
  DocumentPerturber(const Document &doc, const std::vector<std::string> &labels,
                    const PerturbationPlan &plan, uint64_t seed,
                    AppliedPerturbations *applied,
                    std::vector<MatchRecord> *expected)
      : doc_(doc),
        labels_(labels),
        plan_(plan),
        engine_(seed),
        applied_(applied),
        expected_(expected),
        gold_token_(doc.tokens.size(), false),
        pred_token_(doc.tokens.size(), false) {
    for (const EntityMention &g : doc.gold_entities) {
      for (int i = g.span.start; i < g.span.end; ++i) gold_token_[i] = true;
    }
  }

  std::vector<EntityMention> Run() {
    for (const EntityMention &g : doc_.gold_entities) PerturbEntity(g);
    int64_t attempts = static_cast<int64_t>(doc_.gold_entities.size()) + 1;
    for (int64_t a = 0; a < attempts; ++a) {
      if (Coin(plan_.insert_rate)) InsertSpurious();
    }
    return std::move(preds_);
  }

 private:
  bool Coin(double rate) { return internal::UniformUnit(engine_) < rate; }
  int Below(int n) { return static_cast<int>(internal::UniformBelow(engine_, n)); }

  Edit ChooseEdit() {
    // Every coin is tossed so that one entity's draws do not depend on
    // which edit won.
    const bool drop = Coin(plan_.drop_rate);
    const bool relabel = Coin(plan_.relabel_rate);
    const bool split = Coin(plan_.split_rate);
    const bool shrink = Coin(plan_.shrink_rate);
    const bool extend = Coin(plan_.extend_rate);
    if (drop) return Edit::kDrop;
    if (relabel) return Edit::kRelabel;
    if (split) return Edit::kSplit;
    if (shrink) return Edit::kShrink;
    if (extend) return Edit::kExtend;
    return Edit::kNone;
  }

  bool Free(int start, int end, int sentence) const {
    if (start < 0 || end > static_cast<int>(doc_.tokens.size())) return false;
    for (int i = start; i < end; ++i) {
      if (gold_token_[i] || pred_token_[i] ||
          doc_.tokens[i].sent_index != sentence) {
        return false;
      }
    }
    return true;
  }

  void Place(TokenSpan span, const std::string &label) {
    for (int i = span.start; i < span.end; ++i) pred_token_[i] = true;
    preds_.push_back(doc_.MakeMention(span, label, Source::kPredicted));
  }

  void Expect(MatchKind kind, const EntityMention *gold) {
    MatchRecord r;
    r.kind = kind;
    if (kind != MatchKind::kType2CompleteFalseNegative) r.pred = preds_.back();
    if (gold != nullptr) r.gold = *gold;
    if (r.pred && r.gold) r.overlap_tokens = r.pred->span.Overlap(r.gold->span);
    expected_->push_back(std::move(r));
  }

  void Keep(const EntityMention &g) {
    Place(g.span, g.label);
    Expect(MatchKind::kExactMatch, &g);
  }

  void PerturbEntity(const EntityMention &g) {
    const int len = g.span.length();
    const int sentence = doc_.tokens[g.span.start].sent_index;
    switch (ChooseEdit()) {
      case Edit::kNone:
        ++applied_->untouched;
        Keep(g);
        return;
      case Edit::kDrop:
        ++applied_->dropped;
        Expect(MatchKind::kType2CompleteFalseNegative, &g);
        return;
      case Edit::kRelabel: {
        if (labels_.size() < 2) break;
        int pick = Below(static_cast<int>(labels_.size()) - 1);
        const size_t own = std::find(labels_.begin(), labels_.end(), g.label) -
                           labels_.begin();
        if (static_cast<size_t>(pick) >= own) ++pick;
        ++applied_->relabeled;
        Place(g.span, labels_[pick]);
        Expect(MatchKind::kType3WrongLabelRightSpan, &g);
        return;
      }
      case Edit::kSplit: {
        if (len < 2) break;
        const int cut = g.span.start + 1 + Below(len - 1);
        ++applied_->split;
        Place({g.span.start, cut}, g.label);
        Expect(MatchKind::kType5RightLabelOverlapSpan, &g);
        Place({cut, g.span.end}, g.label);
        Expect(MatchKind::kType5RightLabelOverlapSpan, &g);
        return;
      }
      case Edit::kShrink: {
        const int k = 1 + Below(plan_.max_shrink);
        if (len <= k) break;
        const int left = Below(k + 1);
        ++applied_->shrunk;
        Place({g.span.start + left, g.span.end - (k - left)}, g.label);
        Expect(MatchKind::kType5RightLabelOverlapSpan, &g);
        return;
      }
      case Edit::kExtend: {
        const int k = 1 + Below(plan_.max_extend);
        const bool to_left = Below(2) == 0;
        TokenSpan grown = g.span;
        if (to_left) {
          grown.start -= k;
          if (!Free(grown.start, g.span.start, sentence)) break;
        } else {
          grown.end += k;
          if (!Free(g.span.end, grown.end, sentence)) break;
        }
        ++applied_->extended;
        Place(grown, g.label);
        Expect(MatchKind::kType5RightLabelOverlapSpan, &g);
        return;
      }
    }
    ++applied_->skipped;
    Keep(g);
  }

  void InsertSpurious() {
    const int n = static_cast<int>(doc_.tokens.size());
    const int len = 1 + Below(plan_.max_spurious_tokens);
    if (labels_.empty() || len > n) return;
    const int start = Below(n - len + 1);
    const std::string &label = labels_[Below(static_cast<int>(labels_.size()))];
    if (!Free(start, start + len, doc_.tokens[start].sent_index)) return;
    ++applied_->inserted;
    Place({start, start + len}, label);
    Expect(MatchKind::kType1CompleteFalsePositive, nullptr);
  }

  const Document &doc_;
  const std::vector<std::string> &labels_;
  const PerturbationPlan &plan_;
  std::mt19937_64 engine_;
  AppliedPerturbations *applied_;
  std::vector<MatchRecord> *expected_;
  std::vector<bool> gold_token_;
  std::vector<bool> pred_token_;
  std::vector<EntityMention> preds_;
};

}  // namespace

PerturbResult Perturb(const Corpus &gold, const PerturbationPlan &plan) {
  ValidatePlan(plan);
  PerturbResult result;
  result.corpus.label_set = gold.label_set;
  std::vector<MatchRecord> expected;
  for (const Document &source : gold.documents) {
    CheckFlat(source.gold_entities);
    Document doc;
    doc.doc_id = source.doc_id;
    doc.tokens = source.tokens;
    doc.gold_entities = source.gold_entities;
    const uint64_t seed =
        SplitMix64(plan.seed ^ internal::Fnv1a64(source.doc_id));
    DocumentPerturber perturber(doc, gold.label_set, plan, seed,
                                &result.expected.applied, &expected);
    doc.pred_entities = perturber.Run();
    std::sort(doc.pred_entities.begin(), doc.pred_entities.end(),
              [](const EntityMention &a, const EntityMention &b) {
                return a.span < b.span;
              });
    result.corpus.documents.push_back(std::move(doc));
  }
  result.expected.report = BuildReport(std::move(expected));
  return result;
}

}  // namespace nereval
