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

#include "nereval/span_matcher.h"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <set>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

namespace {

struct KindName {
  MatchKind kind;
  const char *name;
  const char *short_name;
};

constexpr KindName kKindNames[] = {
    {MatchKind::kExactMatch, "ExactMatch", "exact"},
    {MatchKind::kType1CompleteFalsePositive, "Type1_CompleteFalsePositive",
     "type1"},
    {MatchKind::kType2CompleteFalseNegative, "Type2_CompleteFalseNegative",
     "type2"},
    {MatchKind::kType3WrongLabelRightSpan, "Type3_WrongLabelRightSpan",
     "type3"},
    {MatchKind::kType4WrongLabelOverlapSpan, "Type4_WrongLabelOverlapSpan",
     "type4"},
    {MatchKind::kType5RightLabelOverlapSpan, "Type5_RightLabelOverlapSpan",
     "type5"},
};

// True if `a` is a better anchor than `b` for a prediction.
bool BetterAnchor(const TokenSpan &pred, const TokenSpan &a,
                  const TokenSpan &b) {
  const int oa = pred.Overlap(a);
  const int ob = pred.Overlap(b);
  if (oa != ob) return oa > ob;
  if (a.start != b.start) return a.start < b.start;
  return a.length() > b.length();
}

void CheckSameDocument(const std::vector<EntityMention> &gold,
                       const std::vector<EntityMention> &pred) {
  const std::string *doc = nullptr;
  for (const auto *list : {&gold, &pred}) {
    for (const EntityMention &m : *list) {
      if (doc == nullptr) {
        doc = &m.doc_id;
      } else if (*doc != m.doc_id) {
        throw ContractError("mentions from documents " + *doc + " and " +
                            m.doc_id + " passed to one classification");
      }
    }
  }
}

using SortKey = std::tuple<int, int>;

SortKey RecordKey(const MatchRecord &r) {
  return {r.pred ? r.pred->span.start : INT_MAX,
          r.gold ? r.gold->span.start : INT_MAX};
}

}  // namespace

const char *MatchKindName(MatchKind kind) {
  return kKindNames[static_cast<int>(kind)].name;
}

const char *MatchKindShortName(MatchKind kind) {
  return kKindNames[static_cast<int>(kind)].short_name;
}

std::optional<MatchKind> MatchKindFromName(std::string_view name) {
  for (const KindName &k : kKindNames) {
    if (name == k.name || name == k.short_name) return k.kind;
  }
  return std::nullopt;
}

int64_t MatchReport::NumErrors() const {
  return static_cast<int64_t>(records.size()) - count(MatchKind::kExactMatch);
}

std::vector<std::string> MatchReport::Labels() const {
  std::set<std::string> labels;
  for (const auto &[label, n] : gold_per_label) labels.insert(label);
  for (const auto &[label, n] : pred_per_label) labels.insert(label);
  return {labels.begin(), labels.end()};
}

std::vector<MatchRecord> ClassifyDocument(
    const std::vector<EntityMention> &gold,
    const std::vector<EntityMention> &pred) {
  CheckFlat(gold);
  CheckFlat(pred);
  CheckSameDocument(gold, pred);

  // Golds sorted by start; flat lists make span starts unique.
  std::vector<size_t> order(gold.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return gold[a].span.start < gold[b].span.start;
  });

  std::vector<bool> gold_used(gold.size(), false);
  std::vector<MatchRecord> records;
  records.reserve(pred.size() + gold.size());

  for (const EntityMention &p : pred) {
    // Golds overlapping p form a contiguous run of the sorted order.
    auto first = std::partition_point(order.begin(), order.end(), [&](size_t g) {
      return gold[g].span.end <= p.span.start;
    });
    constexpr size_t kNone = SIZE_MAX;
    size_t same_span = kNone;
    size_t same_label_anchor = kNone;
    size_t any_anchor = kNone;
    for (auto it = first; it != order.end() && gold[*it].span.start < p.span.end;
         ++it) {
      const EntityMention &g = gold[*it];
      if (g.span == p.span) same_span = *it;
      if (g.label == p.label &&
          (same_label_anchor == kNone ||
           BetterAnchor(p.span, g.span, gold[same_label_anchor].span))) {
        same_label_anchor = *it;
      }
      if (any_anchor == kNone ||
          BetterAnchor(p.span, g.span, gold[any_anchor].span)) {
        any_anchor = *it;
      }
    }

    MatchRecord record;
    record.pred = p;
    size_t anchor = kNone;
    if (same_span != kNone) {
      anchor = same_span;
      record.kind = gold[anchor].label == p.label
                        ? MatchKind::kExactMatch
                        : MatchKind::kType3WrongLabelRightSpan;
    } else if (same_label_anchor != kNone) {
      anchor = same_label_anchor;
      record.kind = MatchKind::kType5RightLabelOverlapSpan;
    } else if (any_anchor != kNone) {
      anchor = any_anchor;
      record.kind = MatchKind::kType4WrongLabelOverlapSpan;
    } else {
      record.kind = MatchKind::kType1CompleteFalsePositive;
    }
    if (anchor != kNone) {
      record.gold = gold[anchor];
      gold_used[anchor] = true;
    }
    if (record.gold) record.overlap_tokens = p.span.Overlap(record.gold->span);
    records.push_back(std::move(record));
  }

  for (size_t g = 0; g < gold.size(); ++g) {
    if (gold_used[g]) continue;
    MatchRecord record;
    record.kind = MatchKind::kType2CompleteFalseNegative;
    record.gold = gold[g];
    records.push_back(std::move(record));
  }

  std::sort(records.begin(), records.end(),
            [](const MatchRecord &a, const MatchRecord &b) {
              return RecordKey(a) < RecordKey(b);
            });
  return records;
}

MatchReport ClassifyCorpus(const Corpus &corpus) {
  std::vector<MatchRecord> records;
  for (const Document &doc : corpus.documents) {
    auto doc_records = ClassifyDocument(doc.gold_entities, doc.pred_entities);
    records.insert(records.end(), std::make_move_iterator(doc_records.begin()),
                   std::make_move_iterator(doc_records.end()));
  }
  return BuildReport(std::move(records));
}

namespace {

void CheckRecord(const MatchRecord &r) {
  const bool needs_pred = r.kind != MatchKind::kType2CompleteFalseNegative;
  const bool needs_gold = r.kind != MatchKind::kType1CompleteFalsePositive;
  const std::string where = " in record " + r.record_id;
  if (needs_pred != r.pred.has_value() || needs_gold != r.gold.has_value()) {
    throw ContractError(std::string(MatchKindName(r.kind)) +
                        " has the wrong sides present" + where);
  }
  if (r.pred && r.gold && r.pred->doc_id != r.gold->doc_id) {
    throw ContractError("sides belong to different documents" + where);
  }
  const int overlap = r.pred && r.gold ? r.pred->span.Overlap(r.gold->span) : 0;
  if (overlap != r.overlap_tokens) {
    throw ContractError("overlap_tokens inconsistent with spans" + where);
  }
  bool ok = true;
  switch (r.kind) {
    case MatchKind::kExactMatch:
      ok = r.pred->span == r.gold->span && r.pred->label == r.gold->label;
      break;
    case MatchKind::kType3WrongLabelRightSpan:
      ok = r.pred->span == r.gold->span && r.pred->label != r.gold->label;
      break;
    case MatchKind::kType4WrongLabelOverlapSpan:
      ok = overlap > 0 && r.pred->span != r.gold->span &&
           r.pred->label != r.gold->label;
      break;
    case MatchKind::kType5RightLabelOverlapSpan:
      ok = overlap > 0 && r.pred->span != r.gold->span &&
           r.pred->label == r.gold->label;
      break;
    default:
      break;
  }
  if (!ok) {
    throw ContractError(std::string("spans/labels contradict kind ") +
                        MatchKindName(r.kind) + where);
  }
}

GoldStatus StatusFor(MatchKind kind) {
  switch (kind) {
    case MatchKind::kExactMatch:
      return GoldStatus::kExactMatched;
    case MatchKind::kType3WrongLabelRightSpan:
      return GoldStatus::kType3Paired;
    case MatchKind::kType2CompleteFalseNegative:
      return GoldStatus::kType2;
    default:
      return GoldStatus::kCovered;
  }
}

}  // namespace

MatchReport BuildReport(std::vector<MatchRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const MatchRecord &a, const MatchRecord &b) {
                     const int c = a.doc_id().compare(b.doc_id());
                     if (c != 0) return c < 0;
                     return RecordKey(a) < RecordKey(b);
                   });

  MatchReport report;
  std::map<std::pair<std::string, int>, size_t> gold_index;
  std::string last_doc;
  int ordinal = 0;
  for (size_t i = 0; i < records.size(); ++i) {
    MatchRecord &r = records[i];
    if (i == 0 || r.doc_id() != last_doc) {
      last_doc = r.doc_id();
      ordinal = 0;
    }
    r.record_id = last_doc + "#" + std::to_string(ordinal++);
    CheckRecord(r);

    const int k = static_cast<int>(r.kind);
    ++report.counts[k];
    ++report.label_counts[r.gold ? r.gold->label : r.pred->label][k];
    if (r.pred) {
      ++report.num_pred;
      ++report.pred_per_label[r.pred->label];
    }
    if (r.gold) {
      auto key = std::make_pair(r.gold->doc_id, r.gold->span.start);
      auto [it, inserted] = gold_index.emplace(key, report.golds.size());
      if (inserted) {
        GoldEntry entry;
        entry.mention = *r.gold;
        entry.status = StatusFor(r.kind);
        report.golds.push_back(std::move(entry));
      }
      GoldEntry &entry = report.golds[it->second];
      if (entry.mention.span != r.gold->span ||
          entry.mention.label != r.gold->label) {
        throw ContractError("gold entities of records " + r.record_id +
                            " and an earlier record overlap inconsistently");
      }
      const GoldStatus status = StatusFor(r.kind);
      if (!inserted) {
        if (status == GoldStatus::kType2 || entry.status == GoldStatus::kType2) {
          throw ContractError("gold entity of Type-2 record " + r.record_id +
                              " also appears in another record");
        }
        entry.status = std::min(entry.status, status);
      }
      entry.records.push_back(i);
    }
  }
  for (const GoldEntry &g : report.golds) ++report.gold_per_label[g.mention.label];
  report.num_gold = static_cast<int64_t>(report.golds.size());
  report.records = std::move(records);
  return report;
}

// ---------------------------------------------------------------------------
// Ledger

namespace {

using nlohmann::ordered_json;

ordered_json MentionJson(const std::optional<EntityMention> &m) {
  if (!m) return nullptr;
  return ordered_json{{"span", {m->span.start, m->span.end}},
                      {"label", m->label},
                      {"text", m->text}};
}

std::optional<EntityMention> MentionFromJson(const ordered_json &value,
                                             const std::string &doc_id,
                                             Source source, int line) {
  if (value.is_null()) return std::nullopt;
  try {
    EntityMention m;
    m.doc_id = doc_id;
    m.source = source;
    const auto &span = value.at("span");
    if (!span.is_array() || span.size() != 2) {
      throw ParseError("span must be [start, end]", line);
    }
    m.span = {span[0].get<int>(), span[1].get<int>()};
    if (m.span.start < 0 || m.span.end <= m.span.start) {
      throw ParseError("invalid span", line);
    }
    m.label = value.at("label").get<std::string>();
    m.text = value.at("text").get<std::string>();
    return m;
  } catch (const ordered_json::exception &e) {
    throw ParseError(std::string("bad mention: ") + e.what(), line);
  }
}

}  // namespace

std::string WriteLedger(const MatchReport &report) {
  std::string out;
  for (const MatchRecord &r : report.records) {
    ordered_json line{{"record_id", r.record_id},
                      {"doc_id", r.doc_id()},
                      {"kind", MatchKindName(r.kind)},
                      {"pred", MentionJson(r.pred)},
                      {"gold", MentionJson(r.gold)},
                      {"overlap_tokens", r.overlap_tokens}};
    out.append(line.dump()).append("\n");
  }
  return out;
}

MatchReport ParseLedger(std::string_view content) {
  std::vector<MatchRecord> records;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    ordered_json object;
    try {
      object = ordered_json::parse(line);
    } catch (const ordered_json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    MatchRecord r;
    try {
      const std::string doc_id = object.at("doc_id").get<std::string>();
      const std::string kind = object.at("kind").get<std::string>();
      auto parsed = MatchKindFromName(kind);
      if (!parsed) throw ParseError("unknown kind '" + kind + "'", line_no);
      r.kind = *parsed;
      r.record_id = object.at("record_id").get<std::string>();
      r.pred = MentionFromJson(object.at("pred"), doc_id, Source::kPredicted,
                               line_no);
      r.gold = MentionFromJson(object.at("gold"), doc_id, Source::kGold, line_no);
      r.overlap_tokens = object.at("overlap_tokens").get<int>();
    } catch (const ordered_json::exception &e) {
      throw ParseError(std::string("bad record: ") + e.what(), line_no);
    }
    if (!r.pred && !r.gold) throw ParseError("record without sides", line_no);
    records.push_back(std::move(r));
  }
  try {
    return BuildReport(std::move(records));
  } catch (const ContractError &e) {
    throw ParseError(std::string("inconsistent ledger: ") + e.what());
  }
}

}  // namespace nereval
