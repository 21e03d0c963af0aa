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

#include "nereval/corpus.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

using internal::Trim;

int TokenSpan::Overlap(const TokenSpan &other) const {
  const int lo = std::max(start, other.start);
  const int hi = std::min(end, other.end);
  return hi > lo ? hi - lo : 0;
}

const char *SourceName(Source source) {
  return source == Source::kGold ? "gold" : "predicted";
}

EntityMention Document::MakeMention(TokenSpan span, const std::string &label,
                                    Source source) const {
  EntityMention mention;
  mention.doc_id = doc_id;
  mention.span = span;
  mention.label = label;
  mention.source = source;
  for (int i = span.start; i < span.end; ++i) {
    if (i > span.start) mention.text.push_back(' ');
    mention.text.append(tokens[i].text);
  }
  return mention;
}

std::vector<int> Document::SentenceStarts() const {
  std::vector<int> starts;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i == 0 || tokens[i].sent_index != tokens[i - 1].sent_index) {
      starts.push_back(static_cast<int>(i));
    }
  }
  return starts;
}

size_t Corpus::NumGold() const {
  size_t n = 0;
  for (const Document &doc : documents) n += doc.gold_entities.size();
  return n;
}

size_t Corpus::NumPred() const {
  size_t n = 0;
  for (const Document &doc : documents) n += doc.pred_entities.size();
  return n;
}

namespace {

std::string SpanString(const EntityMention &m) {
  return m.label + "[" + std::to_string(m.span.start) + "," +
         std::to_string(m.span.end) + ")";
}

void FinalizeMentions(const Document &doc, Source source,
                      std::vector<EntityMention> *mentions,
                      std::set<std::string> *labels) {
  const int num_tokens = static_cast<int>(doc.tokens.size());
  for (EntityMention &m : *mentions) {
    if (m.span.start >= m.span.end) {
      throw ContractError("empty or reversed span " + SpanString(m) +
                          " in document " + doc.doc_id);
    }
    if (m.span.start < 0 || m.span.end > num_tokens) {
      throw ContractError("span " + SpanString(m) + " outside document " +
                          doc.doc_id + " of " + std::to_string(num_tokens) +
                          " tokens");
    }
    if (m.label.empty() || m.label == "O") {
      throw ContractError("invalid entity label '" + m.label +
                          "' in document " + doc.doc_id);
    }
    m = doc.MakeMention(m.span, m.label, source);
    labels->insert(m.label);
  }
  std::stable_sort(mentions->begin(), mentions->end(),
                   [](const EntityMention &a, const EntityMention &b) {
                     return a.span < b.span;
                   });
  CheckFlat(*mentions);
}

}  // namespace

void CheckFlat(const std::vector<EntityMention> &mentions) {
  std::vector<const EntityMention *> sorted;
  sorted.reserve(mentions.size());
  for (const EntityMention &m : mentions) sorted.push_back(&m);
  std::sort(sorted.begin(), sorted.end(),
            [](const EntityMention *a, const EntityMention *b) {
              return a->span < b->span;
            });
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->span.start < sorted[i - 1]->span.end) {
      throw ContractError(std::string("overlapping ") +
                          SourceName(sorted[i]->source) + " spans " +
                          SpanString(*sorted[i - 1]) + " and " +
                          SpanString(*sorted[i]) + " in document " +
                          sorted[i]->doc_id);
    }
  }
}

void FinalizeCorpus(Corpus *corpus) {
  std::set<std::string> doc_ids;
  std::set<std::string> labels;
  for (Document &doc : corpus->documents) {
    if (!doc_ids.insert(doc.doc_id).second) {
      throw ContractError("duplicate document id " + doc.doc_id);
    }
    int offset = 0;
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      Token &token = doc.tokens[i];
      if (token.text.empty()) {
        throw ContractError("empty token " + std::to_string(i) +
                            " in document " + doc.doc_id);
      }
      if (i > 0 && token.sent_index < doc.tokens[i - 1].sent_index) {
        throw ContractError("sentence indices decrease in document " +
                            doc.doc_id);
      }
      token.doc_id = doc.doc_id;
      token.token_index = static_cast<int>(i);
      token.char_start = offset;
      token.char_end = offset + static_cast<int>(token.text.size());
      offset = token.char_end + 1;
    }
    FinalizeMentions(doc, Source::kGold, &doc.gold_entities, &labels);
    FinalizeMentions(doc, Source::kPredicted, &doc.pred_entities, &labels);
  }
  corpus->label_set.assign(labels.begin(), labels.end());
}

// ---------------------------------------------------------------------------
// IOB

namespace {

struct ParsedTag {
  char prefix = 'O';  // 'O', 'B' or 'I'
  std::string label;
};

ParsedTag ParseTag(std::string_view tag, int line) {
  tag = Trim(tag);
  ParsedTag parsed;
  if (tag == "O") return parsed;
  if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
    throw ParseError("malformed tag '" + std::string(tag) + "'", line);
  }
  parsed.prefix = tag[0];
  parsed.label = std::string(Trim(tag.substr(2)));
  if (parsed.label.empty() || parsed.label == "O") {
    throw ParseError("malformed tag '" + std::string(tag) + "'", line);
  }
  return parsed;
}

class IobBuilder {
 public:
  IobBuilder(TagScheme scheme, Source source,
             std::vector<Diagnostic> *warnings)
      : scheme_(scheme), source_(source), warnings_(warnings) {}

  void StartDocument(std::string doc_id, int line) {
    FinishDocument();
    if (doc_id.empty()) doc_id = "doc" + std::to_string(corpus_.documents.size());
    if (!doc_ids_.insert(doc_id).second) {
      throw ParseError("duplicate document id " + doc_id, line);
    }
    current_ = Document();
    current_->doc_id = std::move(doc_id);
    sent_index_ = 0;
    sentence_open_ = false;
  }

  void AddToken(std::string_view text, const ParsedTag &tag, int line) {
    if (!current_) StartDocument("doc0", line);
    const int index = static_cast<int>(current_->tokens.size());
    switch (tag.prefix) {
      case 'O':
        CloseEntity(index);
        break;
      case 'B':
        CloseEntity(index);
        OpenEntity(index, tag.label);
        break;
      case 'I':
        if (open_ && open_label_ == tag.label) break;
        CloseEntity(index);
        if (scheme_ == TagScheme::kIob2 && warnings_ != nullptr) {
          warnings_->push_back(
              {line, "orphan I-" + tag.label + " repaired to B-" + tag.label});
        }
        OpenEntity(index, tag.label);
        break;
    }
    Token token;
    token.text = std::string(text);
    token.sent_index = sent_index_;
    current_->tokens.push_back(std::move(token));
    sentence_open_ = true;
  }

  void EndSentence() {
    if (!current_) return;
    CloseEntity(static_cast<int>(current_->tokens.size()));
    if (sentence_open_) {
      ++sent_index_;
      sentence_open_ = false;
    }
  }

  Corpus Finish() {
    FinishDocument();
    return std::move(corpus_);
  }

 private:
  void OpenEntity(int index, const std::string &label) {
    open_ = true;
    open_start_ = index;
    open_label_ = label;
  }

  void CloseEntity(int index) {
    if (!open_) return;
    EntityMention m;
    m.span = {open_start_, index};
    m.label = open_label_;
    m.source = source_;
    auto &target = source_ == Source::kGold ? current_->gold_entities
                                            : current_->pred_entities;
    target.push_back(std::move(m));
    open_ = false;
  }

  void FinishDocument() {
    if (!current_) return;
    EndSentence();
    corpus_.documents.push_back(std::move(*current_));
    current_.reset();
  }

  TagScheme scheme_;
  Source source_;
  std::vector<Diagnostic> *warnings_;
  Corpus corpus_;
  std::set<std::string> doc_ids_;
  std::optional<Document> current_;
  int sent_index_ = 0;
  bool sentence_open_ = false;
  bool open_ = false;
  int open_start_ = 0;
  std::string open_label_;
};

constexpr std::string_view kDocStart = "-DOCSTART-";

}  // namespace

Corpus ParseIob(std::string_view content, TagScheme scheme, Source source,
                std::vector<Diagnostic> *warnings) {
  IobBuilder builder(scheme, source, warnings);
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (!internal::IsValidUtf8(line)) {
      throw ParseError("invalid UTF-8", line_no);
    }
    std::string_view trimmed = Trim(line);
    if (trimmed.empty()) {
      builder.EndSentence();
      continue;
    }
    if (trimmed.substr(0, kDocStart.size()) == kDocStart) {
      builder.StartDocument(std::string(Trim(trimmed.substr(kDocStart.size()))),
                            line_no);
      continue;
    }
    std::string_view token;
    std::string_view tag;
    if (trimmed.find('\t') != std::string_view::npos) {
      const size_t tab = trimmed.find('\t');
      token = Trim(trimmed.substr(0, tab));
      tag = trimmed.substr(tab + 1);
      if (tag.find('\t') != std::string_view::npos || token.empty() ||
          Trim(tag).empty()) {
        throw ParseError("expected 2 tab-separated columns", line_no);
      }
    } else {
      auto fields = internal::SplitWhitespace(trimmed);
      if (fields.size() != 2) {
        throw ParseError("expected 2 columns, found " +
                             std::to_string(fields.size()),
                         line_no);
      }
      token = fields[0];
      tag = fields[1];
    }
    builder.AddToken(token, ParseTag(tag, line_no), line_no);
  }
  Corpus corpus = builder.Finish();
  try {
    FinalizeCorpus(&corpus);
  } catch (const ContractError &e) {
    throw ParseError(e.what());
  }
  return corpus;
}

std::string WriteIob(const Corpus &corpus, Source source) {
  std::string out;
  for (const Document &doc : corpus.documents) {
    out.append(kDocStart).append(" ").append(doc.doc_id).append("\n");
    const auto &mentions =
        source == Source::kGold ? doc.gold_entities : doc.pred_entities;
    std::vector<std::string> tags(doc.tokens.size(), "O");
    for (const EntityMention &m : mentions) {
      for (int i = m.span.start; i < m.span.end; ++i) {
        tags[i] = (i == m.span.start ? "B-" : "I-") + m.label;
      }
    }
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i > 0 && doc.tokens[i].sent_index != doc.tokens[i - 1].sent_index) {
        out.append("\n");
      }
      out.append(doc.tokens[i].text).append("\t").append(tags[i]).append("\n");
    }
    out.append("\n");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standoff

namespace {

using nlohmann::json;

const json &Field(const json &object, const char *name, int line) {
  auto it = object.find(name);
  if (it == object.end()) {
    throw ParseError(std::string("missing field '") + name + "'", line);
  }
  return *it;
}

int IntField(const json &object, const char *name, int line) {
  const json &value = Field(object, name, line);
  if (!value.is_number_integer()) {
    throw ParseError(std::string("field '") + name + "' must be an integer",
                     line);
  }
  const auto v = value.get<int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) {
    throw ParseError(std::string("field '") + name + "' out of range", line);
  }
  return static_cast<int>(v);
}

std::string StringField(const json &object, const char *name, int line) {
  const json &value = Field(object, name, line);
  if (!value.is_string()) {
    throw ParseError(std::string("field '") + name + "' must be a string",
                     line);
  }
  return value.get<std::string>();
}

Document ParseStandoffDocument(const json &object, int line) {
  if (!object.is_object()) throw ParseError("expected a JSON object", line);
  Document doc;
  doc.doc_id = StringField(object, "doc_id", line);
  if (doc.doc_id.empty()) throw ParseError("empty doc_id", line);

  const json &tokens = Field(object, "tokens", line);
  if (!tokens.is_array()) throw ParseError("'tokens' must be an array", line);
  std::vector<int> starts;
  if (auto it = object.find("sentence_starts"); it != object.end()) {
    if (!it->is_array()) {
      throw ParseError("'sentence_starts' must be an array", line);
    }
    for (const json &s : *it) {
      if (!s.is_number_integer()) {
        throw ParseError("'sentence_starts' must hold integers", line);
      }
      const auto v = s.get<int64_t>();
      if (v <= 0 || v >= static_cast<int64_t>(tokens.size()) ||
          (!starts.empty() && v <= starts.back())) {
        throw ParseError("invalid sentence start " + std::to_string(v), line);
      }
      starts.push_back(static_cast<int>(v));
    }
  }
  size_t next_start = 0;
  int sent = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].is_string()) {
      throw ParseError("token " + std::to_string(i) + " is not a string", line);
    }
    if (next_start < starts.size() && starts[next_start] == static_cast<int>(i)) {
      ++sent;
      ++next_start;
    }
    Token token;
    token.text = tokens[i].get<std::string>();
    if (token.text.empty()) {
      throw ParseError("token " + std::to_string(i) + " is empty", line);
    }
    token.sent_index = sent;
    doc.tokens.push_back(std::move(token));
  }

  const json &entities = Field(object, "entities", line);
  if (!entities.is_array()) {
    throw ParseError("'entities' must be an array", line);
  }
  for (const json &e : entities) {
    if (!e.is_object()) throw ParseError("entity must be an object", line);
    EntityMention m;
    m.span = {IntField(e, "start", line), IntField(e, "end", line)};
    m.label = std::string(Trim(StringField(e, "label", line)));
    const std::string source = StringField(e, "source", line);
    if (source == "gold") {
      m.source = Source::kGold;
    } else if (source == "predicted") {
      m.source = Source::kPredicted;
    } else {
      throw ParseError("unknown source '" + source + "'", line);
    }
    if (m.span.end <= m.span.start) {
      throw ParseError("span end " + std::to_string(m.span.end) +
                           " not after start " + std::to_string(m.span.start),
                       line);
    }
    if (m.span.start < 0 || m.span.end > static_cast<int>(doc.tokens.size())) {
      throw ParseError("span [" + std::to_string(m.span.start) + "," +
                           std::to_string(m.span.end) +
                           ") outside document bounds",
                       line);
    }
    m.doc_id = doc.doc_id;
    (m.source == Source::kGold ? doc.gold_entities : doc.pred_entities)
        .push_back(std::move(m));
  }
  return doc;
}

}  // namespace

Corpus ParseStandoff(std::string_view content) {
  Corpus corpus;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    corpus.documents.push_back(ParseStandoffDocument(object, line_no));
  }
  try {
    FinalizeCorpus(&corpus);
  } catch (const ContractError &e) {
    throw ParseError(e.what());
  }
  return corpus;
}

std::string WriteStandoff(const Corpus &corpus) {
  std::string out;
  for (const Document &doc : corpus.documents) {
    json object = json::object();
    object["doc_id"] = doc.doc_id;
    json tokens = json::array();
    for (const Token &t : doc.tokens) tokens.push_back(t.text);
    object["tokens"] = std::move(tokens);
    const std::vector<int> starts = doc.SentenceStarts();
    if (starts.size() > 1) {
      object["sentence_starts"] =
          std::vector<int>(starts.begin() + 1, starts.end());
    }
    json entities = json::array();
    for (const auto *list : {&doc.gold_entities, &doc.pred_entities}) {
      for (const EntityMention &m : *list) {
        entities.push_back({{"start", m.span.start},
                            {"end", m.span.end},
                            {"label", m.label},
                            {"source", SourceName(m.source)}});
      }
    }
    object["entities"] = std::move(entities);
    out.append(object.dump()).append("\n");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairing

Corpus PairCorpora(const Corpus &gold, const Corpus &pred) {
  std::map<std::string, const Document *> pred_docs;
  for (const Document &doc : pred.documents) pred_docs[doc.doc_id] = &doc;
  std::set<std::string> gold_ids;
  for (const Document &doc : gold.documents) gold_ids.insert(doc.doc_id);

  std::vector<std::string> only_gold;
  std::vector<std::string> only_pred;
  for (const std::string &id : gold_ids) {
    if (!pred_docs.count(id)) only_gold.push_back(id);
  }
  for (const auto &[id, doc] : pred_docs) {
    if (!gold_ids.count(id)) only_pred.push_back(id);
  }
  if (!only_gold.empty() || !only_pred.empty()) {
    std::string message = "documents do not align;";
    if (!only_gold.empty()) {
      message += " only in gold: " + internal::Join(only_gold, ", ") + ";";
    }
    if (!only_pred.empty()) {
      message += " only in predictions: " + internal::Join(only_pred, ", ") + ";";
    }
    message.pop_back();
    throw AlignmentError(message);
  }

  Corpus merged;
  std::set<std::string> labels;
  for (const Document &g : gold.documents) {
    const Document &p = *pred_docs.at(g.doc_id);
    const size_t n = std::min(g.tokens.size(), p.tokens.size());
    for (size_t i = 0; i < n; ++i) {
      if (g.tokens[i].text != p.tokens[i].text) {
        throw AlignmentError("token mismatch in document " + g.doc_id +
                             " at index " + std::to_string(i) + ": '" +
                             g.tokens[i].text + "' vs '" + p.tokens[i].text +
                             "'");
      }
    }
    if (g.tokens.size() != p.tokens.size()) {
      throw AlignmentError("token mismatch in document " + g.doc_id +
                           " at index " + std::to_string(n) +
                           ": token counts " + std::to_string(g.tokens.size()) +
                           " vs " + std::to_string(p.tokens.size()));
    }
    Document doc;
    doc.doc_id = g.doc_id;
    doc.tokens = g.tokens;
    doc.gold_entities = g.gold_entities;
    doc.pred_entities = p.pred_entities;
    for (const auto &m : doc.gold_entities) labels.insert(m.label);
    for (const auto &m : doc.pred_entities) labels.insert(m.label);
    merged.documents.push_back(std::move(doc));
  }
  merged.label_set.assign(labels.begin(), labels.end());
  return merged;
}

}  // namespace nereval
