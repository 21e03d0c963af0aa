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

#include "nereval/cls_data.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <random>

#include "json.hpp"
#include "nereval/errors.h"
#include "text_util.h"

namespace nereval {

const char *TextOriginName(TextOrigin origin) {
  switch (origin) {
    case TextOrigin::kGoldEntity:
      return "gold_entity";
    case TextOrigin::kSampledChunk:
      return "sampled_chunk";
    case TextOrigin::kExternalChunk:
      return "external_chunk";
  }
  return "unknown";
}

const std::set<std::string> &DefaultStopwords() {
  static const std::set<std::string> *const kStopwords =
      new std::set<std::string>{
          "a",      "about",  "above", "after", "again", "against", "all",
          "am",     "an",     "and",   "any",   "are",   "as",      "at",
          "be",     "because", "been", "before", "being", "below",  "between",
          "both",   "but",    "by",    "can",   "could", "did",     "do",
          "does",   "doing",  "down",  "during", "each", "few",     "for",
          "from",   "further", "had",  "has",   "have",  "having",  "he",
          "her",    "here",   "hers",  "herself", "him", "himself", "his",
          "how",    "i",      "if",    "in",    "into",  "is",      "it",
          "its",    "itself", "may",   "me",    "might", "more",    "most",
          "must",   "my",     "myself", "no",   "nor",   "not",     "of",
          "off",    "on",     "once",  "only",  "or",    "other",   "our",
          "ours",   "out",    "over",  "own",   "per",   "same",    "she",
          "should", "so",     "some",  "such",  "than",  "that",    "the",
          "their",  "theirs", "them",  "then",  "there", "these",   "they",
          "this",   "those",  "through", "to",  "too",   "under",   "until",
          "up",     "upon",   "very",  "via",   "was",   "we",      "were",
          "what",   "when",   "where", "which", "while", "who",     "whom",
          "why",    "will",   "with",  "within", "without", "would", "you",
          "your",   "yours"};
  return *kStopwords;
}

std::vector<LabeledText> ExtractPairs(const Corpus &corpus) {
  std::vector<LabeledText> pairs;
  for (const Document &doc : corpus.documents) {
    for (const EntityMention &m : doc.gold_entities) {
      pairs.push_back({m.text, m.label, TextOrigin::kGoldEntity});
    }
  }
  return pairs;
}

namespace {

bool AllOf(std::string_view text, int (*pred)(int)) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [pred](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && pred(u) != 0;
  });
}

bool IsPunctuation(std::string_view token) { return AllOf(token, std::ispunct); }
bool IsDigits(std::string_view token) { return AllOf(token, std::isdigit); }

}  // namespace

std::vector<ChunkCandidate> HarvestChunks(const Corpus &corpus,
                                          const BuilderConfig &config) {
  if (config.max_chunk_tokens < 1) {
    throw ContractError("max_chunk_tokens must be at least 1");
  }
  std::vector<ChunkCandidate> chunks;
  for (const Document &doc : corpus.documents) {
    const int n = static_cast<int>(doc.tokens.size());
    std::vector<bool> inside(n, false);
    for (const EntityMention &m : doc.gold_entities) {
      for (int i = m.span.start; i < m.span.end; ++i) inside[i] = true;
    }
    auto is_break = [&](int i) {
      const std::string &text = doc.tokens[i].text;
      return inside[i] || IsPunctuation(text) ||
             config.stopwords.count(internal::AsciiLower(text)) > 0;
    };
    int i = 0;
    while (i < n) {
      if (is_break(i)) {
        ++i;
        continue;
      }
      int j = i + 1;
      while (j < n && !is_break(j) &&
             doc.tokens[j].sent_index == doc.tokens[i].sent_index) {
        ++j;
      }
      int start = i;
      int end = j;
      while (start < end && IsDigits(doc.tokens[start].text)) ++start;
      while (end > start && IsDigits(doc.tokens[end - 1].text)) --end;
      if (end > start && end - start <= config.max_chunk_tokens) {
        ChunkCandidate chunk;
        chunk.text = doc.MakeMention({start, end}, "other", Source::kGold).text;
        chunk.doc_id = doc.doc_id;
        chunk.span = TokenSpan{start, end};
        chunks.push_back(std::move(chunk));
      }
      i = j;
    }
  }
  return chunks;
}

int64_t OtherClassCap(const std::vector<LabeledText> &pairs) {
  std::map<std::string, int64_t> per_tag;
  for (const LabeledText &p : pairs) {
    if (p.label != kOtherLabel) ++per_tag[p.label];
  }
  if (per_tag.empty()) return 0;
  int64_t total = 0;
  for (const auto &[tag, n] : per_tag) total += n;
  return total / static_cast<int64_t>(per_tag.size());
}

std::vector<LabeledText> SampleOther(const std::vector<ChunkCandidate> &candidates,
                                     const std::vector<LabeledText> &pairs,
                                     const BuilderConfig &config,
                                     std::vector<std::string> *warnings) {
  const int64_t cap = OtherClassCap(pairs);
  const auto available = static_cast<int64_t>(candidates.size());
  if (available < cap && warnings != nullptr) {
    warnings->push_back("only " + std::to_string(available) +
                        " chunk candidates for an 'other' class capped at " +
                        std::to_string(cap));
  }
  const size_t take = static_cast<size_t>(std::min(cap, available));

  std::vector<size_t> index(candidates.size());
  std::iota(index.begin(), index.end(), size_t{0});
  std::mt19937_64 engine(config.seed);
  for (size_t i = 0; i < take; ++i) {
    const size_t j = i + internal::UniformBelow(engine, index.size() - i);
    std::swap(index[i], index[j]);
  }
  index.resize(take);
  std::sort(index.begin(), index.end());

  std::vector<LabeledText> other;
  other.reserve(take);
  for (size_t i : index) {
    other.push_back({candidates[i].text, std::string(kOtherLabel),
                     candidates[i].origin});
  }
  return other;
}

std::vector<ChunkCandidate> ParseChunkFile(std::string_view content) {
  std::vector<ChunkCandidate> chunks;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (!internal::IsValidUtf8(line)) throw ParseError("invalid UTF-8", line_no);
    std::string_view text = internal::Trim(line);
    if (text.empty()) continue;
    ChunkCandidate chunk;
    chunk.text = std::string(text);
    chunk.origin = TextOrigin::kExternalChunk;
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

std::vector<LabeledText> BuildTrainingSet(
    const Corpus &corpus, const BuilderConfig &config,
    const std::vector<ChunkCandidate> *external,
    std::vector<std::string> *warnings) {
  std::vector<LabeledText> pairs = ExtractPairs(corpus);
  std::vector<ChunkCandidate> harvested;
  if (external == nullptr) harvested = HarvestChunks(corpus, config);
  const auto &candidates = external != nullptr ? *external : harvested;
  std::vector<LabeledText> other = SampleOther(candidates, pairs, config, warnings);
  pairs.insert(pairs.end(), other.begin(), other.end());
  return pairs;
}

std::string WriteTrainingPairs(const std::vector<LabeledText> &pairs) {
  std::string out;
  for (const LabeledText &p : pairs) {
    nlohmann::ordered_json line{{"text", p.text},
                                {"label", p.label},
                                {"origin", TextOriginName(p.origin)}};
    out.append(line.dump()).append("\n");
  }
  return out;
}

std::vector<LabeledText> ParseTrainingPairs(std::string_view content) {
  std::vector<LabeledText> pairs;
  int line_no = 0;
  for (std::string_view line : internal::SplitLines(content)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    LabeledText p;
    try {
      const auto object = nlohmann::json::parse(line);
      p.text = object.at("text").get<std::string>();
      p.label = object.at("label").get<std::string>();
      const std::string origin = object.value("origin", "gold_entity");
      if (origin == "gold_entity") {
        p.origin = TextOrigin::kGoldEntity;
      } else if (origin == "sampled_chunk") {
        p.origin = TextOrigin::kSampledChunk;
      } else if (origin == "external_chunk") {
        p.origin = TextOrigin::kExternalChunk;
      } else {
        throw ParseError("unknown origin '" + origin + "'", line_no);
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("bad training pair: ") + e.what(), line_no);
    }
    if (internal::Trim(p.text).empty()) {
      throw ParseError("empty text", line_no);
    }
    if (internal::Trim(p.label).empty()) {
      throw ParseError("empty label", line_no);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace nereval
