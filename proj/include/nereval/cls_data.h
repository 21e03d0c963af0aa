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

// Training data for the entity classifier: (entity text, tag) pairs from gold
// annotations plus an "other" class sampled from text outside any entity.
//
// The built-in chunker takes maximal runs of tokens outside gold entities and
// cuts them at sentence boundaries, punctuation-only tokens and stopwords.
// Digit-only tokens are trimmed from both ends of each piece and pieces
// longer than max_chunk_tokens are dropped. Chunks from an external chunker
// can be loaded instead with ParseChunkFile.

#ifndef NEREVAL_CLS_DATA_H_
#define NEREVAL_CLS_DATA_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nereval/corpus.h"

namespace nereval {

inline constexpr std::string_view kOtherLabel = "other";

enum class TextOrigin { kGoldEntity, kSampledChunk, kExternalChunk };

const char *TextOriginName(TextOrigin origin);

struct LabeledText {
  std::string text;
  std::string label;
  TextOrigin origin = TextOrigin::kGoldEntity;

  bool operator==(const LabeledText &) const = default;
};

// Lowercased English function words.
const std::set<std::string> &DefaultStopwords();

struct BuilderConfig {
  uint64_t seed = 0;
  int max_chunk_tokens = 6;
  std::set<std::string> stopwords = DefaultStopwords();
};

struct ChunkCandidate {
  std::string text;
  TextOrigin origin = TextOrigin::kSampledChunk;
  // Source location; absent for external chunks.
  std::string doc_id;
  std::optional<TokenSpan> span;
};

// One pair per gold mention, duplicates kept, in corpus order.
std::vector<LabeledText> ExtractPairs(const Corpus &corpus);

// Throws ContractError if max_chunk_tokens < 1.
std::vector<ChunkCandidate> HarvestChunks(const Corpus &corpus,
                                          const BuilderConfig &config);

// floor(mean over tags of the per-tag pair count); 0 without pairs.
int64_t OtherClassCap(const std::vector<LabeledText> &pairs);

// Uniform sample without replacement of min(cap, |candidates|) candidates,
// labeled "other" and kept in candidate order. A short candidate list is
// reported through `warnings`.
std::vector<LabeledText> SampleOther(const std::vector<ChunkCandidate> &candidates,
                                     const std::vector<LabeledText> &pairs,
                                     const BuilderConfig &config,
                                     std::vector<std::string> *warnings = nullptr);

// One chunk per line, blank lines skipped. Throws ParseError on invalid
// UTF-8.
std::vector<ChunkCandidate> ParseChunkFile(std::string_view content);

// Extract, harvest (or use `external` when given), sample and concatenate:
// gold pairs first, then the "other" class.
std::vector<LabeledText> BuildTrainingSet(
    const Corpus &corpus, const BuilderConfig &config,
    const std::vector<ChunkCandidate> *external = nullptr,
    std::vector<std::string> *warnings = nullptr);

// Training-pairs file: one {"text", "label", "origin"} object per line.
std::string WriteTrainingPairs(const std::vector<LabeledText> &pairs);
// Throws ParseError.
std::vector<LabeledText> ParseTrainingPairs(std::string_view content);

}  // namespace nereval

#endif  // NEREVAL_CLS_DATA_H_
