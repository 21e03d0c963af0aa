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

// Small string helpers shared by the readers and the classifier.

#ifndef NEREVAL_SRC_TEXT_UTIL_H_
#define NEREVAL_SRC_TEXT_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nereval {
namespace internal {

bool IsValidUtf8(std::string_view text);

std::string_view Trim(std::string_view text);

// Splits on '\n' and strips one trailing '\r' from every line. A trailing
// newline does not produce an extra empty line.
std::vector<std::string_view> SplitLines(std::string_view content);

// Splits on runs of ASCII spaces and tabs.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

std::string AsciiLower(std::string_view text);

// Byte offsets of every code point start in a valid UTF-8 string, followed by
// text.size().
std::vector<size_t> CodePointBoundaries(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

// Uniform integer in [0, bound) from a 64-bit engine by rejection sampling.
// Independent of the standard library's distribution implementation, so the
// result is reproducible across toolchains.
template <typename Engine>
uint64_t UniformBelow(Engine &engine, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t value;
  do {
    value = engine();
  } while (value >= limit);
  return value % bound;
}

// Uniform double in [0, 1) with 53 random bits.
template <typename Engine>
double UniformUnit(Engine &engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// In-place Fisher-Yates shuffle driven by UniformBelow.
template <typename Engine, typename T>
void Shuffle(Engine &engine, std::vector<T> *items) {
  for (size_t i = items->size(); i > 1; --i) {
    size_t j = UniformBelow(engine, i);
    std::swap((*items)[i - 1], (*items)[j]);
  }
}

}  // namespace internal
}  // namespace nereval

#endif  // NEREVAL_SRC_TEXT_UTIL_H_
