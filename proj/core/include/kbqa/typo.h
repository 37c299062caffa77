// Copyright 2026 The kbqa-eval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KBQA_TYPO_H_
#define KBQA_TYPO_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace kbqa {

// Injects k = max(1, round(rate * words)) single-character edits, one in
// each of k distinct tokens chosen by a seeded RNG. Non-stopword tokens are
// preferred. Edits are adjacent-key substitution, transposition of two
// neighbouring characters, or deletion. The result always differs from the
// input. Throws Error(kPrecondition) when the text has no word.
std::string GenTypo(std::string_view text, std::uint64_t seed, double rate = 0.1);

// Number of edits GenTypo applies to `text`.
std::size_t TypoEditCount(std::string_view text, double rate = 0.1);

// Levenshtein distance over code points.
std::size_t EditDistance(std::string_view a, std::string_view b);

}  // namespace kbqa

#endif  // KBQA_TYPO_H_
