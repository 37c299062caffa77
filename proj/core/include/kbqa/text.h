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

#ifndef KBQA_TEXT_H_
#define KBQA_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the matcher, the perturbation generators and the
// labelers. Case folding covers Latin, Greek and Cyrillic; CJK and other
// scripts are passed through unchanged.
namespace kbqa::text {

std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);
void AppendUtf8(char32_t cp, std::string& out);

char32_t ToLower(char32_t cp);
char32_t ToUpper(char32_t cp);
std::string ToLower(std::string_view s);
std::string ToUpperAscii(std::string_view s);

bool IsSpace(char32_t cp);
bool IsPunct(char32_t cp);
bool IsDigit(char32_t cp);
bool IsCjk(char32_t cp);
// Letters in the loose sense: anything that is neither space, punctuation
// nor an ASCII digit or control character.
bool IsLetter(char32_t cp);
bool IsUpper(char32_t cp);

std::string_view TrimSpace(std::string_view s);
std::string CollapseSpace(std::string_view s);

// Answer normalization: lowercase, strip leading/trailing punctuation and
// whitespace, collapse internal whitespace runs to one space.
std::string NormalizeAnswer(std::string_view s);

struct Span {
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
  std::string_view View(std::string_view source) const {
    return source.substr(begin, end - begin);
  }
};

// Maximal runs of letters and digits, with apostrophes and hyphens kept
// when they join two letters ("don't", "Jean-Luc").
std::vector<Span> WordSpans(std::string_view s);
std::vector<std::string> Words(std::string_view s);

std::vector<std::string> SplitSentences(std::string_view s);

bool EqualsIgnoreCase(std::string_view a, std::string_view b);
bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Converts a code-point offset into a byte offset of `s`; clamps at the end.
std::size_t CodePointToByteOffset(std::string_view s, std::size_t cp_offset);

}  // namespace kbqa::text

#endif  // KBQA_TEXT_H_
