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

#ifndef KBQA_TYPED_VALUES_H_
#define KBQA_TYPED_VALUES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Parsers for the answer types that are compared structurally rather than
// by string or embedding similarity: numbers, dates and yes/no answers.
namespace kbqa {

struct DateValue {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  // "1969", "1969-07" or "1969-07-20".
  std::string ToIso() const;
  // True when every component `gold` specifies is present and equal here.
  bool Satisfies(const DateValue& gold) const;

  friend bool operator==(const DateValue&, const DateValue&) = default;
};

// Whole-string parses. ParseNumber accepts an optional sign, thousands
// separators, decimals, exponents and English number words ("forty-two").
std::optional<double> ParseNumber(std::string_view s);
// Accepts ISO dates (with optional time and leading '+'), "July 20, 1969",
// "20 July 1969", "July 1969" and bare four-digit years.
std::optional<DateValue> ParseDate(std::string_view s);
// Unit-free parse: the whole string when numeric, otherwise the single
// number embedded in it ("42 km" -> 42).
std::optional<double> ParseNumberLoose(std::string_view s);

std::vector<double> ExtractNumbers(std::string_view text);
std::vector<DateValue> ExtractDates(std::string_view text);

bool NumbersEqual(double a, double b);

// Gold-side boolean: yes/no/true/false and their common translations.
std::optional<bool> ParseBooleanLiteral(std::string_view s);
// Output-side polarity: a leading affirmation/negation cue word wins,
// otherwise the first boolean lexicon word anywhere in the text.
std::optional<bool> DetectPolarity(std::string_view output);

}  // namespace kbqa

#endif  // KBQA_TYPED_VALUES_H_
