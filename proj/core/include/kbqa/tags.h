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

#ifndef KBQA_TAGS_H_
#define KBQA_TAGS_H_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kbqa {

// Answer type tags. Exactly one per question.
enum class AnswerType { kMisc, kPer, kLoc, kWhy, kDate, kNum, kBoolean, kOrg, kUna };

inline constexpr std::array<AnswerType, 9> kAllAnswerTypes = {
    AnswerType::kMisc, AnswerType::kPer,     AnswerType::kLoc,
    AnswerType::kWhy,  AnswerType::kDate,    AnswerType::kNum,
    AnswerType::kBoolean, AnswerType::kOrg,  AnswerType::kUna};

// Row order used when rendering per-answer-type tables.
inline constexpr std::array<AnswerType, 9> kAnswerTypeReportOrder = {
    AnswerType::kMisc, AnswerType::kPer,     AnswerType::kLoc,
    AnswerType::kOrg,  AnswerType::kDate,    AnswerType::kBoolean,
    AnswerType::kNum,  AnswerType::kWhy,     AnswerType::kUna};

std::string_view ToString(AnswerType type);
std::optional<AnswerType> ParseAnswerType(std::string_view name);

// Reasoning tags: four operation tags and three topology tags.
enum class ReasoningType {
  kSetOperation,
  kFilter,
  kCounting,
  kComparative,
  kSingleHop,
  kMultiHop,
  kStarShape,
};

inline constexpr std::array<ReasoningType, 7> kAllReasoningTypes = {
    ReasoningType::kSetOperation, ReasoningType::kFilter,
    ReasoningType::kCounting,     ReasoningType::kComparative,
    ReasoningType::kSingleHop,    ReasoningType::kMultiHop,
    ReasoningType::kStarShape};

inline constexpr std::array<ReasoningType, 4> kOperationTags = {
    ReasoningType::kSetOperation, ReasoningType::kFilter,
    ReasoningType::kCounting, ReasoningType::kComparative};

std::string_view ToString(ReasoningType type);
// Accepts the canonical names plus common spellings ("Filtering",
// "Comparison", "Multi-hop", ...).
std::optional<ReasoningType> ParseReasoningType(std::string_view name);
bool IsOperationTag(ReasoningType type);

using ReasoningSet = std::set<ReasoningType>;

std::vector<std::string> ToStrings(const ReasoningSet& tags);
std::size_t CountOperationTags(const ReasoningSet& tags);

// Lowercase language code with '_' as region separator ("pt_br").
class LanguageTag {
 public:
  LanguageTag() : code_("en") {}
  // Normalizes case and separators; throws kInvalidArgument on empty input.
  static LanguageTag Parse(std::string_view code);

  const std::string& code() const { return code_; }
  bool InInventory() const;

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

 private:
  explicit LanguageTag(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

// The multilingual inventory, in report order.
inline constexpr std::array<std::string_view, 13> kLanguageInventory = {
    "en", "nl", "de", "es", "fr", "it", "ro",
    "pt_br", "pt", "ru", "hi_in", "fa", "zh_cn"};

struct FeatureTags {
  AnswerType answer_type = AnswerType::kMisc;
  ReasoningSet reasoning;
  LanguageTag language;
};

// Returns human-readable violations; empty when the tags are consistent.
std::vector<std::string> ValidateFeatureTags(const FeatureTags& tags,
                                             bool has_sparql);

}  // namespace kbqa

#endif  // KBQA_TAGS_H_
