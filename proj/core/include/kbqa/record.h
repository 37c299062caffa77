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

#ifndef KBQA_RECORD_H_
#define KBQA_RECORD_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/tags.h"

namespace kbqa {

struct ReferenceAnswer {
  std::string canonical;
  std::optional<std::string> entity_id;  // KB identifier (Wikidata QID, MID, URI)
  std::vector<std::string> aliases;

  friend bool operator==(const ReferenceAnswer&, const ReferenceAnswer&) = default;
};

inline constexpr std::string_view kFlagLowConfidence = "low-confidence";
inline constexpr std::string_view kFlagUnexpanded = "unexpanded";

// One unified test question.
struct QuestionRecord {
  std::string id;       // "<dataset>:<native id>[:<lang>]"
  std::string dataset;  // canonical dataset key
  std::string text;
  std::vector<ReferenceAnswer> gold;
  std::optional<std::string> sparql;
  FeatureTags tags;  // tags.language is the record language
  std::vector<std::string> flags;

  const LanguageTag& language() const { return tags.language; }
  bool HasFlag(std::string_view flag) const;
  void AddFlag(std::string_view flag);
  std::vector<std::string> GoldStrings() const;
};

// Unified store line: field order is fixed (id, dataset, text, lang, gold,
// sparql, answer_type, reasoning, flags) so serialization is byte-stable.
nlohmann::ordered_json ToJson(const QuestionRecord& record);
// Throws Error(kParse) naming the missing or mistyped field.
QuestionRecord RecordFromJson(const nlohmann::json& j);

// Store-wide invariant check: unique ids, non-empty gold unless UNA,
// FeatureTags invariants, canonical contained in aliases when expanded.
std::vector<std::string> ValidateRecords(const std::vector<QuestionRecord>& records);

}  // namespace kbqa

#endif  // KBQA_RECORD_H_
