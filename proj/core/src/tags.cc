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

#include "kbqa/tags.h"

#include <algorithm>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {

std::string_view ToString(AnswerType type) {
  switch (type) {
    case AnswerType::kMisc: return "MISC";
    case AnswerType::kPer: return "PER";
    case AnswerType::kLoc: return "LOC";
    case AnswerType::kWhy: return "WHY";
    case AnswerType::kDate: return "DATE";
    case AnswerType::kNum: return "NUM";
    case AnswerType::kBoolean: return "Boolean";
    case AnswerType::kOrg: return "ORG";
    case AnswerType::kUna: return "UNA";
  }
  return "MISC";
}

std::optional<AnswerType> ParseAnswerType(std::string_view name) {
  std::string lower = text::ToLower(text::TrimSpace(name));
  for (AnswerType type : kAllAnswerTypes) {
    if (text::ToLower(ToString(type)) == lower) return type;
  }
  if (lower == "bool" || lower == "boolean") return AnswerType::kBoolean;
  return std::nullopt;
}

std::string_view ToString(ReasoningType type) {
  switch (type) {
    case ReasoningType::kSetOperation: return "SetOperation";
    case ReasoningType::kFilter: return "Filter";
    case ReasoningType::kCounting: return "Counting";
    case ReasoningType::kComparative: return "Comparative";
    case ReasoningType::kSingleHop: return "SingleHop";
    case ReasoningType::kMultiHop: return "MultiHop";
    case ReasoningType::kStarShape: return "StarShape";
  }
  return "SingleHop";
}

std::optional<ReasoningType> ParseReasoningType(std::string_view name) {
  std::string key;
  for (char c : text::ToLower(name)) {
    if (c != '-' && c != '_' && c != ' ') key.push_back(c);
  }
  if (key == "setoperation") return ReasoningType::kSetOperation;
  if (key == "filter" || key == "filtering") return ReasoningType::kFilter;
  if (key == "counting" || key == "count") return ReasoningType::kCounting;
  if (key == "comparative" || key == "comparison") {
    return ReasoningType::kComparative;
  }
  if (key == "singlehop") return ReasoningType::kSingleHop;
  if (key == "multihop") return ReasoningType::kMultiHop;
  if (key == "starshape" || key == "star") return ReasoningType::kStarShape;
  return std::nullopt;
}

bool IsOperationTag(ReasoningType type) {
  return std::find(kOperationTags.begin(), kOperationTags.end(), type) !=
         kOperationTags.end();
}

std::vector<std::string> ToStrings(const ReasoningSet& tags) {
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (ReasoningType t : tags) out.emplace_back(ToString(t));
  return out;
}

std::size_t CountOperationTags(const ReasoningSet& tags) {
  return static_cast<std::size_t>(
      std::count_if(tags.begin(), tags.end(), IsOperationTag));
}

LanguageTag LanguageTag::Parse(std::string_view code) {
  std::string out;
  for (char c : text::TrimSpace(code)) {
    out.push_back(c == '-' ? '_' : c);
  }
  out = text::ToLower(out);
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty language code");
  }
  return LanguageTag(std::move(out));
}

bool LanguageTag::InInventory() const {
  return std::find(kLanguageInventory.begin(), kLanguageInventory.end(),
                   code_) != kLanguageInventory.end();
}

std::vector<std::string> ValidateFeatureTags(const FeatureTags& tags,
                                             bool has_sparql) {
  std::vector<std::string> violations;
  if (has_sparql && tags.reasoning.empty()) {
    violations.emplace_back("reasoning tags empty for a record with SPARQL");
  }
  if (tags.reasoning.count(ReasoningType::kSingleHop) &&
      tags.reasoning.count(ReasoningType::kMultiHop)) {
    violations.emplace_back("SingleHop and MultiHop are mutually exclusive");
  }
  if (tags.language.code().empty()) {
    violations.emplace_back("language tag empty");
  } else if (!tags.language.InInventory()) {
    violations.emplace_back("language '" + tags.language.code() +
                            "' outside the supported inventory");
  }
  return violations;
}

}  // namespace kbqa
