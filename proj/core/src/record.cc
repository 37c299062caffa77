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

#include "kbqa/record.h"

#include <algorithm>
#include <set>

#include "kbqa/error.h"

namespace kbqa {

bool QuestionRecord::HasFlag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

void QuestionRecord::AddFlag(std::string_view flag) {
  if (!HasFlag(flag)) flags.emplace_back(flag);
}

std::vector<std::string> QuestionRecord::GoldStrings() const {
  std::vector<std::string> out;
  out.reserve(gold.size());
  for (const auto& g : gold) out.push_back(g.canonical);
  return out;
}

nlohmann::ordered_json ToJson(const QuestionRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["dataset"] = r.dataset;
  j["text"] = r.text;
  j["lang"] = r.tags.language.code();
  nlohmann::ordered_json gold = nlohmann::ordered_json::array();
  for (const auto& g : r.gold) {
    nlohmann::ordered_json e;
    e["canonical"] = g.canonical;
    e["entity_id"] = g.entity_id ? nlohmann::ordered_json(*g.entity_id)
                                 : nlohmann::ordered_json(nullptr);
    e["aliases"] = g.aliases;
    gold.push_back(std::move(e));
  }
  j["gold"] = std::move(gold);
  j["sparql"] = r.sparql ? nlohmann::ordered_json(*r.sparql)
                         : nlohmann::ordered_json(nullptr);
  j["answer_type"] = std::string(ToString(r.tags.answer_type));
  j["reasoning"] = ToStrings(r.tags.reasoning);
  j["flags"] = r.flags;
  return j;
}

QuestionRecord RecordFromJson(const nlohmann::json& j) {
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(name)) {
      throw Error(ErrorCode::kParse, std::string("missing field '") + name + "'",
                  name);
    }
    return j.at(name);
  };
  QuestionRecord r;
  try {
    r.id = field("id").get<std::string>();
    r.dataset = field("dataset").get<std::string>();
    r.text = field("text").get<std::string>();
    r.tags.language = LanguageTag::Parse(field("lang").get<std::string>());
    for (const auto& g : field("gold")) {
      ReferenceAnswer ref;
      ref.canonical = g.at("canonical").get<std::string>();
      if (g.contains("entity_id") && !g.at("entity_id").is_null()) {
        ref.entity_id = g.at("entity_id").get<std::string>();
      }
      if (g.contains("aliases")) {
        ref.aliases = g.at("aliases").get<std::vector<std::string>>();
      }
      r.gold.push_back(std::move(ref));
    }
    if (j.contains("sparql") && !j.at("sparql").is_null()) {
      r.sparql = j.at("sparql").get<std::string>();
    }
    std::string answer_type = field("answer_type").get<std::string>();
    auto parsed = ParseAnswerType(answer_type);
    if (!parsed) {
      throw Error(ErrorCode::kParse, "unknown answer_type '" + answer_type + "'",
                  "answer_type");
    }
    r.tags.answer_type = *parsed;
    for (const auto& tag : field("reasoning")) {
      auto rt = ParseReasoningType(tag.get<std::string>());
      if (!rt) {
        throw Error(ErrorCode::kParse, "unknown reasoning tag " + tag.dump(),
                    "reasoning");
      }
      r.tags.reasoning.insert(*rt);
    }
    if (j.contains("flags")) {
      r.flags = j.at("flags").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed record: ") + e.what());
  }
  return r;
}

std::vector<std::string> ValidateRecords(const std::vector<QuestionRecord>& records) {
  std::vector<std::string> violations;
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.id).second) {
      violations.push_back(r.id + ": duplicate id");
    }
    if (r.text.empty()) violations.push_back(r.id + ": empty text");
    if (r.gold.empty() && r.tags.answer_type != AnswerType::kUna) {
      violations.push_back(r.id + ": gold empty for answerable question");
    }
    for (const auto& g : r.gold) {
      if (g.canonical.empty()) {
        violations.push_back(r.id + ": empty canonical answer");
      }
      if (!g.aliases.empty() &&
          std::find(g.aliases.begin(), g.aliases.end(), g.canonical) ==
              g.aliases.end()) {
        violations.push_back(r.id + ": canonical missing from aliases");
      }
    }
    for (const auto& v : ValidateFeatureTags(r.tags, r.sparql.has_value())) {
      violations.push_back(r.id + ": " + v);
    }
  }
  return violations;
}

}  // namespace kbqa
