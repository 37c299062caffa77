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

#include "kbqa/reasoning.h"

#include <algorithm>
#include <map>

#include "kbqa/error.h"
#include "kbqa/resources.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

ReasoningType RequireTag(const nlohmann::json& value) {
  auto tag = ParseReasoningType(value.get<std::string>());
  if (!tag) {
    throw Error(ErrorCode::kConfiguration,
                "unknown reasoning tag in rule table: " + value.dump());
  }
  return *tag;
}

std::vector<std::string> UpperAll(const nlohmann::json& arr) {
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(text::ToUpperAscii(v.get<std::string>()));
  return out;
}

bool MatchesAt(const std::vector<std::string>& words, std::size_t at,
               const std::vector<std::string>& seq) {
  if (at + seq.size() > words.size()) return false;
  return std::equal(seq.begin(), seq.end(), words.begin() + at);
}

bool ContainsSequence(const std::vector<std::string>& words,
                      const std::vector<std::string>& seq) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (MatchesAt(words, i, seq)) return true;
  }
  return false;
}

bool IsNumericOperand(const sparql::Token& t) {
  if (t.kind == sparql::TokenKind::kNumber) return true;
  // "5"^^xsd:integer and friends are folded by the caller.
  return false;
}

bool HasNumericComparison(const std::vector<sparql::Token>& tokens,
                          const std::vector<std::string>& ops) {
  auto is_typed_numeric = [&](std::size_t i) {
    // tokens[i] is a string literal followed by ^^ and a numeric datatype.
    if (i + 2 >= tokens.size()) return false;
    if (tokens[i].kind != sparql::TokenKind::kString) return false;
    if (tokens[i + 1].text != "^^") return false;
    std::string dt = text::ToLower(tokens[i + 2].text);
    for (std::string_view numeric :
         {"integer", "decimal", "double", "float", "int", "long"}) {
      if (dt.find(numeric) != std::string::npos) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const sparql::Token& t = tokens[i];
    if (t.kind != sparql::TokenKind::kOperator) continue;
    if (std::find(ops.begin(), ops.end(), t.text) == ops.end()) continue;
    bool left = i > 0 && (IsNumericOperand(tokens[i - 1]) ||
                          (i >= 3 && is_typed_numeric(i - 3)));
    std::size_t r = i + 1;
    if (r < tokens.size() && tokens[r].kind == sparql::TokenKind::kOperator &&
        (tokens[r].text == "-" || tokens[r].text == "+")) {
      ++r;
    }
    bool right = r < tokens.size() &&
                 (IsNumericOperand(tokens[r]) || is_typed_numeric(r));
    if (left || right) return true;
  }
  return false;
}

}  // namespace

ReasoningRules ReasoningRules::FromJson(const nlohmann::json& table) {
  ReasoningRules rules;
  try {
    rules.version_ = table.value("version", "unversioned");
    for (const auto& r : table.at("keyword_rules")) {
      KeywordRule rule{RequireTag(r.at("tag")), UpperAll(r.at("sequence")), {}};
      if (r.contains("not_followed_by")) {
        for (const auto& seq : r.at("not_followed_by")) {
          rule.not_followed_by.push_back(UpperAll(seq));
        }
      }
      rules.keyword_rules_.push_back(std::move(rule));
    }
    for (const auto& r : table.value("conjunctive_rules", nlohmann::json::array())) {
      ConjunctiveRule rule{RequireTag(r.at("tag")), {}};
      for (const auto& seq : r.at("all_of")) rule.all_of.push_back(UpperAll(seq));
      rules.conjunctive_rules_.push_back(std::move(rule));
    }
    const auto& numeric = table.at("numeric_comparison");
    rules.numeric_tag_ = RequireTag(numeric.at("tag"));
    rules.comparison_operators_ =
        numeric.at("operators").get<std::vector<std::string>>();
    const auto& topology = table.at("topology");
    rules.single_hop_patterns_ = topology.value("single_hop_patterns", 1u);
    rules.star_min_shared_ =
        topology.value("star_min_shared_subject_patterns", 2u);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("malformed reasoning rule table: ") + e.what());
  }
  return rules;
}

const ReasoningRules& ReasoningRules::Default() {
  static const ReasoningRules kRules =
      FromJson(LoadResource("reasoning_rules.json"));
  return kRules;
}

bool IsStarShaped(const std::vector<sparql::TriplePattern>& triples,
                  std::size_t min_shared) {
  if (triples.size() < min_shared) return false;
  std::map<std::string, std::size_t> subject_uses;
  for (const auto& t : triples) {
    if (sparql::IsVariableTerm(t.subject)) ++subject_uses[t.subject];
  }
  bool shared = std::any_of(subject_uses.begin(), subject_uses.end(),
                            [&](const auto& kv) { return kv.second >= min_shared; });
  if (!shared) return false;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const std::string& object = triples[i].object;
    if (!sparql::IsVariableTerm(object)) continue;
    for (std::size_t j = 0; j < triples.size(); ++j) {
      if (i != j && triples[j].subject == object) return false;
    }
  }
  return true;
}

ReasoningSet ClassifyReasoning(std::string_view sparql_text,
                               const ReasoningRules& rules) {
  std::vector<sparql::Token> tokens = sparql::Tokenize(sparql_text);
  std::vector<std::string> words;
  for (const auto& t : tokens) {
    if (t.kind == sparql::TokenKind::kName) {
      words.push_back(text::ToUpperAscii(t.text));
    }
  }

  ReasoningSet tags;
  for (const auto& rule : rules.keyword_rules()) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!MatchesAt(words, i, rule.sequence)) continue;
      std::size_t after = i + rule.sequence.size();
      bool excluded = std::any_of(
          rule.not_followed_by.begin(), rule.not_followed_by.end(),
          [&](const auto& seq) { return MatchesAt(words, after, seq); });
      if (!excluded) {
        tags.insert(rule.tag);
        break;
      }
    }
  }
  for (const auto& rule : rules.conjunctive_rules()) {
    bool all = std::all_of(rule.all_of.begin(), rule.all_of.end(),
                           [&](const auto& seq) { return ContainsSequence(words, seq); });
    if (all) tags.insert(rule.tag);
  }
  if (HasNumericComparison(tokens, rules.comparison_operators())) {
    tags.insert(rules.numeric_comparison_tag());
  }

  std::vector<sparql::TriplePattern> triples =
      sparql::ExtractTriplePatterns(tokens, sparql_text);
  if (triples.empty()) {
    throw Error(ErrorCode::kClassification,
                "SPARQL query has no triple pattern", std::string(sparql_text));
  }
  if (triples.size() == rules.single_hop_patterns()) {
    tags.insert(ReasoningType::kSingleHop);
  } else {
    tags.insert(ReasoningType::kMultiHop);
  }
  if (IsStarShaped(triples, rules.star_min_shared_subject())) {
    tags.insert(ReasoningType::kStarShape);
  }
  return tags;
}

}  // namespace kbqa
