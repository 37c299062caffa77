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

#ifndef KBQA_REASONING_H_
#define KBQA_REASONING_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/sparql.h"
#include "kbqa/tags.h"

namespace kbqa {

// Keyword and topology rules used to tag SPARQL queries. Loaded from the
// versioned reasoning_rules.json table.
class ReasoningRules {
 public:
  struct KeywordRule {
    ReasoningType tag;
    std::vector<std::string> sequence;
    std::vector<std::vector<std::string>> not_followed_by;
  };
  struct ConjunctiveRule {
    ReasoningType tag;
    std::vector<std::vector<std::string>> all_of;
  };

  static const ReasoningRules& Default();
  static ReasoningRules FromJson(const nlohmann::json& table);

  const std::string& version() const { return version_; }
  const std::vector<KeywordRule>& keyword_rules() const { return keyword_rules_; }
  const std::vector<ConjunctiveRule>& conjunctive_rules() const {
    return conjunctive_rules_;
  }
  ReasoningType numeric_comparison_tag() const { return numeric_tag_; }
  const std::vector<std::string>& comparison_operators() const {
    return comparison_operators_;
  }
  std::size_t single_hop_patterns() const { return single_hop_patterns_; }
  std::size_t star_min_shared_subject() const { return star_min_shared_; }

 private:
  std::string version_;
  std::vector<KeywordRule> keyword_rules_;
  std::vector<ConjunctiveRule> conjunctive_rules_;
  ReasoningType numeric_tag_ = ReasoningType::kComparative;
  std::vector<std::string> comparison_operators_;
  std::size_t single_hop_patterns_ = 1;
  std::size_t star_min_shared_ = 2;
};

// Tags a SPARQL query with operation tags (from keywords) and exactly one of
// SingleHop/MultiHop, plus StarShape when the triple patterns form a star.
// Throws Error(kClassification) carrying the query when it cannot be
// tokenized or contains no triple pattern.
ReasoningSet ClassifyReasoning(std::string_view sparql,
                               const ReasoningRules& rules = ReasoningRules::Default());

// Star test over extracted triple patterns: some variable is the subject of
// at least `min_shared` patterns and no pattern's object variable is the
// subject of a different pattern.
bool IsStarShaped(const std::vector<sparql::TriplePattern>& triples,
                  std::size_t min_shared = 2);

}  // namespace kbqa

#endif  // KBQA_REASONING_H_
