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

#ifndef KBQA_MATCHER_H_
#define KBQA_MATCHER_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbqa/candidates.h"
#include "kbqa/embedding.h"
#include "kbqa/record.h"

namespace kbqa {

enum class MatchMethod { kExact, kFuzzy, kNone };
std::string_view ToString(MatchMethod method);

struct MatchResult {
  bool correct = false;
  MatchMethod method = MatchMethod::kNone;
  std::optional<double> best_similarity;
  std::optional<std::pair<std::string, std::string>> matched;  // (candidate, reference)
  bool embedder_fallback = false;  // the trigram embedder stood in
};

struct MatchConfig {
  double tau = 0.78;
  std::set<AnswerType> fuzzy_excluded_types = {AnswerType::kNum, AnswerType::kDate,
                                               AnswerType::kBoolean};
  const Embedder* embedder = nullptr;   // null: trigram
  const PhraseParser* parser = nullptr; // null: fallback chunker

  // Throws Error(kConfiguration) unless tau is in [0, 1].
  void Validate() const;
};

// Normalized reference strings: every canonical and alias, deduplicated.
std::vector<std::string> ReferenceStrings(const std::vector<ReferenceAnswer>& refs);

MatchResult ExactMatch(const CandidatePool& pool, const std::vector<ReferenceAnswer>& refs);

// Maximum cosine similarity over (candidate, reference) pairs; correct when
// it reaches tau. Identical normalized strings score exactly 1.
MatchResult FuzzyMatch(const CandidatePool& pool, const std::vector<ReferenceAnswer>& refs,
                       const MatchConfig& cfg, std::string_view lang = "en");

// Structural comparison for NUM, DATE and Boolean answers against the raw
// output. Returns nullopt when the references do not parse as the type.
std::optional<MatchResult> TypedMatch(std::string_view output,
                                      const std::vector<ReferenceAnswer>& refs,
                                      AnswerType type);

CandidatePool BuildPool(std::string_view output, const MatchConfig& cfg,
                        std::string_view lang = "en");

// Full pipeline: exact match, then type-aware comparison for NUM/DATE/
// Boolean or fuzzy matching for every other type. An empty output is
// incorrect with method none.
MatchResult EvaluateAnswer(const QuestionRecord& record, std::string_view output,
                           const MatchConfig& cfg);

// Number of distinct gold answers that some candidate of `output` matches
// (exact, typed or fuzzy). Used for F1.
std::size_t CountMatchedGold(const QuestionRecord& record, std::string_view output,
                             const MatchConfig& cfg);

}  // namespace kbqa

#endif  // KBQA_MATCHER_H_
