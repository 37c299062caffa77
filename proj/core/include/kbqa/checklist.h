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

#ifndef KBQA_CHECKLIST_H_
#define KBQA_CHECKLIST_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/answer_type.h"
#include "kbqa/paraphrase.h"
#include "kbqa/record.h"

namespace kbqa {

enum class TestKind { kBase, kInvTypo, kInvPara, kDirSwap, kDirHint, kDirCot };
std::string_view ToString(TestKind kind);  // "BASE", "INV_TYPO", ...
std::optional<TestKind> ParseTestKind(std::string_view name);

struct Expectation {
  std::vector<std::string> required_keywords;   // DIR_SWAP
  std::vector<std::string> forbidden_keywords;  // DIR_SWAP
  std::optional<AnswerType> hinted;             // DIR_HINT
  std::string rule_id;

  bool empty() const {
    return required_keywords.empty() && forbidden_keywords.empty() && !hinted;
  }
};

struct TestCase {
  std::string id;       // "<base_id>#<KIND>"
  std::string base_id;
  TestKind kind = TestKind::kBase;
  std::vector<std::string> turns;
  Expectation expectation;
  std::string provenance;  // seed, provider or rule that produced it

  nlohmann::ordered_json ToJson() const;
  static TestCase FromJson(const nlohmann::json& j);
};

// Either a test case or the reason the record could not produce one.
struct Generated {
  std::optional<TestCase> test;
  std::string skip_reason;
};

// MFT: records with at most one operation tag are "single".
struct MftPartition {
  std::vector<QuestionRecord> single;
  std::vector<QuestionRecord> multiple;
};
MftPartition PartitionMft(const std::vector<QuestionRecord>& records);
bool IsSingleReasoning(const QuestionRecord& record);

TestCase MakeBaseCase(const QuestionRecord& record);

// Seed for a record's typo: the battery seed mixed with the record id, so
// each question is mutated differently but reproducibly.
std::uint64_t TypoSeed(std::uint64_t battery_seed, std::string_view record_id);
TestCase GenInvTypo(const QuestionRecord& record, std::uint64_t battery_seed,
                    double rate = 0.1);
Generated GenInvPara(const QuestionRecord& record, ParaphraseProvider& provider);

class SwapRules {
 public:
  struct Pattern {
    std::string from;
    std::string to;
    std::regex re;
  };
  struct Rule {
    std::string id;
    std::set<ReasoningType> source_tags;
    std::vector<Pattern> patterns;
    std::string append;
    std::vector<std::string> required;
    std::vector<std::string> forbidden;
  };

  static const SwapRules& Default();
  // Throws Error(kConfiguration) on unknown tags, bad regexes or a rule
  // without any expected keyword.
  static SwapRules FromJson(const nlohmann::json& j);

  const std::string& version() const { return version_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::string RenderInstruction(std::string_view question) const;

 private:
  std::string version_;
  std::string instruction_;
  std::vector<Rule> rules_;
};

// Applies the first rule (file order) whose source tag the record carries
// and whose phrase swap changes the question.
Generated GenDirSwap(const QuestionRecord& record, const SwapRules& rules = SwapRules::Default());

class HintTemplates {
 public:
  static const HintTemplates& Default();
  // The template must contain "{hint}"; throws Error(kConfiguration).
  static HintTemplates FromJson(const nlohmann::json& j);
  HintTemplates(std::string templ, std::map<AnswerType, std::string> hints);

  const std::string& version() const { return version_; }
  // Throws Error(kPrecondition) for UNA, Error(kConfiguration) when no hint
  // is configured for the type.
  std::string Render(AnswerType type) const;

 private:
  std::string version_;
  std::string template_;
  std::map<AnswerType, std::string> hints_;
};

TestCase GenDirHint(const QuestionRecord& record,
                    const HintTemplates& templates = HintTemplates::Default());

// Key nouns from the NER provider (RuleNer when null or unavailable),
// else the longest content word; empty when none is found.
std::vector<std::string> KeyNouns(std::string_view question, const NerProvider* ner);
TestCase GenDirCot(const QuestionRecord& record, const NerProvider* ner = nullptr);

// SPARQL keyword check: the query is taken from the first fenced code
// block, else from the first query keyword on. Keywords match whole tokens
// case-insensitively outside string literals; "ORDER BY" matches a token
// sequence.
std::string ExtractQueryText(std::string_view output);
bool ContainsKeyword(std::string_view output, std::string_view keyword);
bool CheckSparqlExpectation(std::string_view output, const std::set<std::string>& expected);
bool CheckSparqlExpectation(std::string_view output, const Expectation& expectation);

// Stability classes over (original, typo, paraphrase) outcomes.
enum class StabilityClass { kCCC, kCCW, kCWC, kCWW, kWCC, kWCW, kWWC, kWWW };
inline constexpr std::array<StabilityClass, 8> kAllStabilityClasses = {
    StabilityClass::kCCC, StabilityClass::kCCW, StabilityClass::kCWC, StabilityClass::kCWW,
    StabilityClass::kWCC, StabilityClass::kWCW, StabilityClass::kWWC, StabilityClass::kWWW};
std::string_view ToString(StabilityClass c);
std::optional<StabilityClass> ParseStabilityClass(std::string_view name);
StabilityClass ClassifyStability(const std::array<bool, 3>& outcomes);
// Throws Error(kInvalidArgument) unless exactly three outcomes are given.
StabilityClass ClassifyStability(const std::vector<bool>& outcomes);
bool IsStable(StabilityClass c);

using StabilityCounts = std::map<StabilityClass, std::size_t>;
// 100 * (CCC + WWW) / total, rounded to two decimals. Throws
// Error(kInvalidArgument) when the total is zero.
double StabilityRate(const StabilityCounts& counts);

}  // namespace kbqa

#endif  // KBQA_CHECKLIST_H_
