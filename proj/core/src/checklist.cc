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

#include "kbqa/checklist.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kbqa/error.h"
#include "kbqa/hashing.h"
#include "kbqa/resources.h"
#include "kbqa/sparql.h"
#include "kbqa/text.h"
#include "kbqa/typo.h"

namespace kbqa {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<TestKind, std::string_view>, 6> kKindNames = {{
    {TestKind::kBase, "BASE"},
    {TestKind::kInvTypo, "INV_TYPO"},
    {TestKind::kInvPara, "INV_PARA"},
    {TestKind::kDirSwap, "DIR_SWAP"},
    {TestKind::kDirHint, "DIR_HINT"},
    {TestKind::kDirCot, "DIR_COT"},
}};

std::string CaseId(const QuestionRecord& record, TestKind kind) {
  return record.id + "#" + std::string(ToString(kind));
}

std::vector<std::string> UpperAll(std::vector<std::string> words) {
  for (auto& w : words) w = text::ToUpperAscii(w);
  return words;
}

// Inserts " <phrase>" before the trailing punctuation of a question.
std::string AppendBeforePunct(std::string_view question, std::string_view phrase) {
  std::size_t end = question.size();
  while (end > 0 && (question[end - 1] == '?' || question[end - 1] == '.' ||
                     question[end - 1] == '!' || text::IsSpace(question[end - 1]))) {
    --end;
  }
  return std::string(question.substr(0, end)) + " " + std::string(phrase) +
         std::string(text::TrimSpace(question.substr(end)));
}

std::optional<std::string> ApplyPattern(const std::string& question,
                                        const SwapRules::Pattern& p) {
  std::smatch m;
  if (!std::regex_search(question, m, p.re)) return std::nullopt;
  std::string replacement = p.to;
  const std::string matched = m.str(0);
  if (!matched.empty() && !replacement.empty() &&
      std::isupper(static_cast<unsigned char>(matched[0]))) {
    replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
  }
  std::string out = m.prefix().str() + replacement + m.suffix().str();
  if (out == question) return std::nullopt;
  return out;
}

std::string JoinNouns(const std::vector<std::string>& nouns) {
  if (nouns.size() == 1) return nouns[0];
  std::vector<std::string> head(nouns.begin(), nouns.end() - 1);
  return text::Join(head, ", ") + " and " + nouns.back();
}

const std::set<std::string, std::less<>>& ContentStopwords() {
  static const std::set<std::string, std::less<>> kWords = {
      "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with", "from", "and",
      "or", "is", "are", "was", "were", "be", "been", "did", "do", "does", "has", "have",
      "had", "what", "which", "who", "whom", "whose", "when", "where", "why", "how",
      "that", "this", "it", "its", "as", "into", "than", "many", "much", "name", "list",
      "give", "me", "tell", "there", "their", "his", "her", "not", "no", "yes"};
  return kWords;
}

}  // namespace

std::string_view ToString(TestKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "BASE";
}

std::optional<TestKind> ParseTestKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (text::EqualsIgnoreCase(n, name)) return k;
  }
  return std::nullopt;
}

nlohmann::ordered_json TestCase::ToJson() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["base_id"] = base_id;
  j["kind"] = ToString(kind);
  j["turns"] = turns;
  nlohmann::ordered_json e = nlohmann::ordered_json::object();
  if (!expectation.required_keywords.empty() || !expectation.forbidden_keywords.empty()) {
    e["required_keywords"] = expectation.required_keywords;
    e["forbidden_keywords"] = expectation.forbidden_keywords;
  }
  if (expectation.hinted) e["hinted"] = ToString(*expectation.hinted);
  if (!expectation.rule_id.empty()) e["rule_id"] = expectation.rule_id;
  j["expectation"] = e;
  j["provenance"] = provenance;
  return j;
}

TestCase TestCase::FromJson(const json& j) {
  TestCase t;
  t.id = j.at("id").get<std::string>();
  t.base_id = j.at("base_id").get<std::string>();
  auto kind = ParseTestKind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::kParse, "unknown test kind", j.at("kind").dump());
  t.kind = *kind;
  t.turns = j.at("turns").get<std::vector<std::string>>();
  const json e = j.value("expectation", json::object());
  t.expectation.required_keywords = e.value("required_keywords", std::vector<std::string>{});
  t.expectation.forbidden_keywords = e.value("forbidden_keywords", std::vector<std::string>{});
  if (e.contains("hinted")) {
    t.expectation.hinted = ParseAnswerType(e.at("hinted").get<std::string>());
  }
  t.expectation.rule_id = e.value("rule_id", "");
  t.provenance = j.value("provenance", "");
  if (t.turns.empty()) throw Error(ErrorCode::kParse, "test case without turns", t.id);
  return t;
}

bool IsSingleReasoning(const QuestionRecord& record) {
  return CountOperationTags(record.tags.reasoning) <= 1;
}

MftPartition PartitionMft(const std::vector<QuestionRecord>& records) {
  MftPartition out;
  for (const auto& r : records) (IsSingleReasoning(r) ? out.single : out.multiple).push_back(r);
  return out;
}

TestCase MakeBaseCase(const QuestionRecord& record) {
  TestCase t;
  t.id = CaseId(record, TestKind::kBase);
  t.base_id = record.id;
  t.kind = TestKind::kBase;
  t.turns = {record.text};
  return t;
}

std::uint64_t TypoSeed(std::uint64_t battery_seed, std::string_view record_id) {
  return battery_seed ^ Fnv1a64(record_id);
}

TestCase GenInvTypo(const QuestionRecord& record, std::uint64_t battery_seed, double rate) {
  TestCase t;
  t.id = CaseId(record, TestKind::kInvTypo);
  t.base_id = record.id;
  t.kind = TestKind::kInvTypo;
  t.turns = {GenTypo(record.text, TypoSeed(battery_seed, record.id), rate)};
  t.provenance = fmt::format("seed={} rate={}", battery_seed, rate);
  return t;
}

Generated GenInvPara(const QuestionRecord& record, ParaphraseProvider& provider) {
  Generated g;
  auto result = GenParaphrase(record.text, provider);
  if (!result.text) {
    g.skip_reason = result.skip_reason;
    return g;
  }
  TestCase t;
  t.id = CaseId(record, TestKind::kInvPara);
  t.base_id = record.id;
  t.kind = TestKind::kInvPara;
  t.turns = {*result.text};
  t.provenance = result.provider;
  g.test = std::move(t);
  return g;
}

const SwapRules& SwapRules::Default() {
  static const SwapRules kRules = FromJson(LoadResource("swap_rules.json"));
  return kRules;
}

SwapRules SwapRules::FromJson(const json& j) {
  SwapRules out;
  out.version_ = j.value("version", "");
  out.instruction_ = j.value("instruction", "{question}");
  if (out.instruction_.find("{question}") == std::string::npos) {
    throw Error(ErrorCode::kConfiguration, "swap instruction lacks {question}");
  }
  for (const auto& r : j.at("rules")) {
    Rule rule;
    rule.id = r.at("id").get<std::string>();
    for (const auto& tag : r.at("source_tags")) {
      auto t = ParseReasoningType(tag.get<std::string>());
      if (!t || !IsOperationTag(*t)) {
        throw Error(ErrorCode::kConfiguration, "swap rule " + rule.id + ": bad source tag",
                    tag.dump());
      }
      rule.source_tags.insert(*t);
    }
    for (const auto& p : r.value("patterns", json::array())) {
      Pattern pattern;
      pattern.from = p.at("from").get<std::string>();
      pattern.to = p.at("to").get<std::string>();
      try {
        pattern.re = std::regex(pattern.from, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& ex) {
        throw Error(ErrorCode::kConfiguration, "swap rule " + rule.id + ": " + ex.what(),
                    pattern.from);
      }
      rule.patterns.push_back(std::move(pattern));
    }
    rule.append = r.value("append", "");
    const json expect = r.at("expect");
    rule.required = UpperAll(expect.value("required", std::vector<std::string>{}));
    rule.forbidden = UpperAll(expect.value("forbidden", std::vector<std::string>{}));
    if (rule.required.empty() && rule.forbidden.empty()) {
      throw Error(ErrorCode::kConfiguration, "swap rule " + rule.id + " expects nothing");
    }
    if (rule.patterns.empty() && rule.append.empty()) {
      throw Error(ErrorCode::kConfiguration, "swap rule " + rule.id + " changes nothing");
    }
    out.rules_.push_back(std::move(rule));
  }
  return out;
}

std::string SwapRules::RenderInstruction(std::string_view question) const {
  std::string out = instruction_;
  out.replace(out.find("{question}"), 10, question);
  return out;
}

Generated GenDirSwap(const QuestionRecord& record, const SwapRules& rules) {
  Generated g;
  if (CountOperationTags(record.tags.reasoning) == 0) {
    g.skip_reason = "no operation tag";
    return g;
  }
  for (const auto& rule : rules.rules()) {
    bool applies = std::any_of(rule.source_tags.begin(), rule.source_tags.end(),
                               [&](ReasoningType t) { return record.tags.reasoning.count(t); });
    if (!applies) continue;
    std::optional<std::string> swapped;
    if (!rule.append.empty()) {
      swapped = AppendBeforePunct(record.text, rule.append);
    } else {
      for (const auto& p : rule.patterns) {
        if ((swapped = ApplyPattern(record.text, p))) break;
      }
    }
    if (!swapped) continue;
    TestCase t;
    t.id = CaseId(record, TestKind::kDirSwap);
    t.base_id = record.id;
    t.kind = TestKind::kDirSwap;
    t.turns = {rules.RenderInstruction(*swapped)};
    t.expectation.required_keywords = rule.required;
    t.expectation.forbidden_keywords = rule.forbidden;
    t.expectation.rule_id = rule.id;
    t.provenance = "swap_rules " + rules.version();
    g.test = std::move(t);
    return g;
  }
  g.skip_reason = "no applicable swap rule";
  return g;
}

const HintTemplates& HintTemplates::Default() {
  static const HintTemplates kTemplates = FromJson(LoadResource("hint_templates.json"));
  return kTemplates;
}

HintTemplates::HintTemplates(std::string templ, std::map<AnswerType, std::string> hints)
    : template_(std::move(templ)), hints_(std::move(hints)) {
  if (template_.find("{hint}") == std::string::npos) {
    throw Error(ErrorCode::kConfiguration, "hint template has no {hint} placeholder", template_);
  }
}

HintTemplates HintTemplates::FromJson(const json& j) {
  std::map<AnswerType, std::string> hints;
  for (const auto& [name, hint] : j.at("hints").items()) {
    auto type = ParseAnswerType(name);
    if (!type) throw Error(ErrorCode::kConfiguration, "unknown answer type in hints", name);
    hints[*type] = hint.get<std::string>();
  }
  HintTemplates out(j.at("template").get<std::string>(), std::move(hints));
  out.version_ = j.value("version", "");
  return out;
}

std::string HintTemplates::Render(AnswerType type) const {
  if (type == AnswerType::kUna) {
    throw Error(ErrorCode::kPrecondition, "no hint for unanswerable questions");
  }
  auto it = hints_.find(type);
  if (it == hints_.end()) {
    throw Error(ErrorCode::kConfiguration, "no hint configured", std::string(ToString(type)));
  }
  std::string out = template_;
  out.replace(out.find("{hint}"), 6, it->second);
  return out;
}

TestCase GenDirHint(const QuestionRecord& record, const HintTemplates& templates) {
  TestCase t;
  t.id = CaseId(record, TestKind::kDirHint);
  t.base_id = record.id;
  t.kind = TestKind::kDirHint;
  std::string question(text::TrimSpace(record.text));
  t.turns = {question + templates.Render(record.tags.answer_type)};
  t.expectation.hinted = record.tags.answer_type;
  t.provenance = "hint_templates " + templates.version();
  return t;
}

std::vector<std::string> KeyNouns(std::string_view question, const NerProvider* ner) {
  static const RuleNer kRuleNer;
  std::vector<EntityMention> mentions;
  if (ner) {
    try {
      mentions = ner->Recognize(question);
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::kUnavailable) throw;
      mentions = kRuleNer.Recognize(question);
    }
  } else {
    mentions = kRuleNer.Recognize(question);
  }
  std::vector<std::string> nouns;
  for (const auto& m : mentions) {
    std::string t(text::TrimSpace(m.text));
    if (t.empty() || ContentStopwords().count(text::ToLower(t))) continue;
    if (std::find(nouns.begin(), nouns.end(), t) == nouns.end()) nouns.push_back(std::move(t));
  }
  if (!nouns.empty()) return nouns;
  std::string longest;
  for (const auto& w : text::Words(question)) {
    if (ContentStopwords().count(text::ToLower(w))) continue;
    if (text::DecodeUtf8(w).size() > text::DecodeUtf8(longest).size()) longest = w;
  }
  if (!longest.empty()) nouns.push_back(longest);
  return nouns;
}

TestCase GenDirCot(const QuestionRecord& record, const NerProvider* ner) {
  TestCase t;
  t.id = CaseId(record, TestKind::kDirCot);
  t.base_id = record.id;
  t.kind = TestKind::kDirCot;
  auto nouns = KeyNouns(record.text, ner);
  std::string topic = nouns.empty() ? "the question \"" + record.text + "\"" : JoinNouns(nouns);
  t.turns = {"Please provide key facts about " + topic + ".", record.text};
  t.provenance = ner ? ner->id() : "rule-ner";
  return t;
}

std::string ExtractQueryText(std::string_view output) {
  std::size_t fence = output.find("```");
  if (fence != std::string_view::npos) {
    std::size_t body = output.find('\n', fence);
    if (body != std::string_view::npos) {
      ++body;
      std::size_t close = output.find("```", body);
      return std::string(output.substr(body, close == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : close - body));
    }
  }
  auto spans = text::WordSpans(output);
  for (const auto& s : spans) {
    std::string w = text::ToUpperAscii(s.View(output));
    if (w == "SELECT" || w == "ASK" || w == "PREFIX" || w == "CONSTRUCT" ||
        w == "DESCRIBE" || w == "BASE") {
      return std::string(output.substr(s.begin));
    }
  }
  return std::string(output);
}

namespace {

bool ContainsKeywordIn(const std::vector<sparql::Token>& tokens, std::string_view keyword) {
  std::vector<std::string> parts;
  for (const auto& w : text::Words(keyword)) parts.push_back(text::ToUpperAscii(w));
  if (parts.empty()) return false;
  for (std::size_t i = 0; i + parts.size() <= tokens.size(); ++i) {
    bool all = true;
    for (std::size_t k = 0; k < parts.size() && all; ++k) {
      all = tokens[i + k].IsName(parts[k]);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

bool ContainsKeyword(std::string_view output, std::string_view keyword) {
  return ContainsKeywordIn(sparql::TokenizeLenient(ExtractQueryText(output)), keyword);
}

bool CheckSparqlExpectation(std::string_view output, const std::set<std::string>& expected) {
  if (expected.empty()) {
    throw Error(ErrorCode::kPrecondition, "expectation must name at least one keyword");
  }
  if (text::TrimSpace(output).empty()) return false;
  auto tokens = sparql::TokenizeLenient(ExtractQueryText(output));
  return std::all_of(expected.begin(), expected.end(),
                     [&](const std::string& k) { return ContainsKeywordIn(tokens, k); });
}

bool CheckSparqlExpectation(std::string_view output, const Expectation& expectation) {
  if (expectation.required_keywords.empty() && expectation.forbidden_keywords.empty()) {
    throw Error(ErrorCode::kPrecondition, "expectation must name at least one keyword");
  }
  if (text::TrimSpace(output).empty()) return false;
  auto tokens = sparql::TokenizeLenient(ExtractQueryText(output));
  for (const auto& k : expectation.required_keywords) {
    if (!ContainsKeywordIn(tokens, k)) return false;
  }
  for (const auto& k : expectation.forbidden_keywords) {
    if (ContainsKeywordIn(tokens, k)) return false;
  }
  return true;
}

std::string_view ToString(StabilityClass c) {
  static constexpr std::array<std::string_view, 8> kNames = {"CCC", "CCW", "CWC", "CWW",
                                                             "WCC", "WCW", "WWC", "WWW"};
  return kNames[static_cast<std::size_t>(c)];
}

std::optional<StabilityClass> ParseStabilityClass(std::string_view name) {
  for (auto c : kAllStabilityClasses) {
    if (ToString(c) == name) return c;
  }
  return std::nullopt;
}

StabilityClass ClassifyStability(const std::array<bool, 3>& outcomes) {
  // C is bit 0 of each position, so CCC = 0 and WWW = 7 in enum order.
  int index = (outcomes[0] ? 0 : 4) + (outcomes[1] ? 0 : 2) + (outcomes[2] ? 0 : 1);
  return static_cast<StabilityClass>(index);
}

StabilityClass ClassifyStability(const std::vector<bool>& outcomes) {
  if (outcomes.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("stability needs 3 outcomes, got {}", outcomes.size()));
  }
  return ClassifyStability(std::array<bool, 3>{outcomes[0], outcomes[1], outcomes[2]});
}

bool IsStable(StabilityClass c) {
  return c == StabilityClass::kCCC || c == StabilityClass::kWWW;
}

double StabilityRate(const StabilityCounts& counts) {
  std::size_t total = 0;
  std::size_t stable = 0;
  for (const auto& [c, n] : counts) {
    total += n;
    if (IsStable(c)) stable += n;
  }
  if (total == 0) throw Error(ErrorCode::kInvalidArgument, "stability counts are all zero");
  return std::round(10000.0 * static_cast<double>(stable) / static_cast<double>(total)) / 100.0;
}

}  // namespace kbqa
