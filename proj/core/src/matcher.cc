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

#include "kbqa/matcher.h"

#include <algorithm>

#include <fmt/format.h>

#include "kbqa/error.h"
#include "kbqa/text.h"
#include "kbqa/typed_values.h"

namespace kbqa {
namespace {

const TrigramEmbedder& Trigram() {
  static const TrigramEmbedder kTrigram;
  return kTrigram;
}

std::vector<std::string> RawReferenceStrings(const std::vector<ReferenceAnswer>& refs) {
  std::vector<std::string> out;
  for (const auto& r : refs) {
    out.push_back(r.canonical);
    for (const auto& a : r.aliases) out.push_back(a);
  }
  return out;
}

MatchResult Verdict(bool correct, std::optional<std::pair<std::string, std::string>> matched) {
  MatchResult r;
  r.correct = correct;
  r.method = correct ? MatchMethod::kExact : MatchMethod::kNone;
  if (correct) r.matched = std::move(matched);
  return r;
}

std::string FormatNumber(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view ToString(MatchMethod method) {
  switch (method) {
    case MatchMethod::kExact: return "exact";
    case MatchMethod::kFuzzy: return "fuzzy";
    case MatchMethod::kNone: return "none";
  }
  return "none";
}

void MatchConfig::Validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kConfiguration, fmt::format("tau {} outside [0, 1]", tau));
  }
}

std::vector<std::string> ReferenceStrings(const std::vector<ReferenceAnswer>& refs) {
  std::vector<std::string> out;
  for (const auto& raw : RawReferenceStrings(refs)) {
    std::string norm = NormalizeCandidate(raw);
    if (!norm.empty() && std::find(out.begin(), out.end(), norm) == out.end()) {
      out.push_back(std::move(norm));
    }
  }
  return out;
}

MatchResult ExactMatch(const CandidatePool& pool, const std::vector<ReferenceAnswer>& refs) {
  const auto references = ReferenceStrings(refs);
  for (const auto& c : pool.phrases) {
    for (const auto& r : references) {
      if (c == r) {
        MatchResult m;
        m.correct = true;
        m.method = MatchMethod::kExact;
        m.best_similarity = 1.0;
        m.matched = std::make_pair(c, r);
        return m;
      }
    }
  }
  return {};
}

MatchResult FuzzyMatch(const CandidatePool& pool, const std::vector<ReferenceAnswer>& refs,
                       const MatchConfig& cfg, std::string_view lang) {
  cfg.Validate();
  const auto references = ReferenceStrings(refs);
  MatchResult result;
  if (pool.phrases.empty() || references.empty()) return result;
  result.method = MatchMethod::kFuzzy;

  std::vector<std::string> texts = pool.phrases;
  texts.insert(texts.end(), references.begin(), references.end());
  std::vector<Embedding> vectors;
  const Embedder* embedder = cfg.embedder ? cfg.embedder : &Trigram();
  try {
    vectors = embedder->Embed(texts, lang);
    if (vectors.size() != texts.size()) {
      throw Error(ErrorCode::kUnavailable, "embedder returned wrong vector count");
    }
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::kUnavailable) throw;
    vectors = Trigram().Embed(texts, lang);
    result.embedder_fallback = true;
  }
  if (!cfg.embedder) result.embedder_fallback = true;

  double best = -1.0;
  std::pair<std::string, std::string> best_pair;
  const std::size_t n = pool.phrases.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < references.size(); ++j) {
      double s = pool.phrases[i] == references[j] ? 1.0 : Similarity(vectors[i], vectors[n + j]);
      if (s > best) {
        best = s;
        best_pair = {pool.phrases[i], references[j]};
      }
    }
  }
  result.best_similarity = best;
  result.correct = best >= cfg.tau;
  if (result.correct) result.matched = std::move(best_pair);
  return result;
}

std::optional<MatchResult> TypedMatch(std::string_view output,
                                      const std::vector<ReferenceAnswer>& refs,
                                      AnswerType type) {
  const auto raw = RawReferenceStrings(refs);
  switch (type) {
    case AnswerType::kNum: {
      std::vector<std::pair<double, std::string>> gold;
      for (const auto& r : raw) {
        if (auto v = ParseNumberLoose(r)) gold.emplace_back(*v, r);
      }
      if (gold.empty()) return std::nullopt;
      for (double v : ExtractNumbers(output)) {
        for (const auto& [g, s] : gold) {
          if (NumbersEqual(v, g)) return Verdict(true, std::make_pair(FormatNumber(v), s));
        }
      }
      return Verdict(false, std::nullopt);
    }
    case AnswerType::kDate: {
      std::vector<std::pair<DateValue, std::string>> gold;
      for (const auto& r : raw) {
        if (auto d = ParseDate(r)) gold.emplace_back(*d, r);
      }
      if (gold.empty()) return std::nullopt;
      for (const auto& d : ExtractDates(output)) {
        for (const auto& [g, s] : gold) {
          if (d.Satisfies(g)) return Verdict(true, std::make_pair(d.ToIso(), s));
        }
      }
      return Verdict(false, std::nullopt);
    }
    case AnswerType::kBoolean: {
      std::optional<bool> gold;
      std::string gold_text;
      for (const auto& r : raw) {
        if ((gold = ParseBooleanLiteral(r))) {
          gold_text = r;
          break;
        }
      }
      if (!gold) return std::nullopt;
      auto polarity = DetectPolarity(output);
      if (!polarity) return Verdict(false, std::nullopt);
      return Verdict(*polarity == *gold,
                     std::make_pair(std::string(*polarity ? "yes" : "no"), gold_text));
    }
    default:
      return std::nullopt;
  }
}

CandidatePool BuildPool(std::string_view output, const MatchConfig& cfg, std::string_view lang) {
  if (cfg.parser) {
    try {
      return ExtractCandidates(output, cfg.parser->Parse(output, lang));
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::kUnavailable) throw;
    }
  }
  return ExtractFallbackCandidates(output);
}

namespace {

bool IsTypedType(AnswerType t) {
  return t == AnswerType::kNum || t == AnswerType::kDate || t == AnswerType::kBoolean;
}

MatchResult MatchAgainst(const QuestionRecord& record, std::string_view output,
                         const CandidatePool& pool, const std::vector<ReferenceAnswer>& refs,
                         const MatchConfig& cfg) {
  MatchResult exact = ExactMatch(pool, refs);
  if (exact.correct) return exact;
  const AnswerType type = record.tags.answer_type;
  if (cfg.fuzzy_excluded_types.count(type)) {
    if (IsTypedType(type)) {
      if (auto typed = TypedMatch(output, refs, type)) return *typed;
    }
    return exact;
  }
  return FuzzyMatch(pool, refs, cfg, record.language().code());
}

}  // namespace

MatchResult EvaluateAnswer(const QuestionRecord& record, std::string_view output,
                           const MatchConfig& cfg) {
  cfg.Validate();
  if (text::TrimSpace(output).empty() || record.gold.empty()) return {};
  CandidatePool pool = BuildPool(output, cfg, record.language().code());
  return MatchAgainst(record, output, pool, record.gold, cfg);
}

std::size_t CountMatchedGold(const QuestionRecord& record, std::string_view output,
                             const MatchConfig& cfg) {
  cfg.Validate();
  if (text::TrimSpace(output).empty()) return 0;
  CandidatePool pool = BuildPool(output, cfg, record.language().code());
  std::size_t matched = 0;
  for (const auto& g : record.gold) {
    if (MatchAgainst(record, output, pool, {g}, cfg).correct) ++matched;
  }
  return matched;
}

}  // namespace kbqa
