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

#ifndef KBQA_ANSWER_TYPE_H_
#define KBQA_ANSWER_TYPE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbqa/tags.h"
#include "kbqa/text.h"

namespace kbqa {

struct EntityMention {
  std::string text;
  AnswerType type = AnswerType::kMisc;  // one of PER, LOC, ORG, MISC
  text::Span span;
};

// Named-entity typing used for answer types and key-noun extraction.
// Implementations throw Error(kUnavailable) when the backing service is
// down.
class NerProvider {
 public:
  virtual ~NerProvider() = default;
  virtual std::vector<EntityMention> Recognize(std::string_view text) const = 0;
  virtual std::string id() const = 0;
};

// Deterministic rule-based recognizer: capitalized spans typed by
// organization/location cue words, a small place gazetteer, honorifics and
// given names. It is the built-in fallback when no model-backed NER is
// configured.
class RuleNer : public NerProvider {
 public:
  std::vector<EntityMention> Recognize(std::string_view text) const override;
  std::string id() const override { return "rule-ner"; }
  // Types a whole phrase (an answer string) rather than scanning a sentence.
  AnswerType TypePhrase(std::string_view phrase) const;
};

struct NativeAnswerTag {
  std::string dataset_id;
  std::string tag;
};

struct AnswerTypeResult {
  AnswerType type = AnswerType::kMisc;
  bool low_confidence = false;
  // Which rule decided: "native", "boolean", "number", "date", "why", "ner",
  // "default".
  std::string rule;
};

// Answer-type labeling. A native dataset tag with a mapping wins; otherwise
// the cascade Boolean > NUM > DATE > WHY > NER runs, first hit wins. When no
// rule fires and `ner` is null or unavailable the result is MISC flagged
// low-confidence. UNA is only ever produced from native tags.
AnswerTypeResult ClassifyAnswerType(std::string_view question,
                                    const std::vector<std::string>& gold_answers,
                                    const std::optional<NativeAnswerTag>& native_tag,
                                    const NerProvider* ner);

}  // namespace kbqa

#endif  // KBQA_ANSWER_TYPE_H_
