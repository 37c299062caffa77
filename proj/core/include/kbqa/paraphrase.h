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

#ifndef KBQA_PARAPHRASE_H_
#define KBQA_PARAPHRASE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "kbqa/gateway.h"

namespace kbqa {

// Produces a semantically equivalent rewording. `attempt` is 0 for the first
// request and 1 for the retry after a rejected output. Throws
// Error(kUnavailable) when the provider cannot answer.
class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual std::string Paraphrase(std::string_view question, int attempt) = 0;
  virtual std::string id() const = 0;
};

// Precomputed paraphrases: JSONL {"question": q, "paraphrase": p} or a JSON
// object {q: p}.
class FixtureParaphraser : public ParaphraseProvider {
 public:
  explicit FixtureParaphraser(std::map<std::string, std::string> table);
  static FixtureParaphraser FromFile(const std::filesystem::path& path);
  std::string Paraphrase(std::string_view question, int attempt) override;
  std::string id() const override { return "fixture"; }

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

// Asks a model through the gateway. The retry uses a stricter instruction,
// so it is a distinct cache entry.
class ModelParaphraser : public ParaphraseProvider {
 public:
  ModelParaphraser(Gateway& gateway, ModelSpec spec);
  std::string Paraphrase(std::string_view question, int attempt) override;
  std::string id() const override { return "model:" + spec_.model_id; }

  static std::string Prompt(std::string_view question, int attempt);

 private:
  Gateway& gateway_;
  ModelSpec spec_;
};

struct ParaphraseResult {
  std::optional<std::string> text;  // absent when skipped
  std::string provider;
  int attempts = 0;
  std::string skip_reason;
};

// Rejects outputs that normalize to the input (or to nothing), retries
// once, then gives up with a reason. Never falls back to the original.
ParaphraseResult GenParaphrase(std::string_view question, ParaphraseProvider& provider);

}  // namespace kbqa

#endif  // KBQA_PARAPHRASE_H_
