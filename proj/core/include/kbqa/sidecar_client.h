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

#ifndef KBQA_SIDECAR_CLIENT_H_
#define KBQA_SIDECAR_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/answer_type.h"
#include "kbqa/candidates.h"
#include "kbqa/embedding.h"

namespace kbqa {

struct SidecarOptions {
  std::string base_url = "http://127.0.0.1:8765";
  std::chrono::milliseconds timeout{30000};
};

inline constexpr std::size_t kSidecarMaxBatch = 256;

// Client for the optional NLP service:
//   POST /parse {text, lang}   -> {phrases: [{text, label, char_span: [b, e]}]}
//   POST /embed {texts, lang}  -> {vectors: [[...], ...]}
//   POST /ner   {text}         -> {entities: [{text, type}]}
//   GET  /healthz              -> {status: "ready", ...}
// char_span offsets count code points. Connection failures, 5xx answers
// and schema-invalid bodies raise Error(kUnavailable); 4xx raise
// Error(kInvalidArgument).
class SidecarClient {
 public:
  explicit SidecarClient(SidecarOptions options = {});

  nlohmann::json Health() const;
  bool Ready() const;
  std::vector<PhraseSpan> Parse(std::string_view text, std::string_view lang) const;
  // Batches larger than kSidecarMaxBatch are split.
  std::vector<std::vector<double>> Embed(const std::vector<std::string>& texts,
                                         std::string_view lang) const;
  std::vector<EntityMention> Ner(std::string_view text) const;

  const SidecarOptions& options() const { return options_; }

 private:
  nlohmann::json Post(const std::string& path, const nlohmann::json& body) const;

  SidecarOptions options_;
};

class SidecarParser : public PhraseParser {
 public:
  explicit SidecarParser(const SidecarClient& client) : client_(client) {}
  std::vector<PhraseSpan> Parse(std::string_view text, std::string_view lang) const override {
    return client_.Parse(text, lang);
  }
  std::string id() const override { return "sidecar-parse"; }

 private:
  const SidecarClient& client_;
};

class SidecarEmbedder : public Embedder {
 public:
  explicit SidecarEmbedder(const SidecarClient& client) : client_(client) {}
  std::vector<Embedding> Embed(const std::vector<std::string>& texts,
                               std::string_view lang) const override;
  std::string id() const override { return "sidecar-embed"; }

 private:
  const SidecarClient& client_;
};

class SidecarNer : public NerProvider {
 public:
  explicit SidecarNer(const SidecarClient& client) : client_(client) {}
  std::vector<EntityMention> Recognize(std::string_view text) const override {
    return client_.Ner(text);
  }
  std::string id() const override { return "sidecar-ner"; }

 private:
  const SidecarClient& client_;
};

}  // namespace kbqa

#endif  // KBQA_SIDECAR_CLIENT_H_
