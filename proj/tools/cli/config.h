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

#ifndef KBQA_CLI_CONFIG_H_
#define KBQA_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/gateway.h"

namespace kbqa::cli {

// Run configuration, read from an INI-style file:
//
//   seed = 7
//   store = store.jsonl
//   cache = cache.jsonl
//   runs = runs.jsonl
//   tau = 0.78
//   parallelism = 4
//   battery = base
//   paraphrases = paraphrases.jsonl   ; or paraphrase_model = <model id>
//   aliases = aliases.jsonl
//   sidecar = http://127.0.0.1:8765
//   rate_per_second = 10
//
//   [model.chatgpt]
//   endpoint = https://api.example.com/v1/chat/completions
//   auth_env = CHATGPT_API_KEY
//   temperature = 0
//   max_tokens = 256
//   request_template = template.json
//   response_path = /choices/0/message/content
//
//   [model.mock]
//   mock_script = mock_script.json
//
// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::vector<ModelSpec> models;
  std::filesystem::path store_path;
  std::filesystem::path cache_path;
  std::filesystem::path runs_path;
  std::filesystem::path paraphrase_path;
  std::string paraphrase_model;
  std::filesystem::path alias_path;
  std::string sidecar_url;
  double tau = 0.78;
  std::vector<std::string> batteries = {"base"};
  std::size_t parallelism = 4;
  double rate_per_second = 0.0;  // 0 disables the limiter
  std::uint64_t seed = 0;

  nlohmann::ordered_json ToJson() const;
  // SHA-256 of the canonical JSON form.
  std::string Hash() const;
  const ModelSpec* FindModel(const std::string& id) const;
};

// Throws Error(kConfiguration) for unreadable files, unknown keys and
// invalid values.
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace kbqa::cli

#endif  // KBQA_CLI_CONFIG_H_
