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

#include "kbqa/paraphrase.h"

#include <fstream>

#include <spdlog/spdlog.h>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {

FixtureParaphraser::FixtureParaphraser(std::map<std::string, std::string> table)
    : table_(table.begin(), table.end()) {}

FixtureParaphraser FixtureParaphraser::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string(), path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::map<std::string, std::string> table;
  auto whole = nlohmann::json::parse(content, nullptr, false);
  if (!whole.is_discarded() && whole.is_object() && !whole.contains("question")) {
    for (const auto& [q, p] : whole.items()) table[q] = p.get<std::string>();
    return FixtureParaphraser(std::move(table));
  }
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string_view line = text::TrimSpace(std::string_view(content).substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("question") || !j.contains("paraphrase")) {
      throw Error(ErrorCode::kParse,
                  path.string() + ": malformed paraphrase line " + std::to_string(line_no),
                  std::to_string(line_no));
    }
    table[j.at("question").get<std::string>()] = j.at("paraphrase").get<std::string>();
  }
  return FixtureParaphraser(std::move(table));
}

std::string FixtureParaphraser::Paraphrase(std::string_view question, int) {
  auto it = table_.find(question);
  if (it == table_.end()) {
    throw Error(ErrorCode::kUnavailable, "no fixture paraphrase", std::string(question));
  }
  return it->second;
}

ModelParaphraser::ModelParaphraser(Gateway& gateway, ModelSpec spec)
    : gateway_(gateway), spec_(std::move(spec)) {}

std::string ModelParaphraser::Prompt(std::string_view question, int attempt) {
  std::string prompt =
      "Rewrite the following question so that it keeps exactly the same meaning. "
      "Reply with the rewritten question only.";
  if (attempt > 0) prompt += " Use different wording from the original.";
  return prompt + "\nQuestion: " + std::string(question);
}

std::string ModelParaphraser::Paraphrase(std::string_view question, int attempt) {
  try {
    auto record = gateway_.Ask(spec_, {Prompt(question, attempt)});
    return std::string(text::TrimSpace(record.output));
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::kTransport) {
      throw Error(ErrorCode::kUnavailable, ex.what(), ex.detail());
    }
    throw;
  }
}

ParaphraseResult GenParaphrase(std::string_view question, ParaphraseProvider& provider) {
  ParaphraseResult result;
  result.provider = provider.id();
  const std::string original = text::NormalizeAnswer(question);
  for (int attempt = 0; attempt < 2; ++attempt) {
    ++result.attempts;
    std::string candidate;
    try {
      candidate = provider.Paraphrase(question, attempt);
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::kUnavailable) throw;
      result.skip_reason = std::string("provider failure: ") + ex.what();
      spdlog::info("paraphrase skipped: {}", result.skip_reason);
      return result;
    }
    std::string norm = text::NormalizeAnswer(candidate);
    if (!norm.empty() && norm != original) {
      result.text = std::move(candidate);
      return result;
    }
    result.skip_reason = norm.empty() ? "provider returned empty text"
                                      : "provider returned the input unchanged";
  }
  spdlog::info("paraphrase skipped after retry: {}", result.skip_reason);
  return result;
}

}  // namespace kbqa
