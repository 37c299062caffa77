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

#ifndef KBQA_ALIASES_H_
#define KBQA_ALIASES_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kbqa/record.h"

namespace kbqa {

// Multilingual labels and aliases for KB entities.
class AliasSource {
 public:
  virtual ~AliasSource() = default;
  // All labels across the configured languages; empty when the entity is
  // unknown. Throws Error(kUnavailable) when the source cannot be reached.
  virtual std::vector<std::string> Labels(const std::string& entity_id) const = 0;
  virtual std::string id() const = 0;
};

// One alias cache line: {"entity_id": "Q60", "lang": "en", "labels": [...]}.
struct AliasEntry {
  std::string entity_id;
  std::string lang;
  std::vector<std::string> labels;
};

// Offline alias file in the cache format. `languages` restricts which
// lines are used; empty means all.
class OfflineAliasFile : public AliasSource {
 public:
  explicit OfflineAliasFile(const std::filesystem::path& path,
                            std::vector<std::string> languages = {});
  std::vector<std::string> Labels(const std::string& entity_id) const override;
  std::string id() const override { return "offline:" + path_.filename().string(); }

 private:
  std::filesystem::path path_;
  std::map<std::string, std::vector<std::string>> labels_;
};

struct WikidataClientOptions {
  std::string base_url = "https://www.wikidata.org";
  std::string api_path = "/w/api.php";
  std::vector<std::string> languages = {"en"};
  std::filesystem::path cache_path;  // empty disables the disk cache
  std::chrono::milliseconds timeout{10000};
};

// wbgetentities client with an append-only JSONL cache. Only Wikidata QIDs
// are looked up; other identifiers (Freebase MIDs, DBpedia URIs) have no
// remote aliases.
class WikidataAliasClient : public AliasSource {
 public:
  explicit WikidataAliasClient(WikidataClientOptions options);
  std::vector<std::string> Labels(const std::string& entity_id) const override;
  std::string id() const override { return "wikidata"; }
  std::size_t remote_calls() const;

 private:
  std::vector<AliasEntry> Fetch(const std::string& qid) const;
  void Store(const std::vector<AliasEntry>& entries) const;

  WikidataClientOptions options_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<std::string>> cache_;
  mutable std::size_t remote_calls_ = 0;
};

bool IsWikidataQid(std::string_view id);

struct ExpansionResult {
  std::vector<ReferenceAnswer> references;
  bool unexpanded = false;  // the source was unreachable for some entity
};

// Adds every label of each entity-backed reference to its aliases. The
// canonical is always kept first; references without an entity id are left
// untouched apart from the canonical being present when aliases exist.
ExpansionResult ExpandReferences(const std::vector<ReferenceAnswer>& gold,
                                 const AliasSource* source);

// Expands a record in place and sets the "unexpanded" flag when needed.
void ExpandRecord(QuestionRecord& record, const AliasSource* source);

std::vector<AliasEntry> ReadAliasEntries(const std::filesystem::path& path);

}  // namespace kbqa

#endif  // KBQA_ALIASES_H_
