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

#include "kbqa/aliases.h"

#include <algorithm>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

using nlohmann::json;

void AddUnique(std::vector<std::string>& out, const std::string& s) {
  if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

bool LanguageSelected(const std::vector<std::string>& languages, const std::string& lang) {
  return languages.empty() ||
         std::find(languages.begin(), languages.end(), lang) != languages.end();
}

std::string JsonLine(const AliasEntry& e) {
  nlohmann::ordered_json j;
  j["entity_id"] = e.entity_id;
  j["lang"] = e.lang;
  j["labels"] = e.labels;
  return j.dump();
}

}  // namespace

bool IsWikidataQid(std::string_view id) {
  if (id.size() < 2 || id[0] != 'Q') return false;
  return std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<AliasEntry> ReadAliasEntries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open alias file " + path.string(), path.string());
  std::vector<AliasEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::TrimSpace(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("entity_id")) {
      // A torn final line from an interrupted writer is tolerated.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(ErrorCode::kParse, "malformed alias line " + std::to_string(line_no),
                  std::to_string(line_no));
    }
    AliasEntry e;
    e.entity_id = j.at("entity_id").get<std::string>();
    e.lang = j.value("lang", "");
    for (const auto& l : j.value("labels", json::array())) e.labels.push_back(l.get<std::string>());
    out.push_back(std::move(e));
  }
  return out;
}

OfflineAliasFile::OfflineAliasFile(const std::filesystem::path& path,
                                   std::vector<std::string> languages)
    : path_(path) {
  for (auto& e : ReadAliasEntries(path)) {
    if (!LanguageSelected(languages, e.lang)) continue;
    auto& labels = labels_[e.entity_id];
    for (const auto& l : e.labels) AddUnique(labels, l);
  }
}

std::vector<std::string> OfflineAliasFile::Labels(const std::string& entity_id) const {
  auto it = labels_.find(entity_id);
  return it == labels_.end() ? std::vector<std::string>{} : it->second;
}

WikidataAliasClient::WikidataAliasClient(WikidataClientOptions options)
    : options_(std::move(options)) {
  if (options_.cache_path.empty() || !std::filesystem::exists(options_.cache_path)) return;
  for (auto& e : ReadAliasEntries(options_.cache_path)) {
    auto& labels = cache_[e.entity_id];
    if (!LanguageSelected(options_.languages, e.lang)) continue;
    for (const auto& l : e.labels) AddUnique(labels, l);
  }
}

std::size_t WikidataAliasClient::remote_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return remote_calls_;
}

std::vector<AliasEntry> WikidataAliasClient::Fetch(const std::string& qid) const {
  httplib::Client client(options_.base_url);
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  httplib::Params params = {{"action", "wbgetentities"},
                            {"ids", qid},
                            {"props", "labels|aliases"},
                            {"languages", text::Join(options_.languages, "|")},
                            {"format", "json"}};
  auto res = client.Get(options_.api_path, params, httplib::Headers{});
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                "alias source unreachable: " + httplib::to_string(res.error()), qid);
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kUnavailable, "alias source status " + std::to_string(res->status),
                qid);
  }
  json body = json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("entities")) {
    throw Error(ErrorCode::kUnavailable, "alias source returned malformed body", qid);
  }
  std::map<std::string, AliasEntry> by_lang;
  const json entity = body.at("entities").value(qid, json::object());
  const json labels = entity.value("labels", json::object());
  for (const auto& [lang, label] : labels.items()) {
    auto& e = by_lang[lang];
    AddUnique(e.labels, label.value("value", ""));
  }
  const json aliases = entity.value("aliases", json::object());
  for (const auto& [lang, list] : aliases.items()) {
    auto& e = by_lang[lang];
    for (const auto& a : list) AddUnique(e.labels, a.value("value", ""));
  }
  std::vector<AliasEntry> out;
  for (auto& [lang, e] : by_lang) {
    e.entity_id = qid;
    e.lang = lang;
    out.push_back(std::move(e));
  }
  if (out.empty()) out.push_back({qid, "", {}});  // negative entry, not fetched again
  return out;
}

void WikidataAliasClient::Store(const std::vector<AliasEntry>& entries) const {
  if (options_.cache_path.empty()) return;
  std::ofstream out(options_.cache_path, std::ios::app);
  if (!out) {
    spdlog::warn("alias cache {} not writable", options_.cache_path.string());
    return;
  }
  for (const auto& e : entries) out << JsonLine(e) << '\n';
}

std::vector<std::string> WikidataAliasClient::Labels(const std::string& entity_id) const {
  if (!IsWikidataQid(entity_id)) return {};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(entity_id);
    if (it != cache_.end()) return it->second;
    ++remote_calls_;
  }
  auto entries = Fetch(entity_id);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.try_emplace(entity_id);
  if (inserted) {
    for (const auto& e : entries) {
      for (const auto& l : e.labels) AddUnique(it->second, l);
    }
    Store(entries);
  }
  return it->second;
}

ExpansionResult ExpandReferences(const std::vector<ReferenceAnswer>& gold,
                                 const AliasSource* source) {
  ExpansionResult result;
  result.references = gold;
  for (auto& ref : result.references) {
    std::vector<std::string> aliases{ref.canonical};
    for (const auto& a : ref.aliases) AddUnique(aliases, a);
    if (ref.entity_id && source) {
      try {
        for (const auto& l : source->Labels(*ref.entity_id)) AddUnique(aliases, l);
      } catch (const Error& ex) {
        if (ex.code() != ErrorCode::kUnavailable) throw;
        spdlog::warn("alias expansion skipped for {}: {}", *ref.entity_id, ex.what());
        result.unexpanded = true;
      }
    }
    if (!ref.entity_id && ref.aliases.empty()) continue;
    ref.aliases = std::move(aliases);
  }
  return result;
}

void ExpandRecord(QuestionRecord& record, const AliasSource* source) {
  auto result = ExpandReferences(record.gold, source);
  record.gold = std::move(result.references);
  if (result.unexpanded) record.AddFlag(kFlagUnexpanded);
}

}  // namespace kbqa
