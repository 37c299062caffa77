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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>

#include "kbqa/error.h"
#include "test_support.h"

namespace kbqa {
namespace {

using testing::Fixture;

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(OfflineAliases, NewYorkCarriesItsNicknames) {
  OfflineAliasFile source(Fixture("aliases/q60.jsonl"));
  auto result = ExpandReferences({{"New York City", "Q60", {}}}, &source);
  ASSERT_EQ(result.references.size(), 1u);
  const auto& aliases = result.references[0].aliases;
  EXPECT_TRUE(Contains(aliases, "NYC"));
  EXPECT_TRUE(Contains(aliases, "the Big Apple"));
  EXPECT_EQ(aliases.front(), "New York City");
  EXPECT_FALSE(result.unexpanded);
}

TEST(OfflineAliases, LanguageSelection) {
  OfflineAliasFile en(Fixture("aliases/q60.jsonl"), {"en"});
  OfflineAliasFile all(Fixture("aliases/q60.jsonl"));
  EXPECT_LT(en.Labels("Q60").size(), all.Labels("Q60").size());
  EXPECT_TRUE(en.Labels("Q999999").empty());
}

TEST(Expand, EntryWithoutEntityIsUnchanged) {
  OfflineAliasFile source(Fixture("aliases/q60.jsonl"));
  std::vector<ReferenceAnswer> gold = {{"42", std::nullopt, {}}};
  EXPECT_EQ(ExpandReferences(gold, &source).references, gold);
}

TEST(Expand, CanonicalAlwaysRetained) {
  OfflineAliasFile source(Fixture("aliases/q60.jsonl"));
  for (const char* qid : {"Q60", "Q90", "Q64", "Q1"}) {
    auto refs = ExpandReferences({{"Canonical", qid, {}}}, &source).references;
    if (!refs[0].aliases.empty()) {
      EXPECT_TRUE(Contains(refs[0].aliases, "Canonical")) << qid;
    }
  }
}

class DownSource : public AliasSource {
 public:
  std::vector<std::string> Labels(const std::string& id) const override {
    throw Error(ErrorCode::kUnavailable, "unreachable", id);
  }
  std::string id() const override { return "down"; }
};

TEST(Expand, UnreachableSourceFlagsRecord) {
  DownSource down;
  QuestionRecord r = testing::MakeRecord("wqsp:1", "q", "New York City");
  r.gold[0].entity_id = "Q60";
  ExpandRecord(r, &down);
  EXPECT_TRUE(r.HasFlag(kFlagUnexpanded));
  EXPECT_EQ(r.gold[0].canonical, "New York City");
}

TEST(WikidataClient, FetchesOnceAndCachesOnDisk) {
  testing::LocalServer server;
  std::atomic<int> calls{0};
  server.server().Get("/w/api.php", [&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    EXPECT_EQ(req.get_param_value("action"), "wbgetentities");
    EXPECT_EQ(req.get_param_value("ids"), "Q60");
    EXPECT_EQ(req.get_param_value("languages"), "en|de");
    res.set_content(R"({"entities": {"Q60": {
        "labels": {"en": {"language": "en", "value": "New York City"},
                   "de": {"language": "de", "value": "New York City"}},
        "aliases": {"en": [{"language": "en", "value": "NYC"},
                           {"language": "en", "value": "the Big Apple"}],
                    "de": [{"language": "de", "value": "New York"}]}}}})",
                    "application/json");
  });
  server.Start();
  testing::TempDir dir;
  WikidataClientOptions options;
  options.base_url = server.url();
  options.languages = {"en", "de"};
  options.cache_path = dir / "aliases.jsonl";
  {
    WikidataAliasClient client(options);
    auto labels = client.Labels("Q60");
    EXPECT_TRUE(Contains(labels, "NYC"));
    EXPECT_TRUE(Contains(labels, "New York"));
    client.Labels("Q60");
    EXPECT_EQ(client.remote_calls(), 1u);
    EXPECT_TRUE(client.Labels("m.02_286").empty());  // not a Wikidata id
  }
  WikidataAliasClient reopened(options);
  EXPECT_TRUE(Contains(reopened.Labels("Q60"), "the Big Apple"));
  EXPECT_EQ(reopened.remote_calls(), 0u);
  EXPECT_EQ(calls.load(), 1);
  auto entries = ReadAliasEntries(options.cache_path);
  EXPECT_EQ(entries.size(), 2u);
}

TEST(WikidataClient, ServerErrorIsUnavailable) {
  testing::LocalServer server;
  server.server().Get("/w/api.php", [](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
  });
  server.Start();
  WikidataClientOptions options;
  options.base_url = server.url();
  WikidataAliasClient client(options);
  try {
    client.Labels("Q60");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
  auto result = ExpandReferences({{"New York City", "Q60", {}}}, &client);
  EXPECT_TRUE(result.unexpanded);
}

TEST(WikidataClient, IdShape) {
  EXPECT_TRUE(IsWikidataQid("Q60"));
  EXPECT_FALSE(IsWikidataQid("Q"));
  EXPECT_FALSE(IsWikidataQid("P31"));
  EXPECT_FALSE(IsWikidataQid("m.0d6lp"));
}

}  // namespace
}  // namespace kbqa
