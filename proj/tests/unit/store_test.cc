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

#include "kbqa/store.h"

#include <gtest/gtest.h>

#include <map>

#include "kbqa/error.h"
#include "test_support.h"

namespace kbqa {
namespace {

using testing::Fixture;
using testing::ReadFile;
using testing::TempDir;

TEST(Store, RoundTripIsByteEqual) {
  auto records = ReadStore(Fixture("e2e/store.jsonl"));
  ASSERT_EQ(records.size(), 50u);
  TempDir dir;
  WriteStore(dir / "copy.jsonl", records);
  EXPECT_EQ(ReadFile(dir / "copy.jsonl"), ReadFile(Fixture("e2e/store.jsonl")));
  EXPECT_EQ(ReadStore(dir / "copy.jsonl").size(), 50u);
}

TEST(Store, SerializationIsStableForUnicode) {
  auto r = testing::MakeRecord("mkqa:1:de", "Wo liegt Zürich?", "Schweiz", AnswerType::kLoc);
  r.tags.language = LanguageTag::Parse("de");
  std::string line = SerializeRecord(r);
  EXPECT_NE(line.find("Zürich"), std::string::npos);
  EXPECT_EQ(SerializeRecord(RecordFromJson(nlohmann::json::parse(line))), line);
}

TEST(Store, TruncatedLineIsNamed) {
  TempDir dir;
  std::string content = ReadFile(Fixture("e2e/store.jsonl"));
  std::size_t pos = 0;
  for (int line = 1; line < 17; ++line) pos = content.find('\n', pos) + 1;
  std::size_t end = content.find('\n', pos);
  content.erase(pos + (end - pos) / 2, end - pos - (end - pos) / 2);
  testing::WriteFile(dir / "bad.jsonl", content);
  try {
    ReadStore(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.detail(), "17");
    EXPECT_NE(std::string(e.what()).find(":17:"), std::string::npos);
  }
}

TEST(Store, MissingFileIsIoError) {
  try {
    ReadStore("/nonexistent/store.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

std::vector<QuestionRecord> Synthetic(std::size_t n) {
  std::vector<QuestionRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto type = kAllAnswerTypes[i % kAllAnswerTypes.size()];
    out.push_back(testing::MakeRecord("kqapro:" + std::to_string(i), "q", "a", type));
  }
  return out;
}

TEST(Sample, DeterministicUnderSeed) {
  auto records = Synthetic(1000);
  auto a = SampleStore(records, SampleKey::kAnswerType, 10, 7);
  auto b = SampleStore(records, SampleKey::kAnswerType, 10, 7);
  ASSERT_EQ(a.size(), 90u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].id, b[i].id);
  std::map<AnswerType, int> per;
  for (const auto& r : a) ++per[r.tags.answer_type];
  for (const auto& [t, n] : per) EXPECT_EQ(n, 10) << ToString(t);
  auto c = SampleStore(records, SampleKey::kAnswerType, 10, 8);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].id != c[i].id;
  EXPECT_TRUE(differs);
}

TEST(Sample, ZeroAndOversizedStrata) {
  auto records = Synthetic(20);
  EXPECT_TRUE(SampleStore(records, SampleKey::kAnswerType, 0, 1).empty());
  EXPECT_EQ(SampleStore(records, SampleKey::kNone, 100, 1).size(), 20u);
}

TEST(Sample, KeyNames) {
  EXPECT_EQ(ParseSampleKey("answer_type"), SampleKey::kAnswerType);
  EXPECT_EQ(ParseSampleKey("lang"), SampleKey::kLanguage);
  EXPECT_FALSE(ParseSampleKey("colour").has_value());
}

TEST(Validate, FlagsBrokenRecords) {
  auto r = testing::MakeRecord("wqsp:1", "q", "");
  r.tags.reasoning = {ReasoningType::kSingleHop, ReasoningType::kMultiHop};
  auto v = ValidateRecords({r, r});
  EXPECT_EQ(v.size(), 5u);  // 2x gold empty, 2x hop conflict, 1x duplicate
}

TEST(LanguageTags, NormalizesCodes) {
  EXPECT_EQ(LanguageTag::Parse("PT-BR").code(), "pt_br");
  EXPECT_EQ(LanguageTag::Parse("zh_CN").code(), "zh_cn");
  EXPECT_TRUE(LanguageTag::Parse("hi-IN").InInventory());
  EXPECT_FALSE(LanguageTag::Parse("ja").InInventory());
  EXPECT_THROW(LanguageTag::Parse(""), Error);
}

}  // namespace
}  // namespace kbqa
