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

#include "kbqa/datasets.h"

#include <gtest/gtest.h>

#include "kbqa/answer_type.h"
#include "kbqa/error.h"
#include "test_support.h"

namespace kbqa {
namespace {

using testing::Fixture;

struct Expectation {
  const char* dataset;
  const char* file;
  std::size_t records;
  std::size_t skipped;
  std::size_t filtered;
};

class LoadFixture : public ::testing::TestWithParam<Expectation> {};

TEST_P(LoadFixture, CountsMatch) {
  const auto& e = GetParam();
  RuleNer ner;
  LoadOptions options;
  options.ner = &ner;
  IngestReport report = LoadDataset(e.dataset, Fixture(std::string("datasets/") + e.file), options);
  EXPECT_EQ(report.records.size(), e.records);
  EXPECT_EQ(report.skipped, e.skipped);
  EXPECT_EQ(report.filtered, e.filtered);
  EXPECT_EQ(report.partial(), e.skipped > 0 || !report.warnings.empty());
  EXPECT_TRUE(ValidateRecords(report.records).empty());
  for (const auto& r : report.records) {
    EXPECT_EQ(r.dataset, Info(RequireDatasetId(e.dataset)).key);
    EXPECT_FALSE(r.text.empty());
  }
}

INSTANTIATE_TEST_SUITE_P(
    Readers, LoadFixture,
    ::testing::Values(Expectation{"kqapro", "kqapro_mini.json", 3, 0, 0},
                      Expectation{"lcquad2", "lcquad2_mini.json", 2, 1, 0},
                      Expectation{"wqsp", "wqsp_mini.json", 2, 1, 0},
                      Expectation{"cwq", "cwq_mini.json", 2, 0, 0},
                      Expectation{"grailqa", "grailqa_mini.json", 3, 0, 0},
                      Expectation{"graphq", "graphq_mini.json", 3, 0, 0},
                      Expectation{"qald9", "qald9_mini.json", 6, 0, 1},
                      Expectation{"mkqa", "mkqa_mini.jsonl", 7, 0, 1}),
    [](const auto& info) { return std::string(info.param.dataset); });

TEST(Load, SparqlDrivesReasoningTags) {
  auto report = LoadDataset("wqsp", Fixture("datasets/wqsp_mini.json"));
  ASSERT_FALSE(report.records.empty());
  for (const auto& r : report.records) {
    ASSERT_TRUE(r.sparql.has_value());
    EXPECT_FALSE(r.tags.reasoning.empty()) << r.id;
  }
}

TEST(Load, MultilingualVariantsGetLanguageSuffix) {
  auto report = LoadDataset("mkqa", Fixture("datasets/mkqa_mini.jsonl"));
  std::set<std::string> langs;
  for (const auto& r : report.records) {
    langs.insert(r.language().code());
    EXPECT_NE(r.id.rfind(":" + r.language().code()), std::string::npos) << r.id;
  }
  EXPECT_GT(langs.size(), 1u);
  EXPECT_FALSE(langs.count("ja"));
}

TEST(Load, UnanswerableKeepsEmptyGold) {
  auto report = LoadDataset("mkqa", Fixture("datasets/mkqa_mini.jsonl"));
  bool found = false;
  for (const auto& r : report.records) {
    if (r.tags.answer_type == AnswerType::kUna) {
      found = true;
      EXPECT_TRUE(r.gold.empty());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Load, GrailQaSplitSelection) {
  LoadOptions options;
  options.split = "test";
  auto report = LoadDataset("grailqa", Fixture("datasets/grailqa_mini.json"), options);
  EXPECT_EQ(report.records.size(), 2u);
  EXPECT_EQ(report.filtered, 1u);
}

TEST(Load, TruncatedFileSalvagesAndWarns) {
  auto report = LoadDataset("kqapro", Fixture("datasets/kqapro_truncated.json"));
  EXPECT_EQ(report.records.size(), 1u);
  EXPECT_FALSE(report.warnings.empty());
}

TEST(Load, EmptyFileWarns) {
  auto report = LoadDataset("kqapro", Fixture("datasets/empty.json"));
  EXPECT_TRUE(report.records.empty());
  EXPECT_FALSE(report.warnings.empty());
}

TEST(Load, SchemaMismatchIsIngestError) {
  try {
    LoadDataset("kqapro", Fixture("datasets/bad_schema.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIngest);
  }
}

TEST(Load, UnknownDatasetIsUnsupported) {
  try {
    LoadDataset("foo", Fixture("datasets/empty.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDataset);
  }
}

TEST(Load, FirstErrorNamesRecord) {
  auto report = LoadDataset("lcquad2", Fixture("datasets/lcquad2_mini.json"));
  ASSERT_TRUE(report.first_error.has_value());
  EXPECT_EQ(report.first_error->rfind("3:", 0), 0u) << *report.first_error;
}

TEST(JsonElements, StreamsArrayUnderKey) {
  auto el = ReadJsonElements(R"({"meta": 1, "Questions": [{"a": 1}, {"a": 2}]})", {"Questions"});
  EXPECT_EQ(el.elements.size(), 2u);
  EXPECT_FALSE(el.truncated);
  auto cut = ReadJsonElements(R"([{"a": 1}, {"a": 2}, {"a")", {});
  EXPECT_EQ(cut.elements.size(), 2u);
  EXPECT_TRUE(cut.truncated);
}

}  // namespace
}  // namespace kbqa
