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

#include "kbqa/native_tags.h"

#include <gtest/gtest.h>

#include "kbqa/error.h"

namespace kbqa {
namespace {

using nlohmann::json;

TEST(Datasets, InventoryMatchesReferenceSizes) {
  EXPECT_EQ(SupportedDatasets().size(), 8u);
  EXPECT_EQ(Info(DatasetId::kWqsp).collected_size, 4700u);
  EXPECT_EQ(Info(DatasetId::kQald9).collected_size, 6045u);
  EXPECT_EQ(ParseDatasetId("LC-QuAD2"), DatasetId::kLcQuad2);
  EXPECT_EQ(ParseDatasetId("qald9"), DatasetId::kQald9);
  EXPECT_FALSE(ParseDatasetId("foo").has_value());
}

TEST(Datasets, UnknownIdIsUnsupported) {
  try {
    RequireDatasetId("foo");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDataset);
  }
  EXPECT_THROW(NativeTagMapper::Default().Map("foo", json::object()), Error);
}

TEST(NativeTags, KqaProCountMapsToCounting) {
  auto tags = NativeTagMapper::Default().Map("kqapro", json{{"functions", {"Find", "Relate", "Count"}}});
  EXPECT_TRUE(tags.reasoning.count(ReasoningType::kCounting));
}

TEST(NativeTags, MkqaBinaryMapsToBoolean) {
  EXPECT_EQ(NativeTagMapper::Default().MapAnswerTag("mkqa", "binary"), AnswerType::kBoolean);
  EXPECT_EQ(NativeTagMapper::Default().MapAnswerTag("mkqa", "unanswerable"), AnswerType::kUna);
}

TEST(NativeTags, UnknownNativeTagIsIgnored) {
  EXPECT_FALSE(NativeTagMapper::Default().MapAnswerTag("mkqa", "zzz").has_value());
}

TEST(NativeTags, TableIsVersioned) {
  EXPECT_FALSE(NativeTagMapper::Default().version().empty());
}

}  // namespace
}  // namespace kbqa
