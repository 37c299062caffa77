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

#include "kbqa/answer_type.h"

#include <gtest/gtest.h>

#include "kbqa/error.h"

namespace kbqa {
namespace {

class StubNer : public NerProvider {
 public:
  explicit StubNer(AnswerType type, bool fail = false) : type_(type), fail_(fail) {}
  std::vector<EntityMention> Recognize(std::string_view text) const override {
    if (fail_) throw Error(ErrorCode::kUnavailable, "down");
    return {{std::string(text), type_, {0, text.size()}}};
  }
  std::string id() const override { return "stub"; }

 private:
  AnswerType type_;
  bool fail_;
};

TEST(AnswerTypeCascade, BooleanGold) {
  auto r = ClassifyAnswerType("Is Paris in France?", {"yes"}, std::nullopt, nullptr);
  EXPECT_EQ(r.type, AnswerType::kBoolean);
  EXPECT_EQ(r.rule, "boolean");
}

TEST(AnswerTypeCascade, DateGold) {
  EXPECT_EQ(ClassifyAnswerType("When did Apollo 11 land?", {"1969-07-20"}, std::nullopt, nullptr)
                .type,
            AnswerType::kDate);
}

TEST(AnswerTypeCascade, NumberGold) {
  EXPECT_EQ(ClassifyAnswerType("How many moons?", {"2"}, std::nullopt, nullptr).type,
            AnswerType::kNum);
}

TEST(AnswerTypeCascade, WhyQuestion) {
  auto r = ClassifyAnswerType("Why did X resign?", {"health reasons"}, std::nullopt, nullptr);
  EXPECT_EQ(r.type, AnswerType::kWhy);
  EXPECT_FALSE(r.low_confidence);
}

TEST(AnswerTypeCascade, NativeTagWins) {
  auto r = ClassifyAnswerType("Is it?", {"2"}, NativeAnswerTag{"mkqa", "binary"}, nullptr);
  EXPECT_EQ(r.type, AnswerType::kBoolean);
  EXPECT_EQ(r.rule, "native");
}

TEST(AnswerTypeCascade, NerDecidesEntities) {
  StubNer ner(AnswerType::kOrg);
  auto r = ClassifyAnswerType("Who makes it?", {"Sony"}, std::nullopt, &ner);
  EXPECT_EQ(r.type, AnswerType::kOrg);
  EXPECT_EQ(r.rule, "ner");
}

TEST(AnswerTypeCascade, NoNerMeansLowConfidenceMisc) {
  auto r = ClassifyAnswerType("What is it?", {"zorblax"}, std::nullopt, nullptr);
  EXPECT_EQ(r.type, AnswerType::kMisc);
  EXPECT_TRUE(r.low_confidence);
}

TEST(AnswerTypeCascade, UnavailableNerFallsBackToMisc) {
  StubNer ner(AnswerType::kPer, /*fail=*/true);
  auto r = ClassifyAnswerType("Who is it?", {"Someone"}, std::nullopt, &ner);
  EXPECT_EQ(r.type, AnswerType::kMisc);
  EXPECT_TRUE(r.low_confidence);
}

TEST(AnswerTypeCascade, EmptyQuestionIsPrecondition) {
  EXPECT_THROW(ClassifyAnswerType("  ", {"x"}, std::nullopt, nullptr), Error);
}

TEST(RuleNer, TypesPhrases) {
  RuleNer ner;
  EXPECT_EQ(ner.TypePhrase("Barack Obama"), AnswerType::kPer);
  EXPECT_EQ(ner.TypePhrase("Paris"), AnswerType::kLoc);
  EXPECT_EQ(ner.TypePhrase("Hudson River"), AnswerType::kLoc);
  EXPECT_EQ(ner.TypePhrase("Stanford University"), AnswerType::kOrg);
  EXPECT_EQ(ner.TypePhrase("Jamaican English"), AnswerType::kMisc);
  EXPECT_EQ(ner.TypePhrase("xyzzy"), AnswerType::kMisc);
}

TEST(RuleNer, FindsMentionsWithSpans) {
  RuleNer ner;
  const std::string s = "Who directed Jaws in New York?";
  auto mentions = ner.Recognize(s);
  ASSERT_EQ(mentions.size(), 2u);
  EXPECT_EQ(mentions[0].text, "Jaws");
  EXPECT_EQ(mentions[1].text, "New York");
  EXPECT_EQ(mentions[1].type, AnswerType::kLoc);
  EXPECT_EQ(mentions[1].span.View(s), "New York");
}

}  // namespace
}  // namespace kbqa
