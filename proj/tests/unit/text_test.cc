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

#include "kbqa/text.h"

#include <gtest/gtest.h>

#include "kbqa/hashing.h"

namespace kbqa::text {
namespace {

TEST(Utf8, RoundTripsMixedScripts) {
  const std::string s = "Zürich 北京 Москва";
  EXPECT_EQ(EncodeUtf8(DecodeUtf8(s)), s);
  EXPECT_EQ(DecodeUtf8(s).size(), 16u);
}

TEST(Utf8, InvalidBytesBecomeReplacement) {
  std::u32string cps = DecodeUtf8(std::string("a\xff" "b"));
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_EQ(cps[1], U'�');
}

TEST(Case, LowersBeyondAscii) {
  EXPECT_EQ(ToLower("ÄÖÜ Straße"), "äöü straße");
  EXPECT_EQ(ToLower("ПАРИЖ"), "париж");
  EXPECT_EQ(ToUpperAscii("select ?x"), "SELECT ?X");
  EXPECT_EQ(ToUpperAscii("straße"), "STRAßE");
}

TEST(Normalize, TrimsPunctuationAndFoldsCase) {
  EXPECT_EQ(NormalizeAnswer("  The Big   Apple. "), "the big apple");
  EXPECT_EQ(NormalizeAnswer("\"Paris\""), "paris");
  EXPECT_EQ(NormalizeAnswer("It's"), "it's");
  EXPECT_EQ(NormalizeAnswer(" . "), "");
}

TEST(Normalize, KeepsCjkIntact) {
  EXPECT_EQ(NormalizeAnswer("北京。"), "北京");
}

TEST(Normalize, IsIdempotent) {
  for (const char* s : {"New York City!", "  a  b ", "Ünïcödé, text", "42.5%"}) {
    std::string once = NormalizeAnswer(s);
    EXPECT_EQ(NormalizeAnswer(once), once) << s;
  }
}

TEST(Words, SplitsOnSpaceAndPunctuation) {
  EXPECT_EQ(Words("Who wrote Hamlet?"), (std::vector<std::string>{"Who", "wrote", "Hamlet"}));
  auto spans = WordSpans("a, bc");
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[1].View("a, bc"), "bc");
}

TEST(Sentences, SplitsOnTerminalPunctuation) {
  auto s = SplitSentences("Paris is big. It is old! Is it?");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], "Paris is big.");
}

TEST(Offsets, CodePointToByte) {
  const std::string s = "Zürich x";
  EXPECT_EQ(CodePointToByteOffset(s, 0), 0u);
  EXPECT_EQ(CodePointToByteOffset(s, 2), 3u);
  EXPECT_EQ(CodePointToByteOffset(s, 8), s.size());
}

TEST(Hashing, KnownVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace kbqa::text
