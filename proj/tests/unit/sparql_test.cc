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

#include "kbqa/sparql.h"

#include <gtest/gtest.h>

#include "kbqa/error.h"

namespace kbqa::sparql {
namespace {

std::vector<TokenKind> Kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const auto& t : tokens) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, ClassifiesTerms) {
  auto tokens = Tokenize("SELECT ?x WHERE { ?x wdt:P31 <http://e/Q5> . FILTER(?n >= 3.5) }");
  std::vector<TokenKind> expected = {
      TokenKind::kName,     TokenKind::kVariable,     TokenKind::kName,  TokenKind::kPunct,
      TokenKind::kVariable, TokenKind::kPrefixedName, TokenKind::kIri,   TokenKind::kPunct,
      TokenKind::kName,     TokenKind::kPunct,        TokenKind::kVariable,
      TokenKind::kOperator, TokenKind::kNumber,       TokenKind::kPunct, TokenKind::kPunct};
  EXPECT_EQ(Kinds(tokens), expected);
  EXPECT_TRUE(tokens[0].IsName("SELECT"));
  EXPECT_TRUE(Tokenize("select ?x {}")[0].IsName("SELECT"));
}

TEST(Tokenize, StringsHideKeywords) {
  auto tokens = Tokenize(R"(SELECT ?x WHERE { ?x rdfs:label "count of FILTER"@en })");
  for (const auto& t : tokens) {
    EXPECT_FALSE(t.IsName("FILTER"));
    EXPECT_FALSE(t.IsName("COUNT"));
  }
}

TEST(Tokenize, CommentsAreSkipped) {
  auto tokens = Tokenize("# COUNT here\nSELECT ?x WHERE { ?x ?p ?o }");
  EXPECT_TRUE(tokens[0].IsName("SELECT"));
}

TEST(Tokenize, StrictModeRejectsGarbage) {
  try {
    Tokenize("SELECT ?x WHERE { ?x ?p \"open }");
    FAIL() << "expected a classification error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassification);
    EXPECT_NE(e.detail().find("SELECT"), std::string::npos);
  }
  EXPECT_NO_THROW(TokenizeLenient("SELECT ?x WHERE { ?x ?p \"open }"));
}

TEST(Triples, ExpandsPredicateAndObjectLists) {
  const std::string q = "SELECT ?x WHERE { ?x wdt:P31 wd:Q5 ; wdt:P27 wd:Q30 , wd:Q145 . }";
  auto tokens = Tokenize(q);
  auto triples = ExtractTriplePatterns(tokens, q);
  ASSERT_EQ(triples.size(), 3u);
  EXPECT_EQ(triples[0], (TriplePattern{"?x", "wdt:P31", "wd:Q5"}));
  EXPECT_EQ(triples[1], (TriplePattern{"?x", "wdt:P27", "wd:Q30"}));
  EXPECT_EQ(triples[2], (TriplePattern{"?x", "wdt:P27", "wd:Q145"}));
}

TEST(Triples, IgnoresFilterExpressions) {
  const std::string q = "SELECT ?x WHERE { ?x wdt:P1082 ?n . FILTER(?n > 1000) }";
  auto tokens = Tokenize(q);
  EXPECT_EQ(ExtractTriplePatterns(tokens, q).size(), 1u);
}

TEST(Terms, VariableDetection) {
  EXPECT_TRUE(IsVariableTerm("?x"));
  EXPECT_TRUE(IsVariableTerm("$y"));
  EXPECT_FALSE(IsVariableTerm("wd:Q5"));
}

}  // namespace
}  // namespace kbqa::sparql
