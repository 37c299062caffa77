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

#ifndef KBQA_SPARQL_H_
#define KBQA_SPARQL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// A tokenizer and a tolerant triple-pattern extractor for SPARQL. This is
// not a validating parser: it recovers enough structure (keywords outside
// literals, triple patterns inside group graph patterns) to label queries.
namespace kbqa::sparql {

enum class TokenKind {
  kName,           // keyword or bare identifier (SELECT, COUNT, a, true)
  kVariable,       // ?x or $x
  kIri,            // <http://...>
  kPrefixedName,   // wdt:P31, :local
  kBlankNode,      // _:b0
  kString,         // "..." or '...' (with optional @lang)
  kNumber,
  kPunct,          // { } ( ) [ ] . ; ,
  kOperator,       // = != < > <= >= && || ! + - * / ^ ^^ | ?
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset = 0;

  bool IsName(std::string_view upper_keyword) const;
  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
};

// Strict mode: throws Error(kClassification) carrying the query when the
// input cannot be tokenized (unterminated literal, stray character).
std::vector<Token> Tokenize(std::string_view query);
// Lenient mode for free text that embeds SPARQL: unterminated literals end
// at the line break and unknown characters are skipped.
std::vector<Token> TokenizeLenient(std::string_view text);

struct TriplePattern {
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

bool IsVariableTerm(std::string_view term);

// Extracts every triple pattern of every group graph pattern, including
// nested groups (OPTIONAL, UNION branches, EXISTS, subqueries). Blank node
// property lists produce synthetic "_:anonN" terms. CONSTRUCT templates and
// VALUES blocks are skipped. Throws Error(kClassification) on unbalanced
// braces.
std::vector<TriplePattern> ExtractTriplePatterns(std::span<const Token> tokens,
                                                 std::string_view query);

}  // namespace kbqa::sparql

#endif  // KBQA_SPARQL_H_
