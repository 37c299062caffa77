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

#include <cctype>
#include <optional>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa::sparql {
namespace {

bool IsNameStart(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         c >= 0x80;
}

bool IsNameChar(unsigned char c) {
  return IsNameStart(c) || (c >= '0' && c <= '9') || c == '-';
}

bool IsDigitChar(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, bool strict) : src_(src), strict_(strict) {}

  std::vector<Token> Run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '"' || c == '\'') {
        LexString();
      } else if (c == '<') {
        LexAngle();
      } else if (c == '?' || c == '$') {
        LexVariable();
      } else if (IsDigitChar(c) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  IsDigitChar(src_[pos_ + 1]) && !PrevIsTermEnd())) {
        LexNumber();
      } else if (c == '_' && pos_ + 1 < src_.size() && src_[pos_ + 1] == ':') {
        LexBlankNode();
      } else if (IsNameStart(static_cast<unsigned char>(c)) || c == ':') {
        LexName();
      } else if (c == '@') {
        LexLangTag();
      } else if (c == '{' || c == '}' || c == '(' || c == ')' || c == '[' ||
                 c == ']' || c == '.' || c == ';' || c == ',') {
        Emit(TokenKind::kPunct, pos_, 1);
      } else if (!LexOperator()) {
        if (strict_) {
          throw Error(ErrorCode::kClassification,
                      "untokenizable SPARQL: unexpected character '" +
                          std::string(1, c) + "' at offset " +
                          std::to_string(pos_),
                      std::string(src_));
        }
        ++pos_;
      }
    }
    return std::move(tokens_);
  }

 private:
  void Emit(TokenKind kind, std::size_t begin, std::size_t len) {
    tokens_.push_back({kind, std::string(src_.substr(begin, len)), begin});
    pos_ = begin + len;
  }

  bool PrevIsTermEnd() const {
    if (tokens_.empty()) return false;
    const Token& t = tokens_.back();
    return t.kind == TokenKind::kName && t.offset + t.text.size() == pos_;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kClassification, "untokenizable SPARQL: " + what,
                std::string(src_));
  }

  void LexString() {
    std::size_t begin = pos_;
    char quote = src_[pos_];
    bool triple = src_.substr(pos_, 3) == std::string(3, quote);
    pos_ += triple ? 3 : 1;
    bool closed = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (!triple && (c == '\n' || c == '\r')) break;
      if (c == quote) {
        if (!triple) {
          ++pos_;
          closed = true;
          break;
        }
        if (src_.substr(pos_, 3) == std::string(3, quote)) {
          pos_ += 3;
          closed = true;
          break;
        }
      }
      ++pos_;
    }
    if (pos_ > src_.size()) pos_ = src_.size();
    if (!closed && strict_) {
      Fail("unterminated string literal at offset " + std::to_string(begin));
    }
    // Language tag directly attached to the literal.
    if (closed && pos_ < src_.size() && src_[pos_] == '@') {
      ++pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '-')) {
        ++pos_;
      }
    }
    tokens_.push_back(
        {TokenKind::kString, std::string(src_.substr(begin, pos_ - begin)),
         begin});
  }

  void LexAngle() {
    if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      Emit(TokenKind::kOperator, pos_, 2);
      return;
    }
    std::size_t j = pos_ + 1;
    while (j < src_.size()) {
      char c = src_[j];
      if (c == '>') {
        Emit(TokenKind::kIri, pos_, j - pos_ + 1);
        return;
      }
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' ||
          c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
          c == '`' || c == '\\') {
        break;
      }
      ++j;
    }
    Emit(TokenKind::kOperator, pos_, 1);
  }

  void LexVariable() {
    std::size_t j = pos_ + 1;
    while (j < src_.size() && (IsNameChar(static_cast<unsigned char>(src_[j])) &&
                               src_[j] != '-')) {
      ++j;
    }
    if (j == pos_ + 1) {
      if (src_[pos_] == '?') {
        Emit(TokenKind::kOperator, pos_, 1);
        return;
      }
      if (strict_) Fail("bare '$' at offset " + std::to_string(pos_));
      ++pos_;
      return;
    }
    Emit(TokenKind::kVariable, pos_, j - pos_);
  }

  void LexNumber() {
    std::size_t j = pos_;
    while (j < src_.size() && IsDigitChar(src_[j])) ++j;
    if (j < src_.size() && src_[j] == '.' && j + 1 < src_.size() &&
        IsDigitChar(src_[j + 1])) {
      ++j;
      while (j < src_.size() && IsDigitChar(src_[j])) ++j;
    }
    if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (k < src_.size() && IsDigitChar(src_[k])) {
        j = k;
        while (j < src_.size() && IsDigitChar(src_[j])) ++j;
      }
    }
    Emit(TokenKind::kNumber, pos_, j - pos_);
  }

  void LexBlankNode() {
    std::size_t j = pos_ + 2;
    while (j < src_.size() && IsNameChar(static_cast<unsigned char>(src_[j]))) {
      ++j;
    }
    Emit(TokenKind::kBlankNode, pos_, j - pos_);
  }

  void LexName() {
    std::size_t j = pos_;
    while (j < src_.size() &&
           (IsNameChar(static_cast<unsigned char>(src_[j])) || src_[j] == '.')) {
      ++j;
    }
    while (j > pos_ && src_[j - 1] == '.') --j;
    if (j < src_.size() && src_[j] == ':') {
      ++j;
      while (j < src_.size()) {
        char c = src_[j];
        if (IsNameChar(static_cast<unsigned char>(c)) || c == '.' ||
            c == ':' || c == '%') {
          ++j;
        } else {
          break;
        }
      }
      while (j > pos_ && src_[j - 1] == '.') --j;
      Emit(TokenKind::kPrefixedName, pos_, j - pos_);
      return;
    }
    Emit(TokenKind::kName, pos_, j - pos_);
  }

  void LexLangTag() {
    std::size_t j = pos_ + 1;
    while (j < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[j])) ||
            src_[j] == '-')) {
      ++j;
    }
    if (j == pos_ + 1) {
      if (strict_) Fail("stray '@' at offset " + std::to_string(pos_));
      ++pos_;
      return;
    }
    Emit(TokenKind::kName, pos_, j - pos_);
  }

  bool LexOperator() {
    static constexpr std::string_view kTwo[] = {"!=", ">=", "&&", "||", "^^"};
    for (std::string_view op : kTwo) {
      if (src_.substr(pos_, 2) == op) {
        Emit(TokenKind::kOperator, pos_, 2);
        return true;
      }
    }
    switch (src_[pos_]) {
      case '=': case '>': case '!': case '+': case '-': case '*': case '/':
      case '^': case '|':
        Emit(TokenKind::kOperator, pos_, 1);
        return true;
      default:
        return false;
    }
  }

  std::string_view src_;
  bool strict_;
  std::size_t pos_ = 0;
  std::vector<Token> tokens_;
};

// Recursive-descent walk over group graph patterns.
class TripleExtractor {
 public:
  TripleExtractor(std::span<const Token> tokens, std::string_view query)
      : toks_(tokens), query_(query) {}

  std::vector<TriplePattern> Run() {
    std::size_t depth = 0;
    for (const Token& t : toks_) {
      if (t.Is(TokenKind::kPunct, "{")) ++depth;
      if (t.Is(TokenKind::kPunct, "}")) {
        if (depth == 0) Unbalanced();
        --depth;
      }
    }
    if (depth != 0) Unbalanced();

    bool after_construct = false;
    while (pos_ < toks_.size()) {
      const Token& t = toks_[pos_];
      if (t.IsName("CONSTRUCT")) after_construct = true;
      if (t.Is(TokenKind::kPunct, "{")) {
        if (after_construct) {
          SkipBalanced("{", "}");
          after_construct = false;
        } else {
          ParseGroup();
        }
        continue;
      }
      ++pos_;
    }
    return std::move(triples_);
  }

 private:
  [[noreturn]] void Unbalanced() const {
    throw Error(ErrorCode::kClassification,
                "untokenizable SPARQL: unbalanced braces", std::string(query_));
  }

  bool AtEnd() const { return pos_ >= toks_.size(); }
  const Token& Peek(std::size_t ahead = 0) const {
    static const Token kEnd{TokenKind::kPunct, "", 0};
    return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : kEnd;
  }
  bool PeekPunct(std::string_view p) const {
    return !AtEnd() && Peek().Is(TokenKind::kPunct, p);
  }

  void SkipBalanced(std::string_view open, std::string_view close) {
    int depth = 0;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.Is(TokenKind::kPunct, open)) ++depth;
      if (t.Is(TokenKind::kPunct, close)) {
        --depth;
        if (depth == 0) {
          ++pos_;
          return;
        }
      }
      ++pos_;
    }
  }

  // Skips a parenthesized expression; groups inside (EXISTS { ... }) are
  // still parsed for triples.
  void SkipExpression() {
    int depth = 0;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.Is(TokenKind::kPunct, "{")) {
        ParseGroup();
        continue;
      }
      if (t.Is(TokenKind::kPunct, "(")) ++depth;
      if (t.Is(TokenKind::kPunct, ")")) {
        --depth;
        if (depth <= 0) {
          ++pos_;
          return;
        }
      }
      ++pos_;
    }
  }

  void SkipFilter() {
    // FILTER [NOT] EXISTS { ... } | FILTER ( expr ) | FILTER fn( args )
    if (Peek().IsName("NOT")) ++pos_;
    if (Peek().IsName("EXISTS")) {
      ++pos_;
      if (PeekPunct("{")) ParseGroup();
      return;
    }
    if (PeekPunct("(")) {
      SkipExpression();
      return;
    }
    if (Peek().kind == TokenKind::kName ||
        Peek().kind == TokenKind::kPrefixedName || Peek().kind == TokenKind::kIri) {
      ++pos_;
      if (PeekPunct("(")) SkipExpression();
    }
  }

  // pos_ at '{'.
  void ParseGroup() {
    ++pos_;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.Is(TokenKind::kPunct, "}")) {
        ++pos_;
        return;
      }
      if (t.Is(TokenKind::kPunct, "{")) {
        ParseGroup();
        continue;
      }
      if (t.Is(TokenKind::kPunct, ".") || t.Is(TokenKind::kPunct, ";") ||
          t.Is(TokenKind::kPunct, ",")) {
        ++pos_;
        continue;
      }
      if (t.kind == TokenKind::kName) {
        if (t.IsName("OPTIONAL") || t.IsName("MINUS") || t.IsName("UNION") ||
            t.IsName("LATERAL")) {
          ++pos_;
          continue;
        }
        if (t.IsName("GRAPH")) {
          pos_ += 2;
          continue;
        }
        if (t.IsName("SERVICE")) {
          ++pos_;
          if (Peek().IsName("SILENT")) ++pos_;
          bool label_service = Peek().text.find("wikibase:label") !=
                               std::string::npos;
          ++pos_;
          // The label service block binds display labels, not KB edges.
          if (label_service && PeekPunct("{")) SkipBalanced("{", "}");
          continue;
        }
        if (t.IsName("FILTER")) {
          ++pos_;
          SkipFilter();
          continue;
        }
        if (t.IsName("BIND")) {
          ++pos_;
          if (PeekPunct("(")) SkipExpression();
          continue;
        }
        if (t.IsName("VALUES")) {
          ++pos_;
          if (PeekPunct("(")) {
            SkipBalanced("(", ")");
          } else {
            ++pos_;
          }
          if (PeekPunct("{")) SkipBalanced("{", "}");
          continue;
        }
        if (t.IsName("SELECT")) {
          ParseSubquery();
          return;
        }
      }
      std::size_t before = pos_;
      ParseTriplesSameSubject();
      if (pos_ == before) ++pos_;
    }
  }

  // Subquery inside a group: skip projection, parse WHERE group, then skip
  // solution modifiers up to and including the enclosing '}'.
  void ParseSubquery() {
    while (!AtEnd() && !PeekPunct("{")) {
      if (PeekPunct("(")) {
        SkipExpression();
      } else {
        ++pos_;
      }
    }
    if (!AtEnd()) ParseGroup();
    int depth = 0;
    while (!AtEnd()) {
      const Token& t = Peek();
      if (t.Is(TokenKind::kPunct, "{")) ++depth;
      if (t.Is(TokenKind::kPunct, "}")) {
        if (depth == 0) {
          ++pos_;
          return;
        }
        --depth;
      }
      ++pos_;
    }
  }

  std::string NewBlank() { return "_:anon" + std::to_string(blank_counter_++); }

  bool IsTermToken(const Token& t) const {
    switch (t.kind) {
      case TokenKind::kVariable:
      case TokenKind::kIri:
      case TokenKind::kPrefixedName:
      case TokenKind::kBlankNode:
      case TokenKind::kString:
      case TokenKind::kNumber:
        return true;
      case TokenKind::kName:
        return t.IsName("TRUE") || t.IsName("FALSE") || t.text == "a";
      default:
        return false;
    }
  }

  // Parses a subject or object term. Returns nullopt when the current token
  // cannot start a term.
  std::optional<std::string> ParseTerm() {
    if (AtEnd()) return std::nullopt;
    const Token& t = Peek();
    if (t.Is(TokenKind::kPunct, "[")) {
      ++pos_;
      std::string node = NewBlank();
      if (!PeekPunct("]")) ParsePropertyList(node);
      if (PeekPunct("]")) ++pos_;
      return node;
    }
    if (t.Is(TokenKind::kPunct, "(")) {
      SkipBalanced("(", ")");
      return NewBlank();
    }
    if (t.kind == TokenKind::kOperator && (t.text == "-" || t.text == "+") &&
        Peek(1).kind == TokenKind::kNumber) {
      pos_ += 2;
      return t.text + toks_[pos_ - 1].text;
    }
    if (!IsTermToken(t) || t.text == "a") return std::nullopt;
    ++pos_;
    std::string term = t.text;
    // Typed literal: "5"^^xsd:integer
    if (t.kind == TokenKind::kString && Peek().Is(TokenKind::kOperator, "^^")) {
      pos_ += 2;
      term += "^^" + toks_[pos_ - 1].text;
    }
    return term;
  }

  std::optional<std::string> ParsePathElement() {
    std::string out;
    if (Peek().Is(TokenKind::kOperator, "^")) {
      out += "^";
      ++pos_;
    }
    const Token& t = Peek();
    if (AtEnd()) return std::nullopt;
    if (t.Is(TokenKind::kOperator, "!")) {
      ++pos_;
      out += "!";
      if (PeekPunct("(")) {
        std::size_t begin = pos_;
        SkipBalanced("(", ")");
        for (std::size_t i = begin; i < pos_; ++i) out += toks_[i].text;
      } else if (!AtEnd()) {
        out += Peek().text;
        ++pos_;
      }
    } else if (t.Is(TokenKind::kPunct, "(")) {
      ++pos_;
      auto inner = ParsePath();
      if (!inner) return std::nullopt;
      if (PeekPunct(")")) ++pos_;
      out += "(" + *inner + ")";
    } else if (t.kind == TokenKind::kIri || t.kind == TokenKind::kPrefixedName ||
               t.kind == TokenKind::kVariable ||
               (t.kind == TokenKind::kName && t.text == "a")) {
      out += t.text;
      ++pos_;
    } else {
      return std::nullopt;
    }
    const Token& mod = Peek();
    if (mod.kind == TokenKind::kOperator &&
        (mod.text == "*" || mod.text == "+" || mod.text == "?")) {
      out += mod.text;
      ++pos_;
    }
    return out;
  }

  std::optional<std::string> ParsePath() {
    auto first = ParsePathElement();
    if (!first) return std::nullopt;
    std::string path = *first;
    while (Peek().Is(TokenKind::kOperator, "/") ||
           Peek().Is(TokenKind::kOperator, "|")) {
      std::string op = Peek().text;
      ++pos_;
      auto next = ParsePathElement();
      if (!next) break;
      path += op + *next;
    }
    return path;
  }

  void ParsePropertyList(const std::string& subject) {
    while (!AtEnd()) {
      auto predicate = ParsePath();
      if (!predicate) return;
      while (true) {
        auto object = ParseTerm();
        if (!object) return;
        triples_.push_back({subject, *predicate, *object});
        if (PeekPunct(",")) {
          ++pos_;
          continue;
        }
        break;
      }
      if (!PeekPunct(";")) return;
      while (PeekPunct(";")) ++pos_;
      if (PeekPunct(".") || PeekPunct("}") || PeekPunct("]")) return;
    }
  }

  void ParseTriplesSameSubject() {
    auto subject = ParseTerm();
    if (!subject) return;
    if (PeekPunct(".") || PeekPunct("}")) return;  // bare blank node list
    ParsePropertyList(*subject);
  }

  std::span<const Token> toks_;
  std::string_view query_;
  std::size_t pos_ = 0;
  int blank_counter_ = 0;
  std::vector<TriplePattern> triples_;
};

}  // namespace

bool Token::IsName(std::string_view upper_keyword) const {
  if (kind != TokenKind::kName || text.size() != upper_keyword.size()) {
    return false;
  }
  return text::ToUpperAscii(text) == upper_keyword;
}

std::vector<Token> Tokenize(std::string_view query) {
  return Lexer(query, /*strict=*/true).Run();
}

std::vector<Token> TokenizeLenient(std::string_view text) {
  return Lexer(text, /*strict=*/false).Run();
}

bool IsVariableTerm(std::string_view term) {
  return !term.empty() &&
         (term.front() == '?' || term.front() == '$' || term.starts_with("_:"));
}

std::vector<TriplePattern> ExtractTriplePatterns(std::span<const Token> tokens,
                                                 std::string_view query) {
  return TripleExtractor(tokens, query).Run();
}

}  // namespace kbqa::sparql
