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

#ifndef KBQA_CANDIDATES_H_
#define KBQA_CANDIDATES_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kbqa/text.h"

namespace kbqa {

// Constituency tree in Penn Treebank bracket notation.
struct ParseTree {
  std::string label;  // empty for leaves
  std::string word;   // leaves only
  std::vector<ParseTree> children;

  bool leaf() const { return children.empty() && label.empty(); }
};

// Parses "(ROOT (S (NP (DT the) (NN car)) (VP (VBD stopped))))". Throws
// Error(kParse) on unbalanced brackets.
ParseTree ParseBracketed(std::string_view ptb);

// A phrase with its byte span in the parsed text.
struct PhraseSpan {
  std::string text;
  std::string label;  // "NP" or "VP"
  text::Span span;
};

// Maximal NP and VP constituents (label differs from the parent's), in
// preorder, mapped back onto `source`. Leaves that cannot be aligned keep
// their token text and an empty span.
std::vector<PhraseSpan> MaximalPhrases(const ParseTree& tree, std::string_view source);

// Phrase source backed by a parser (the sidecar). Throws Error(kUnavailable)
// when it cannot serve.
class PhraseParser {
 public:
  virtual ~PhraseParser() = default;
  virtual std::vector<PhraseSpan> Parse(std::string_view text, std::string_view lang) const = 0;
  virtual std::string id() const = 0;
};

struct CandidatePool {
  std::vector<std::string> phrases;  // normalized, deduplicated, full text first
  std::string source;
  std::string origin;  // "parse", "sidecar" or "fallback"
};

// Normalized form used for pool entries. Falls back to the collapsed text
// when normalization strips everything (" . " -> ".").
std::string NormalizeCandidate(std::string_view s);

// With a tree: the maximal NP/VP constituents. Without: sentences,
// comma/semicolon/"and" segments and capitalized token runs. The full
// normalized output is always the first phrase.
CandidatePool ExtractCandidates(std::string_view output, const ParseTree* parse = nullptr);
CandidatePool ExtractCandidates(std::string_view output,
                                const std::vector<PhraseSpan>& phrases);
CandidatePool ExtractFallbackCandidates(std::string_view output);

// Enumeration segments (list items, comma/semicolon/"and" chains) used as
// the asserted answers for F1.
std::vector<std::string> EnumerationSegments(std::string_view output);

}  // namespace kbqa

#endif  // KBQA_CANDIDATES_H_
