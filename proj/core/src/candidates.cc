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

#include "kbqa/candidates.h"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "kbqa/error.h"

namespace kbqa {
namespace {

bool IsWs(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class BracketParser {
 public:
  explicit BracketParser(std::string_view s) : s_(s) {}

  ParseTree ParseNode() {
    SkipWs();
    Expect('(');
    ParseTree node;
    SkipWs();
    node.label = ReadAtom();
    for (;;) {
      SkipWs();
      if (pos_ >= s_.size()) Fail("unbalanced brackets");
      if (s_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '(') {
        node.children.push_back(ParseNode());
      } else {
        ParseTree leaf;
        leaf.word = ReadAtom();
        node.children.push_back(std::move(leaf));
      }
    }
    if (node.label.empty() && node.children.empty()) Fail("empty constituent");
    if (node.label.empty()) node.label = "ROOT";
    return node;
  }

  void Finish() {
    SkipWs();
    if (pos_ != s_.size()) Fail("trailing input");
  }

 private:
  void SkipWs() {
    while (pos_ < s_.size() && IsWs(s_[pos_])) ++pos_;
  }
  void Expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string ReadAtom() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && !IsWs(s_[pos_]) && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void Fail(const std::string& what) {
    throw Error(ErrorCode::kParse, "bracketed parse: " + what, std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string BaseLabel(std::string_view label) {
  auto cut = label.find_first_of("-=");
  if (cut == 0 || cut == std::string_view::npos) return std::string(label);
  return std::string(label.substr(0, cut));
}

std::vector<std::string> LeafForms(std::string_view word) {
  static const std::array<std::pair<std::string_view, std::string_view>, 6> kBrackets = {{
      {"-LRB-", "("}, {"-RRB-", ")"}, {"-LCB-", "{"},
      {"-RCB-", "}"}, {"-LSB-", "["}, {"-RSB-", "]"}}};
  for (const auto& [esc, raw] : kBrackets) {
    if (word == esc) return {std::string(raw)};
  }
  if (word == "``") return {"\"", "“", "``"};
  if (word == "''") return {"\"", "”", "''"};
  if (word == "`") return {"'", "‘", "`"};
  if (word == "'") return {"'", "’"};
  return {std::string(word)};
}

struct AlignedLeaf {
  std::string word;
  std::optional<text::Span> span;
};

void CollectLeaves(const ParseTree& node, std::vector<AlignedLeaf>& out) {
  for (const auto& child : node.children) {
    if (child.leaf()) {
      out.push_back({child.word, std::nullopt});
    } else {
      CollectLeaves(child, out);
    }
  }
}

void Align(std::vector<AlignedLeaf>& leaves, std::string_view source) {
  std::size_t cursor = 0;
  for (auto& leaf : leaves) {
    std::size_t from = cursor;
    while (from < source.size() && IsWs(source[from])) ++from;
    for (const auto& form : LeafForms(leaf.word)) {
      if (source.substr(from, form.size()) == form) {
        leaf.span = text::Span{from, from + form.size()};
        cursor = from + form.size();
        break;
      }
    }
  }
}

void Walk(const ParseTree& node, const std::string& parent_label,
          const std::vector<AlignedLeaf>& leaves, std::size_t& leaf_index,
          std::string_view source, std::vector<PhraseSpan>& out) {
  if (node.leaf()) {
    ++leaf_index;
    return;
  }
  std::string label = BaseLabel(node.label);
  std::size_t first = leaf_index;
  std::size_t out_pos = out.size();
  for (const auto& child : node.children) {
    Walk(child, label, leaves, leaf_index, source, out);
  }
  if ((label == "NP" || label == "VP") && label != parent_label && leaf_index > first) {
    PhraseSpan p;
    p.label = label;
    bool aligned = true;
    for (std::size_t i = first; i < leaf_index; ++i) aligned = aligned && leaves[i].span;
    if (aligned) {
      p.span = {leaves[first].span->begin, leaves[leaf_index - 1].span->end};
      p.text = std::string(p.span.View(source));
    } else {
      std::vector<std::string> words;
      for (std::size_t i = first; i < leaf_index; ++i) words.push_back(leaves[i].word);
      p.text = text::Join(words, " ");
    }
    // Preorder: the parent phrase precedes anything found inside it.
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(out_pos), std::move(p));
  }
}

class PoolBuilder {
 public:
  explicit PoolBuilder(std::string_view output, std::string origin) {
    pool_.source = std::string(output);
    pool_.origin = std::move(origin);
    Add(output);
  }
  void Add(std::string_view phrase) {
    std::string norm = pool_.phrases.empty() ? NormalizeCandidate(phrase)
                                             : text::NormalizeAnswer(phrase);
    if (norm.empty() || !seen_.insert(norm).second) return;
    pool_.phrases.push_back(std::move(norm));
  }
  CandidatePool Take() { return std::move(pool_); }

 private:
  CandidatePool pool_;
  std::set<std::string> seen_;
};

// Splits at ',', ';' and the word "and".
std::vector<std::string_view> SplitSegments(std::string_view sentence) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  std::size_t i = 0;
  auto push = [&](std::size_t end) {
    if (end > start) parts.push_back(sentence.substr(start, end - start));
  };
  while (i < sentence.size()) {
    char c = sentence[i];
    if (c == ',' || c == ';') {
      push(i);
      start = ++i;
      continue;
    }
    if ((c == 'a' || c == 'A') && (i == 0 || IsWs(sentence[i - 1])) &&
        text::EqualsIgnoreCase(sentence.substr(i, 3), "and") &&
        (i + 3 == sentence.size() || IsWs(sentence[i + 3]))) {
      push(i);
      i += 3;
      start = i;
      continue;
    }
    ++i;
  }
  push(sentence.size());
  return parts;
}

bool HasConjunction(std::string_view sentence) {
  std::string lower = text::ToLower(sentence);
  return lower.find(" and ") != std::string::npos || lower.find(';') != std::string::npos;
}

const std::set<std::string, std::less<>>& SentenceInitialWords() {
  static const std::set<std::string, std::less<>> kWords = {
      "the", "a", "an", "it", "its", "this", "that", "these", "those", "there",
      "i", "he", "she", "they", "we", "you", "yes", "no", "in", "on", "at",
      "as", "according", "based", "however", "so", "here", "his", "her", "their"};
  return kWords;
}

bool AtSentenceStart(std::string_view s, std::size_t begin) {
  while (begin > 0) {
    char c = s[begin - 1];
    if (IsWs(c) || c == '"' || c == '\'' || c == '(') {
      --begin;
      continue;
    }
    return c == '.' || c == '!' || c == '?' || c == ':' || c == '\n';
  }
  return true;
}

const std::set<std::string, std::less<>>& NameParticles() {
  static const std::set<std::string, std::less<>> kWords = {
      "da", "de", "del", "della", "der", "di", "du", "van", "von", "den",
      "la", "le", "bin", "ibn", "al", "of", "y"};
  return kWords;
}

bool StartsUpperWord(std::string_view word) {
  auto cp = text::DecodeUtf8(word.substr(0, 4));
  return !cp.empty() && text::IsUpper(cp[0]);
}

void AddCapitalizedRuns(std::string_view output, PoolBuilder& pool) {
  auto spans = text::WordSpans(output);
  auto spaced = [&](std::size_t j) {
    std::string_view gap = output.substr(spans[j - 1].end, spans[j].begin - spans[j - 1].end);
    return !gap.empty() && std::all_of(gap.begin(), gap.end(), IsWs);
  };
  std::size_t i = 0;
  while (i < spans.size()) {
    if (!StartsUpperWord(spans[i].View(output))) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < spans.size() && spaced(j)) {
      std::string_view word = spans[j].View(output);
      if (StartsUpperWord(word)) {
        ++j;
        continue;
      }
      // "Leonardo da Vinci", "Kingdom of Spain": a particle joins two
      // capitalized words.
      if (NameParticles().count(word) && j + 1 < spans.size() && spaced(j + 1) &&
          StartsUpperWord(spans[j + 1].View(output))) {
        j += 2;
        continue;
      }
      break;
    }
    const bool function_start =
        AtSentenceStart(output, spans[i].begin) &&
        SentenceInitialWords().count(text::ToLower(spans[i].View(output)));
    if (!function_start || j > i + 1) {
      pool.Add(output.substr(spans[i].begin, spans[j - 1].end - spans[i].begin));
    }
    if (function_start && j > i + 1) {
      pool.Add(output.substr(spans[i + 1].begin, spans[j - 1].end - spans[i + 1].begin));
    }
    i = j;
  }
}

bool IsListMarkerLine(std::string_view line, std::string_view& item) {
  line = text::TrimSpace(line);
  if (line.empty()) return false;
  if (line[0] == '-' || line[0] == '*' || line.starts_with("•")) {
    std::size_t skip = line.starts_with("•") ? 3 : 1;
    item = text::TrimSpace(line.substr(skip));
    return !item.empty();
  }
  std::size_t d = 0;
  while (d < line.size() && line[d] >= '0' && line[d] <= '9') ++d;
  if (d > 0 && d < line.size() && (line[d] == '.' || line[d] == ')')) {
    item = text::TrimSpace(line.substr(d + 1));
    return !item.empty();
  }
  return false;
}

}  // namespace

ParseTree ParseBracketed(std::string_view ptb) {
  BracketParser parser(ptb);
  ParseTree tree = parser.ParseNode();
  parser.Finish();
  return tree;
}

std::vector<PhraseSpan> MaximalPhrases(const ParseTree& tree, std::string_view source) {
  std::vector<AlignedLeaf> leaves;
  if (tree.leaf()) return {};
  CollectLeaves(tree, leaves);
  Align(leaves, source);
  std::vector<PhraseSpan> out;
  std::size_t leaf_index = 0;
  Walk(tree, "", leaves, leaf_index, source, out);
  return out;
}

std::string NormalizeCandidate(std::string_view s) {
  std::string norm = text::NormalizeAnswer(s);
  if (norm.empty()) norm = text::ToLower(text::CollapseSpace(s));
  return norm;
}

CandidatePool ExtractCandidates(std::string_view output, const ParseTree* parse) {
  if (!parse) return ExtractFallbackCandidates(output);
  PoolBuilder pool(output, "parse");
  for (const auto& p : MaximalPhrases(*parse, output)) pool.Add(p.text);
  return pool.Take();
}

CandidatePool ExtractCandidates(std::string_view output,
                                const std::vector<PhraseSpan>& phrases) {
  PoolBuilder pool(output, "sidecar");
  for (const auto& p : phrases) {
    if (p.span.end > p.span.begin && p.span.end <= output.size()) {
      pool.Add(p.span.View(output));
    } else {
      pool.Add(p.text);
    }
  }
  return pool.Take();
}

CandidatePool ExtractFallbackCandidates(std::string_view output) {
  PoolBuilder pool(output, "fallback");
  for (const auto& sentence : text::SplitSentences(output)) {
    pool.Add(sentence);
    for (auto segment : SplitSegments(sentence)) pool.Add(segment);
  }
  AddCapitalizedRuns(output, pool);
  return pool.Take();
}

std::vector<std::string> EnumerationSegments(std::string_view output) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= output.size()) {
    std::size_t end = output.find('\n', start);
    if (end == std::string_view::npos) end = output.size();
    std::string_view item;
    if (IsListMarkerLine(output.substr(start, end - start), item)) {
      std::string norm = text::NormalizeAnswer(item);
      if (!norm.empty()) items.push_back(std::move(norm));
    }
    start = end + 1;
  }
  if (items.size() >= 2) return items;

  std::vector<std::string> best;
  for (const auto& sentence : text::SplitSentences(output)) {
    std::vector<std::string> segs;
    if (HasConjunction(sentence)) {
      for (auto part : SplitSegments(sentence)) {
        std::string norm = text::NormalizeAnswer(part);
        if (!norm.empty()) segs.push_back(std::move(norm));
      }
    }
    if (segs.empty()) {
      std::string norm = text::NormalizeAnswer(sentence);
      if (!norm.empty()) segs.push_back(std::move(norm));
    }
    if (segs.size() > best.size()) best = std::move(segs);
  }
  return best;
}

}  // namespace kbqa
