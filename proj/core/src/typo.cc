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

#include "kbqa/typo.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "kbqa/error.h"
#include "kbqa/rng.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

const std::map<char32_t, std::u32string>& KeyNeighbours() {
  static const std::map<char32_t, std::u32string> kMap = [] {
    const std::vector<std::u32string> rows = {U"1234567890", U"qwertyuiop", U"asdfghjkl",
                                              U"zxcvbnm"};
    std::map<char32_t, std::u32string> m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        std::u32string n;
        if (c > 0) n += rows[r][c - 1];
        if (c + 1 < rows[r].size()) n += rows[r][c + 1];
        // Rows are staggered: key c touches c and c+1 above, c-1 and c below.
        if (r > 0) {
          for (std::size_t d : {c, c + 1}) {
            if (d < rows[r - 1].size()) n += rows[r - 1][d];
          }
        }
        if (r + 1 < rows.size()) {
          for (std::size_t d : {c - 1, c}) {
            if (d < rows[r + 1].size()) n += rows[r + 1][d];
          }
        }
        m[rows[r][c]] = n;
      }
    }
    return m;
  }();
  return kMap;
}

const std::set<std::string, std::less<>>& Stopwords() {
  static const std::set<std::string, std::less<>> kWords = {
      "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with", "from",
      "and", "or", "is", "are", "was", "were", "be", "been", "did", "do", "does",
      "has", "have", "had", "what", "which", "who", "whom", "whose", "when",
      "where", "why", "how", "that", "this", "it", "its", "as", "into", "than"};
  return kWords;
}

enum class EditKind { kSubstitute, kTranspose, kDelete };

std::u32string EditToken(std::u32string token, Rng& rng) {
  std::vector<std::size_t> sub_positions;
  std::vector<std::size_t> swap_positions;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (KeyNeighbours().count(text::ToLower(token[i]))) sub_positions.push_back(i);
    if (i + 1 < token.size() && token[i] != token[i + 1]) swap_positions.push_back(i);
  }
  std::vector<EditKind> kinds;
  if (!sub_positions.empty()) kinds.push_back(EditKind::kSubstitute);
  if (!swap_positions.empty()) kinds.push_back(EditKind::kTranspose);
  if (token.size() >= 2 || kinds.empty()) kinds.push_back(EditKind::kDelete);

  switch (kinds[rng.Below(kinds.size())]) {
    case EditKind::kSubstitute: {
      std::size_t i = sub_positions[rng.Below(sub_positions.size())];
      char32_t lower = text::ToLower(token[i]);
      const std::u32string& options = KeyNeighbours().at(lower);
      char32_t repl = options[rng.Below(options.size())];
      token[i] = text::IsUpper(token[i]) ? text::ToUpper(repl) : repl;
      break;
    }
    case EditKind::kTranspose: {
      std::size_t i = swap_positions[rng.Below(swap_positions.size())];
      std::swap(token[i], token[i + 1]);
      break;
    }
    case EditKind::kDelete:
      token.erase(rng.Below(token.size()), 1);
      break;
  }
  return token;
}

}  // namespace

std::size_t TypoEditCount(std::string_view text, double rate) {
  std::size_t words = text::WordSpans(text).size();
  if (words == 0) return 0;
  auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(words)));
  return std::clamp<std::size_t>(k, 1, words);
}

std::string GenTypo(std::string_view input, std::uint64_t seed, double rate) {
  auto spans = text::WordSpans(input);
  if (spans.empty()) throw Error(ErrorCode::kPrecondition, "typo input has no word");
  const std::size_t k = TypoEditCount(input, rate);

  std::vector<std::size_t> content;
  std::vector<std::size_t> function;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    bool stop = Stopwords().count(text::ToLower(spans[i].View(input))) > 0;
    (stop ? function : content).push_back(i);
  }
  Rng rng(seed);
  auto draw = [&rng](std::vector<std::size_t>& pool, std::size_t count,
                     std::vector<std::size_t>& out) {
    for (std::size_t i = 0; i < count && i < pool.size(); ++i) {
      std::size_t j = i + rng.Below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
  };
  std::vector<std::size_t> chosen;
  draw(content, k, chosen);
  if (chosen.size() < k) draw(function, k - chosen.size(), chosen);
  std::sort(chosen.begin(), chosen.end());

  std::string out;
  std::size_t cursor = 0;
  for (std::size_t idx : chosen) {
    const auto& span = spans[idx];
    out.append(input.substr(cursor, span.begin - cursor));
    out += text::EncodeUtf8(EditToken(text::DecodeUtf8(span.View(input)), rng));
    cursor = span.end;
  }
  out.append(input.substr(cursor));
  return out;
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  std::u32string x = text::DecodeUtf8(a);
  std::u32string y = text::DecodeUtf8(b);
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

}  // namespace kbqa
