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

#include <algorithm>

namespace kbqa::text {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool InRange(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) AppendUtf8(cp, out);
  return out;
}

char32_t ToLower(char32_t cp) {
  if (InRange(cp, 'A', 'Z')) return cp + 32;
  if (cp < 0xC0) return cp;
  if ((InRange(cp, 0xC0, 0xDE)) && cp != 0xD7) return cp + 32;
  // Latin Extended-A: upper/lower pairs alternate.
  if (InRange(cp, 0x100, 0x137) || InRange(cp, 0x14A, 0x177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (InRange(cp, 0x139, 0x148) || InRange(cp, 0x179, 0x17E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  // Latin Extended Additional (Vietnamese etc.).
  if (InRange(cp, 0x1E00, 0x1EFF)) return (cp % 2 == 0) ? cp + 1 : cp;
  // Greek.
  if (InRange(cp, 0x391, 0x3A9) && cp != 0x3A2) return cp + 32;
  if (cp == 0x386) return 0x3AC;
  if (InRange(cp, 0x388, 0x38A)) return cp + 37;
  // Cyrillic.
  if (InRange(cp, 0x410, 0x42F)) return cp + 32;
  if (InRange(cp, 0x400, 0x40F)) return cp + 80;
  if (InRange(cp, 0x460, 0x481) || InRange(cp, 0x48A, 0x4BF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  // Fullwidth Latin.
  if (InRange(cp, 0xFF21, 0xFF3A)) return cp + 32;
  return cp;
}

char32_t ToUpper(char32_t cp) {
  if (InRange(cp, 'a', 'z')) return cp - 32;
  if (cp < 0xE0) return cp;
  if (InRange(cp, 0xE0, 0xFE) && cp != 0xF7) return cp - 32;
  if (InRange(cp, 0x3B1, 0x3C9) && cp != 0x3C2) return cp - 32;
  if (InRange(cp, 0x430, 0x44F)) return cp - 32;
  if (InRange(cp, 0x450, 0x45F)) return cp - 80;
  return cp;
}

bool IsUpper(char32_t cp) { return ToLower(cp) != cp; }

std::string ToLower(std::string_view s) {
  bool ascii = std::all_of(s.begin(), s.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80;
  });
  if (ascii) {
    std::string out(s);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    return out;
  }
  std::u32string cps = DecodeUtf8(s);
  for (char32_t& cp : cps) cp = ToLower(cp);
  return EncodeUtf8(cps);
}

std::string ToUpperAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  }
  return out;
}

bool IsSpace(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0xA0 || cp == 0x3000 || InRange(cp, 0x2000, 0x200B) ||
         cp == 0x202F || cp == 0x205F || cp == 0xFEFF;
}

bool IsPunct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return cp == 0xA1 || cp == 0xA7 || cp == 0xAB || cp == 0xB6 || cp == 0xB7 ||
         cp == 0xBB || cp == 0xBF || InRange(cp, 0x2010, 0x2027) ||
         InRange(cp, 0x2030, 0x205E) || InRange(cp, 0x3001, 0x3003) ||
         InRange(cp, 0x3008, 0x3011) || InRange(cp, 0x3014, 0x301F) ||
         InRange(cp, 0xFF01, 0xFF0F) || InRange(cp, 0xFF1A, 0xFF20) ||
         InRange(cp, 0xFF3B, 0xFF40) || InRange(cp, 0xFF5B, 0xFF65) ||
         cp == 0x60C || cp == 0x61B || cp == 0x61F || cp == 0x6D4 ||
         cp == 0x964 || cp == 0x965;
}

bool IsDigit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsCjk(char32_t cp) {
  return InRange(cp, 0x4E00, 0x9FFF) || InRange(cp, 0x3400, 0x4DBF) ||
         InRange(cp, 0x3040, 0x30FF) || InRange(cp, 0xAC00, 0xD7AF) ||
         InRange(cp, 0xF900, 0xFAFF) || InRange(cp, 0x20000, 0x2A6DF);
}

bool IsLetter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  return !IsSpace(cp) && !IsPunct(cp) && cp != kReplacement &&
         !InRange(cp, 0x80, 0x9F);
}

std::string_view TrimSpace(std::string_view s) {
  auto is_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ws(s[b])) ++b;
  while (e > b && is_ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string CollapseSpace(std::string_view s) {
  std::u32string cps = DecodeUtf8(s);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (IsSpace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(cp);
  }
  return EncodeUtf8(out);
}

std::string NormalizeAnswer(std::string_view s) {
  std::u32string cps = DecodeUtf8(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && (IsSpace(cps[b]) || IsPunct(cps[b]))) ++b;
  while (e > b && (IsSpace(cps[e - 1]) || IsPunct(cps[e - 1]))) --e;
  std::u32string out;
  out.reserve(e - b);
  bool pending_space = false;
  for (std::size_t i = b; i < e; ++i) {
    char32_t cp = cps[i];
    if (IsSpace(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ToLower(cp));
  }
  return EncodeUtf8(out);
}

std::vector<Span> WordSpans(std::string_view s) {
  std::vector<Span> spans;
  std::size_t i = 0;
  auto decode_at = [&](std::size_t pos, std::size_t& len) -> char32_t {
    auto b0 = static_cast<unsigned char>(s[pos]);
    len = b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
    if (pos + len > s.size()) len = s.size() - pos;
    std::u32string cp = DecodeUtf8(s.substr(pos, len));
    return cp.empty() ? kReplacement : cp.front();
  };
  auto is_word = [](char32_t cp) { return IsLetter(cp) || IsDigit(cp); };
  while (i < s.size()) {
    std::size_t len = 0;
    char32_t cp = decode_at(i, len);
    if (!is_word(cp)) {
      i += len;
      continue;
    }
    std::size_t begin = i;
    std::size_t end = i + len;
    char32_t prev = cp;
    std::size_t j = end;
    while (j < s.size()) {
      std::size_t l = 0;
      char32_t c = decode_at(j, l);
      if (is_word(c)) {
        end = j + l;
        prev = c;
        j = end;
        continue;
      }
      if ((c == '\'' || c == '-' || c == 0x2019) && IsLetter(prev) &&
          j + l < s.size()) {
        std::size_t l2 = 0;
        char32_t next = decode_at(j + l, l2);
        if (IsLetter(next)) {
          end = j + l + l2;
          prev = next;
          j = end;
          continue;
        }
      }
      break;
    }
    spans.push_back({begin, end});
    i = end;
  }
  return spans;
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> out;
  for (const Span& span : WordSpans(s)) out.emplace_back(span.View(s));
  return out;
}

std::vector<std::string> SplitSentences(std::string_view s) {
  std::vector<std::string> out;
  std::u32string cps = DecodeUtf8(s);
  std::u32string current;
  auto flush = [&] {
    std::string sentence(TrimSpace(EncodeUtf8(current)));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    current.push_back(cp);
    bool terminal = cp == '!' || cp == '?' || cp == 0x3002 || cp == 0xFF01 ||
                    cp == 0xFF1F || cp == '\n';
    if (cp == '.') {
      // A period ends a sentence only when followed by space/end and the
      // previous token is not a single capital (initials like "J. R.").
      bool next_space = i + 1 >= cps.size() || IsSpace(cps[i + 1]);
      bool initial = i >= 1 && IsUpper(cps[i - 1]) &&
                     (i < 2 || IsSpace(cps[i - 2]) || cps[i - 2] == '.');
      bool decimal = i >= 1 && i + 1 < cps.size() && IsDigit(cps[i - 1]) &&
                     IsDigit(cps[i + 1]);
      terminal = next_space && !initial && !decimal;
    }
    if (terminal) flush();
  }
  flush();
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return ToLower(a) == ToLower(b);
}

bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return ToLower(s.substr(0, prefix.size())) == ToLower(prefix);
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::size_t CodePointToByteOffset(std::string_view s, std::size_t cp_offset) {
  std::size_t byte = 0;
  std::size_t cps = 0;
  while (byte < s.size() && cps < cp_offset) {
    auto b0 = static_cast<unsigned char>(s[byte]);
    std::size_t len =
        b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
    byte = std::min(s.size(), byte + len);
    ++cps;
  }
  return byte;
}

}  // namespace kbqa::text
