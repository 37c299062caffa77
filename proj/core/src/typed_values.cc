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

#include "kbqa/typed_values.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "kbqa/text.h"

namespace kbqa {
namespace {

const std::map<std::string, int, std::less<>>& MonthNames() {
  static const std::map<std::string, int, std::less<>> kMonths = {
      {"january", 1}, {"jan", 1},  {"february", 2}, {"feb", 2},
      {"march", 3},   {"mar", 3},  {"april", 4},    {"apr", 4},
      {"may", 5},     {"june", 6}, {"jun", 6},      {"july", 7},
      {"jul", 7},     {"august", 8}, {"aug", 8},    {"september", 9},
      {"sep", 9},     {"sept", 9}, {"october", 10}, {"oct", 10},
      {"november", 11}, {"nov", 11}, {"december", 12}, {"dec", 12}};
  return kMonths;
}

const std::map<std::string, int, std::less<>>& NumberWords() {
  static const std::map<std::string, int, std::less<>> kWords = {
      {"zero", 0},     {"one", 1},        {"two", 2},       {"three", 3},
      {"four", 4},     {"five", 5},       {"six", 6},       {"seven", 7},
      {"eight", 8},    {"nine", 9},       {"ten", 10},      {"eleven", 11},
      {"twelve", 12},  {"thirteen", 13},  {"fourteen", 14}, {"fifteen", 15},
      {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20},  {"thirty", 30},    {"forty", 40},    {"fifty", 50},
      {"sixty", 60},   {"seventy", 70},   {"eighty", 80},   {"ninety", 90},
      {"hundred", 100}, {"thousand", 1000}};
  return kWords;
}

std::optional<int> MonthFromWord(std::string_view word) {
  std::string lower = text::ToLower(word);
  auto it = MonthNames().find(lower);
  if (it == MonthNames().end()) return std::nullopt;
  return it->second;
}

std::optional<double> NumberFromWord(std::string_view word) {
  std::string lower = text::ToLower(word);
  auto it = NumberWords().find(lower);
  if (it != NumberWords().end()) return it->second;
  auto dash = lower.find('-');
  if (dash == std::string::npos) return std::nullopt;
  auto tens = NumberWords().find(lower.substr(0, dash));
  auto units = NumberWords().find(lower.substr(dash + 1));
  if (tens == NumberWords().end() || units == NumberWords().end()) {
    return std::nullopt;
  }
  if (tens->second < 20 || tens->second % 10 != 0 || units->second > 9 ||
      units->second == 0) {
    return std::nullopt;
  }
  return tens->second + units->second;
}

bool IsDigitAt(std::string_view s, std::size_t k) {
  return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]));
}

// Parses a numeral starting at s[i]; returns chars consumed (0 if none).
std::size_t ScanNumeral(std::string_view s, std::size_t i, double& value) {
  std::size_t j = i;
  bool negative = false;
  if (j < s.size() && (s[j] == '-' || s[j] == '+')) {
    negative = s[j] == '-';
    ++j;
  }
  std::size_t digits_begin = j;
  std::string cleaned;
  while (IsDigitAt(s, j)) {
    cleaned.push_back(s[j]);
    ++j;
    // Thousands separator: a comma followed by exactly three digits.
    if (j < s.size() && s[j] == ',' && IsDigitAt(s, j + 1) &&
        IsDigitAt(s, j + 2) && IsDigitAt(s, j + 3) && !IsDigitAt(s, j + 4)) {
      ++j;
    }
  }
  if (j == digits_begin) return 0;
  if (j + 1 < s.size() && s[j] == '.' &&
      std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
    cleaned.push_back('.');
    ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
      cleaned.push_back(s[j]);
      ++j;
    }
  }
  if (j + 1 < s.size() && (s[j] == 'e' || s[j] == 'E')) {
    std::size_t k = j + 1;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
    if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
      cleaned.append(s.substr(j, k - j));
      j = k;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        cleaned.push_back(s[j]);
        ++j;
      }
    }
  }
  double v = 0;
  auto res = std::from_chars(cleaned.data(), cleaned.data() + cleaned.size(), v);
  if (res.ec != std::errc()) return 0;
  value = negative ? -v : v;
  return j - i;
}

bool ValidDay(int year, int month, int day) {
  static constexpr std::array<int, 12> kDays = {31, 29, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  (void)year;
  return month >= 1 && month <= 12 && day >= 1 && day <= kDays[month - 1];
}

std::optional<int> ParseInt(std::string_view s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

// ISO-like "YYYY-MM-DD", "YYYY-MM", optional "+" and time suffix.
std::optional<DateValue> ParseIso(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto t = s.find('T');
  if (t != std::string_view::npos) s = s.substr(0, t);
  if (s.size() != 7 && s.size() != 10) return std::nullopt;
  if (s[4] != '-') return std::nullopt;
  auto year = ParseInt(s.substr(0, 4));
  auto month = ParseInt(s.substr(5, 2));
  if (!year || !month || *month < 1 || *month > 12) return std::nullopt;
  DateValue d{*year, *month, std::nullopt};
  if (s.size() == 10) {
    if (s[7] != '-') return std::nullopt;
    auto day = ParseInt(s.substr(8, 2));
    if (!day) return std::nullopt;
    // Wikidata encodes month/year precision with zero components.
    if (*day == 0) return d;
    if (!ValidDay(*year, *month, *day)) return std::nullopt;
    d.day = *day;
  }
  return d;
}

bool IsYearWord(std::string_view w) {
  return w.size() == 4 && std::all_of(w.begin(), w.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c));
         });
}

std::optional<int> DayWord(std::string_view w) {
  std::string lower = text::ToLower(w);
  for (std::string_view suffix : {"st", "nd", "rd", "th"}) {
    if (lower.size() > 2 && lower.ends_with(suffix)) {
      lower.resize(lower.size() - 2);
      break;
    }
  }
  auto v = ParseInt(lower);
  if (!v || *v < 1 || *v > 31) return std::nullopt;
  return v;
}

const std::array<std::string_view, 16>& AffirmativeCues() {
  static const std::array<std::string_view, 16> kCues = {
      "yes", "yeah", "yep", "true", "correct", "indeed", "certainly",
      "absolutely", "sure", "affirmative", "ja", "oui", "sí", "si", "sim",
      "да"};
  return kCues;
}

const std::array<std::string_view, 14>& NegativeCues() {
  static const std::array<std::string_view, 14> kCues = {
      "no", "nope", "not", "false", "incorrect", "never", "negative",
      "nein", "non", "não", "nao", "нет", "niet", "nee"};
  return kCues;
}

template <std::size_t N>
bool InList(const std::array<std::string_view, N>& list, std::string_view w) {
  return std::find(list.begin(), list.end(), w) != list.end();
}

}  // namespace

std::string DateValue::ToIso() const {
  char buf[32];
  if (month && day) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, *month, *day);
  } else if (month) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, *month);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d", year);
  }
  return buf;
}

bool DateValue::Satisfies(const DateValue& gold) const {
  if (year != gold.year) return false;
  if (gold.month && month != gold.month) return false;
  if (gold.day && day != gold.day) return false;
  return true;
}

std::optional<double> ParseNumber(std::string_view s) {
  s = text::TrimSpace(s);
  if (s.empty()) return std::nullopt;
  double value = 0;
  std::size_t used = ScanNumeral(s, 0, value);
  if (used > 0 && used == s.size()) return value;
  if (used == 0) {
    std::vector<std::string> words = text::Words(s);
    if (words.size() == 1 && words[0].size() == s.size()) {
      return NumberFromWord(words[0]);
    }
  }
  return std::nullopt;
}

std::optional<double> ParseNumberLoose(std::string_view s) {
  if (auto v = ParseNumber(s)) return v;
  std::vector<double> found = ExtractNumbers(s);
  if (found.size() == 1) return found.front();
  return std::nullopt;
}

bool NumbersEqual(double a, double b) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

std::vector<double> ExtractNumbers(std::string_view s) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    bool starts_numeral =
        std::isdigit(c) ||
        ((c == '-' || c == '+') && i + 1 < s.size() &&
         std::isdigit(static_cast<unsigned char>(s[i + 1])) &&
         (i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]))));
    bool inside_word = i > 0 && std::isalpha(static_cast<unsigned char>(s[i - 1]));
    if (starts_numeral && !inside_word) {
      double v = 0;
      std::size_t used = ScanNumeral(s, i, v);
      if (used > 0) {
        out.push_back(v);
        i += used;
        continue;
      }
    }
    ++i;
  }
  for (const std::string& w : text::Words(s)) {
    if (std::isdigit(static_cast<unsigned char>(w[0]))) continue;
    if (auto v = NumberFromWord(w)) out.push_back(*v);
  }
  return out;
}

std::optional<DateValue> ParseDate(std::string_view s) {
  s = text::TrimSpace(s);
  if (s.empty()) return std::nullopt;
  if (auto iso = ParseIso(s)) return iso;
  std::vector<std::string> words = text::Words(s);
  if (words.size() == 1 && IsYearWord(words[0]) && words[0].size() == s.size()) {
    return DateValue{*ParseInt(words[0]), std::nullopt, std::nullopt};
  }
  std::vector<DateValue> found = ExtractDates(s);
  if (found.size() != 1 || !found[0].month) return std::nullopt;
  // Whole-string parse: every word must belong to the date expression.
  for (const std::string& w : words) {
    if (!MonthFromWord(w) && !DayWord(w) && !IsYearWord(w)) {
      return std::nullopt;
    }
  }
  return found[0];
}

std::vector<DateValue> ExtractDates(std::string_view s) {
  std::vector<DateValue> out;
  // ISO forms first.
  for (std::size_t i = 0; i + 7 <= s.size(); ++i) {
    if (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) continue;
    std::size_t len = 0;
    if (i + 10 <= s.size()) {
      if (auto d = ParseIso(s.substr(i, 10))) {
        out.push_back(*d);
        len = 10;
      }
    }
    if (len == 0 && (i + 7 == s.size() ||
                     !std::isdigit(static_cast<unsigned char>(s[i + 7])))) {
      if (s[i + 4] == '-' && (i + 7 == s.size() || s[i + 7] != '-')) {
        if (auto d = ParseIso(s.substr(i, 7))) {
          out.push_back(*d);
          len = 7;
        }
      }
    }
    if (len > 0) i += len - 1;
  }
  if (!out.empty()) return out;

  std::vector<std::string> words = text::Words(s);
  std::vector<bool> used(words.size(), false);
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto month = MonthFromWord(words[i]);
    if (!month) continue;
    if (i + 2 < words.size()) {
      auto day = DayWord(words[i + 1]);
      if (day && IsYearWord(words[i + 2]) && ValidDay(0, *month, *day)) {
        out.push_back({*ParseInt(words[i + 2]), *month, *day});
        used[i] = used[i + 1] = used[i + 2] = true;
        continue;
      }
    }
    if (i >= 1 && i + 1 < words.size() && !used[i - 1]) {
      auto day = DayWord(words[i - 1]);
      if (day && IsYearWord(words[i + 1]) && ValidDay(0, *month, *day)) {
        out.push_back({*ParseInt(words[i + 1]), *month, *day});
        used[i - 1] = used[i] = used[i + 1] = true;
        continue;
      }
    }
    if (i + 1 < words.size() && IsYearWord(words[i + 1])) {
      out.push_back({*ParseInt(words[i + 1]), *month, std::nullopt});
      used[i] = used[i + 1] = true;
    }
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!used[i] && IsYearWord(words[i])) {
      out.push_back({*ParseInt(words[i]), std::nullopt, std::nullopt});
    }
  }
  return out;
}

std::optional<bool> ParseBooleanLiteral(std::string_view s) {
  std::string w = text::NormalizeAnswer(s);
  if (w == "yes" || w == "true") return true;
  if (w == "no" || w == "false") return false;
  if (InList(AffirmativeCues(), w) && w != "correct" && w != "sure") return true;
  if (InList(NegativeCues(), w) && w != "not" && w != "never") return false;
  return std::nullopt;
}

std::optional<bool> DetectPolarity(std::string_view output) {
  std::vector<std::string> words = text::Words(output);
  if (words.empty()) {
    std::string norm = text::NormalizeAnswer(output);
    if (norm == "是" || norm == "对") return true;
    if (norm == "否" || norm == "不" || norm == "不是") return false;
    return std::nullopt;
  }
  std::string first = text::ToLower(words.front());
  if (InList(AffirmativeCues(), first)) return true;
  if (InList(NegativeCues(), first)) return false;
  for (const std::string& w : words) {
    std::string lower = text::ToLower(w);
    if (lower == "yes" || lower == "true") return true;
    if (lower == "no" || lower == "false") return false;
  }
  return std::nullopt;
}

}  // namespace kbqa
