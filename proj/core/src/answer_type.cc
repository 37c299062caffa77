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

#include <algorithm>
#include <map>
#include <set>

#include "kbqa/error.h"
#include "kbqa/native_tags.h"
#include "kbqa/typed_values.h"

namespace kbqa {
namespace {

using WordSet = std::set<std::string, std::less<>>;

const WordSet& OrgCues() {
  static const WordSet kCues = {
      "inc", "corp", "corporation", "company", "co", "ltd", "llc", "plc",
      "university", "college", "institute", "association", "party", "club",
      "fc", "records", "airlines", "airways", "bank", "group", "foundation",
      "society", "agency", "council", "committee", "ministry", "department",
      "organization", "organisation", "union", "league", "army", "navy",
      "orchestra", "studios", "studio", "press", "network", "church",
      "school", "academy", "federation", "team", "entertainment", "motors",
      "band", "museum", "hospital", "parliament", "senate", "court",
      "commission", "bureau", "office", "administration", "systems",
      "technologies", "industries", "holdings", "pictures", "broadcasting"};
  return kCues;
}

const WordSet& LocCues() {
  static const WordSet kCues = {
      "city", "river", "mountain", "mountains", "mount", "lake", "island",
      "islands", "county", "province", "ocean", "sea", "bay", "valley",
      "desert", "street", "avenue", "kingdom", "republic", "empire",
      "peninsula", "canyon", "strait", "gulf", "coast", "region", "district",
      "village", "town", "prefecture", "territory", "forest", "falls",
      "airport", "square", "bridge", "harbor", "harbour", "park", "range",
      "basin", "plateau", "oblast", "state", "states"};
  return kCues;
}

// Lowercased single and multi-word place names.
const WordSet& PlaceGazetteer() {
  static const WordSet kPlaces = {
      "africa", "asia", "europe", "antarctica", "australia", "oceania",
      "north america", "south america", "america", "afghanistan", "albania",
      "algeria", "argentina", "armenia", "austria", "bangladesh", "belgium",
      "bolivia", "brazil", "bulgaria", "cambodia", "cameroon", "canada",
      "chile", "china", "colombia", "croatia", "cuba", "czech republic",
      "denmark", "egypt", "england", "estonia", "ethiopia", "finland",
      "france", "germany", "ghana", "greece", "hungary", "iceland", "india",
      "indonesia", "iran", "iraq", "ireland", "israel", "italy", "jamaica",
      "japan", "jordan", "kenya", "korea", "north korea", "south korea",
      "latvia", "lebanon", "libya", "lithuania", "luxembourg", "malaysia",
      "mexico", "mongolia", "morocco", "nepal", "netherlands", "new zealand",
      "nigeria", "norway", "pakistan", "peru", "philippines", "poland",
      "portugal", "romania", "russia", "saudi arabia", "scotland", "serbia",
      "singapore", "slovakia", "slovenia", "south africa", "spain",
      "sri lanka", "sudan", "sweden", "switzerland", "syria", "taiwan",
      "thailand", "tunisia", "turkey", "uganda", "ukraine", "united kingdom",
      "united states", "united states of america", "usa", "uk", "uruguay",
      "venezuela", "vietnam", "wales", "yemen", "zimbabwe", "alabama",
      "alaska", "arizona", "california", "colorado", "florida", "georgia",
      "hawaii", "illinois", "indiana", "kansas", "kentucky", "louisiana",
      "massachusetts", "michigan", "minnesota", "mississippi", "missouri",
      "montana", "nevada", "new jersey", "new mexico", "new york", "ohio",
      "oklahoma", "oregon", "pennsylvania", "tennessee", "texas", "utah",
      "vermont", "virginia", "washington", "wisconsin", "wyoming", "amsterdam",
      "athens", "bangkok", "barcelona", "beijing", "berlin", "boston",
      "brussels", "budapest", "buenos aires", "cairo", "chicago", "delhi",
      "dublin", "dubai", "edinburgh", "hong kong", "houston", "istanbul",
      "jakarta", "jerusalem", "lisbon", "london", "los angeles", "madrid",
      "manchester", "melbourne", "miami", "milan", "montreal", "moscow",
      "mumbai", "munich", "nairobi", "new delhi", "oslo", "paris",
      "philadelphia", "prague", "rio de janeiro", "rome", "san francisco",
      "seattle", "seoul", "shanghai", "stockholm", "sydney", "tokyo",
      "toronto", "vancouver", "venice", "vienna", "warsaw", "zurich",
      "himalayas", "alps", "sahara", "amazon", "nile", "mississippi river",
      "pacific", "atlantic", "mediterranean", "everest"};
  return kPlaces;
}

const WordSet& Honorifics() {
  static const WordSet kWords = {"mr", "mrs", "ms", "dr", "sir", "lord",
                                 "lady", "king", "queen", "president",
                                 "prince", "princess", "pope", "saint",
                                 "general", "captain", "professor", "prof"};
  return kWords;
}

const WordSet& GivenNames() {
  static const WordSet kNames = {
      "john", "james", "robert", "michael", "william", "david", "richard",
      "joseph", "thomas", "charles", "mary", "patricia", "jennifer", "linda",
      "elizabeth", "barbara", "susan", "jessica", "sarah", "karen", "george",
      "paul", "mark", "donald", "steven", "andrew", "kenneth", "kevin",
      "brian", "edward", "ronald", "anthony", "peter", "henry", "frank",
      "barack", "bill", "hillary", "abraham", "albert", "isaac", "leonardo",
      "wolfgang", "ludwig", "johann", "marie", "anne", "emma", "olivia",
      "sophia", "alice", "victoria", "catherine", "margaret", "helen",
      "martin", "steve", "tom", "jack", "harry", "oliver", "louis", "jean",
      "pierre", "carlos", "juan", "maria", "jose", "luis", "ivan", "vladimir",
      "elvis", "taylor", "justin", "walt", "stephen", "winston", "franklin",
      "theodore", "nelson", "mahatma", "muhammad", "ali", "christopher",
      "daniel", "matthew", "joshua", "ryan", "emily", "grace", "rose", "jane",
      "charlotte", "virginia", "ernest", "leo", "oscar"};
  return kNames;
}

// Lowercase words that may sit inside a proper-name run ("Bank of America").
const WordSet& NameConnectors() {
  static const WordSet kWords = {"of", "de", "du", "la", "le", "von", "van",
                                 "der", "den", "da", "di", "and", "the", "y"};
  return kWords;
}

// Capitalized words that start questions or sentences but are not names.
const WordSet& CapitalizedStopwords() {
  static const WordSet kWords = {
      "who", "what", "when", "where", "which", "why", "how", "whom", "whose",
      "is", "are", "was", "were", "do", "does", "did", "the", "a", "an",
      "in", "on", "at", "of", "name", "list", "give", "tell", "it", "this",
      "that", "there", "can", "could", "would", "should", "has", "have",
      "had", "i", "yes", "no", "and", "or", "but", "for", "to", "from"};
  return kWords;
}

bool StartsUpper(std::string_view word) {
  std::u32string cps = text::DecodeUtf8(word);
  return !cps.empty() && text::IsUpper(cps.front());
}

AnswerType TypeTokens(const std::vector<std::string>& tokens) {
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const auto& t : tokens) lower.push_back(text::ToLower(t));
  std::string joined = text::Join(lower, " ");
  if (PlaceGazetteer().count(joined)) return AnswerType::kLoc;
  for (const auto& w : lower) {
    if (OrgCues().count(w)) return AnswerType::kOrg;
  }
  // A location cue word anywhere but the first position ("Hudson River",
  // "New York City", "Kingdom of Spain" handled by first-word cues below).
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (LocCues().count(lower[i]) && (i > 0 || lower.size() > 1)) {
      return AnswerType::kLoc;
    }
  }
  if (!lower.empty() && Honorifics().count(lower.front()) && lower.size() > 1) {
    return AnswerType::kPer;
  }
  if (!lower.empty() && GivenNames().count(lower.front())) {
    return AnswerType::kPer;
  }
  // Any token that is a known place ("Paris, France").
  for (const auto& w : lower) {
    if (PlaceGazetteer().count(w)) return AnswerType::kLoc;
  }
  return AnswerType::kMisc;
}

}  // namespace

std::vector<EntityMention> RuleNer::Recognize(std::string_view input) const {
  std::vector<EntityMention> out;
  std::vector<text::Span> spans = text::WordSpans(input);
  std::size_t i = 0;
  while (i < spans.size()) {
    std::string_view word = spans[i].View(input);
    bool sentence_initial = i == 0;
    if (!StartsUpper(word) ||
        CapitalizedStopwords().count(text::ToLower(word)) ||
        (sentence_initial && spans.size() > 1 && !StartsUpper(spans[1].View(input)) &&
         !PlaceGazetteer().count(text::ToLower(word)) &&
         !GivenNames().count(text::ToLower(word)))) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    std::size_t last = i;
    while (j < spans.size()) {
      std::string_view w = spans[j].View(input);
      // Names do not span sentence punctuation.
      std::string_view gap =
          input.substr(spans[j - 1].end, spans[j].begin - spans[j - 1].end);
      if (gap.find_first_of(",.;:!?()\"") != std::string_view::npos) break;
      if (StartsUpper(w)) {
        last = j;
        ++j;
        continue;
      }
      if (NameConnectors().count(w) && j + 1 < spans.size() &&
          StartsUpper(spans[j + 1].View(input))) {
        ++j;
        continue;
      }
      break;
    }
    std::vector<std::string> tokens;
    for (std::size_t k = i; k <= last; ++k) {
      tokens.emplace_back(spans[k].View(input));
    }
    text::Span span{spans[i].begin, spans[last].end};
    out.push_back({std::string(span.View(input)), TypeTokens(tokens), span});
    i = last + 1;
  }
  return out;
}

AnswerType RuleNer::TypePhrase(std::string_view phrase) const {
  std::vector<std::string> tokens = text::Words(phrase);
  if (tokens.empty()) return AnswerType::kMisc;
  return TypeTokens(tokens);
}

AnswerTypeResult ClassifyAnswerType(std::string_view question,
                                    const std::vector<std::string>& gold_answers,
                                    const std::optional<NativeAnswerTag>& native_tag,
                                    const NerProvider* ner) {
  if (text::TrimSpace(question).empty()) {
    throw Error(ErrorCode::kPrecondition, "question must be non-empty");
  }
  if (native_tag) {
    if (auto mapped = NativeTagMapper::Default().MapAnswerTag(
            native_tag->dataset_id, native_tag->tag)) {
      return {*mapped, false, "native"};
    }
  }

  std::vector<std::string> gold;
  for (const auto& g : gold_answers) {
    if (!text::TrimSpace(g).empty()) gold.push_back(g);
  }
  if (!gold.empty()) {
    if (std::all_of(gold.begin(), gold.end(), [](const std::string& g) {
          std::string n = text::NormalizeAnswer(g);
          return n == "yes" || n == "no" || n == "true" || n == "false";
        })) {
      return {AnswerType::kBoolean, false, "boolean"};
    }
    if (std::all_of(gold.begin(), gold.end(),
                    [](const std::string& g) { return ParseNumber(g).has_value(); })) {
      return {AnswerType::kNum, false, "number"};
    }
    if (std::all_of(gold.begin(), gold.end(),
                    [](const std::string& g) { return ParseDate(g).has_value(); })) {
      return {AnswerType::kDate, false, "date"};
    }
  }
  std::string_view q = text::TrimSpace(question);
  std::vector<std::string> first_word = text::Words(q.substr(0, 16));
  if (!first_word.empty() && text::ToLower(first_word.front()) == "why") {
    return {AnswerType::kWhy, false, "why"};
  }
  if (ner == nullptr || gold.empty()) {
    return {AnswerType::kMisc, true, "default"};
  }
  try {
    std::map<AnswerType, int> votes;
    for (const auto& g : gold) {
      std::vector<EntityMention> mentions = ner->Recognize(g);
      if (mentions.empty()) continue;
      // The mention covering most of the answer decides its type.
      auto best = std::max_element(
          mentions.begin(), mentions.end(), [](const auto& a, const auto& b) {
            return a.span.end - a.span.begin < b.span.end - b.span.begin;
          });
      AnswerType t = best->type;
      if (t == AnswerType::kPer || t == AnswerType::kLoc || t == AnswerType::kOrg) {
        ++votes[t];
      }
    }
    if (votes.empty()) return {AnswerType::kMisc, false, "ner"};
    auto winner = std::max_element(
        votes.begin(), votes.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    return {winner->first, false, "ner"};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnavailable) throw;
    return {AnswerType::kMisc, true, "default"};
  }
}

}  // namespace kbqa
