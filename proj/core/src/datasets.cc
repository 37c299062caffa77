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

#include "kbqa/datasets.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "kbqa/error.h"
#include "kbqa/reasoning.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

using nlohmann::json;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string(), path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string AsString(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return {};
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  return j.dump();
}

std::string IdOf(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  return j.dump();
}

// Last path segment of a KB URI, with underscores as spaces.
std::string LabelFromUri(std::string_view uri) {
  auto slash = uri.find_last_of("/#");
  std::string_view tail = slash == std::string_view::npos ? uri : uri.substr(slash + 1);
  std::string out;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    char c = tail[i];
    if (c == '_') {
      out += ' ';
    } else if (c == '%' && i + 2 < tail.size() &&
               std::isxdigit(static_cast<unsigned char>(tail[i + 1])) &&
               std::isxdigit(static_cast<unsigned char>(tail[i + 2]))) {
      out += static_cast<char>(std::stoi(std::string(tail.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += c;
    }
  }
  return out;
}

bool IsUri(std::string_view s) {
  return s.starts_with("http://") || s.starts_with("https://");
}

std::optional<std::string> WikidataId(std::string_view uri) {
  auto pos = uri.find("wikidata.org/entity/");
  if (pos == std::string_view::npos) return std::nullopt;
  return std::string(uri.substr(pos + 20));
}

ReferenceAnswer UriAnswer(const std::string& value) {
  ReferenceAnswer ref;
  ref.canonical = LabelFromUri(value);
  if (auto qid = WikidataId(value)) {
    ref.entity_id = *qid;
  } else {
    ref.entity_id = value;
  }
  return ref;
}

ReferenceAnswer ValueAnswer(std::string value) {
  ReferenceAnswer ref;
  if (IsUri(value)) return UriAnswer(value);
  ref.canonical = std::move(value);
  return ref;
}

// Native aliases are kept with the canonical first so the store invariant
// (canonical in aliases when non-empty) holds before expansion.
void SetNativeAliases(ReferenceAnswer& ref, const json& aliases) {
  if (!aliases.is_array() || aliases.empty()) return;
  ref.aliases.push_back(ref.canonical);
  for (const auto& a : aliases) {
    if (!a.is_string()) continue;
    auto s = a.get<std::string>();
    if (!s.empty() && std::find(ref.aliases.begin(), ref.aliases.end(), s) ==
                          ref.aliases.end()) {
      ref.aliases.push_back(std::move(s));
    }
  }
}

std::string NameOf(const json& e, std::size_t index, const char* id_field) {
  if (e.is_object() && e.contains(id_field)) return IdOf(e.at(id_field));
  return "#" + std::to_string(index);
}

// Scans one JSON value starting at `pos`; returns the end offset or npos
// when the value is cut off.
std::size_t ScanValue(std::string_view s, std::size_t pos) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = pos; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
        if (depth == 0) return i + 1;
      }
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '{': case '[': ++depth; break;
      case '}': case ']':
        if (--depth == 0) return i + 1;
        if (depth < 0) return i;
        break;
      case ',':
        if (depth == 0) return i;
        break;
      default: break;
    }
  }
  return std::string_view::npos;
}

void ForEachElement(const json& items, std::size_t& index, const char* id_field,
                    ReaderSink& sink, const std::function<void(const json&)>& fn) {
  for (const auto& e : items) {
    std::size_t i = index++;
    try {
      fn(e);
    } catch (const json::exception& ex) {
      sink.Skip(NameOf(e, i, id_field), ex.what());
    } catch (const Error& ex) {
      sink.Skip(NameOf(e, i, id_field), ex.what());
    }
  }
}

// KQA Pro: [{question, sparql, program:[{function,...}], answer}].
class KqaProReader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kKqaPro; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"questions", "data"});
    if (parsed.truncated) sink.Warn("kqapro: truncated file, salvaged complete records");
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "id", sink, [&](const json& e) {
      RawQuestion q;
      q.native_id = e.contains("id") ? IdOf(e.at("id")) : std::to_string(index - 1);
      q.text = e.at("question").get<std::string>();
      if (e.contains("sparql") && e.at("sparql").is_string()) q.sparql = e.at("sparql");
      json functions = json::array();
      for (const auto& step : e.value("program", json::array())) {
        functions.push_back(step.at("function"));
      }
      q.native = {{"functions", functions}};
      if (e.contains("answer") && !e.at("answer").is_null()) {
        q.gold.push_back(ValueAnswer(AsString(e.at("answer"))));
      }
      sink.Emit(std::move(q));
    });
  }
};

// LC-QuAD 2.0: [{uid, question, NNQT_question, sparql_wikidata, subgraph,
// template, answer?}]. The public dumps carry no answers; those records are
// skipped unless an answer list has been attached.
class LcQuad2Reader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kLcQuad2; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"questions", "data"});
    if (parsed.truncated) sink.Warn("lcquad2: truncated file, salvaged complete records");
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "uid", sink, [&](const json& e) {
      RawQuestion q;
      q.native_id = IdOf(e.at("uid"));
      std::string text = AsString(e.value("question", json()));
      if (text.empty() || text == "[]") text = AsString(e.value("NNQT_question", json()));
      if (text.empty()) throw Error(ErrorCode::kIngest, "no question text");
      q.text = std::move(text);
      if (e.contains("sparql_wikidata")) q.sparql = e.at("sparql_wikidata").get<std::string>();
      q.native = json::object();
      for (const char* f : {"subgraph", "template"}) {
        if (e.contains(f) && e.at(f).is_string()) q.native[f] = e.at(f);
      }
      for (const auto& a : e.value("answer", json::array())) {
        if (a.is_object()) {
          ReferenceAnswer ref = ValueAnswer(AsString(a.value("label", a.value("value", json()))));
          if (a.contains("id")) ref.entity_id = AsString(a.at("id"));
          q.gold.push_back(std::move(ref));
        } else {
          q.gold.push_back(ValueAnswer(AsString(a)));
        }
      }
      if (q.gold.empty()) throw Error(ErrorCode::kIngest, "no answers in record");
      sink.Emit(std::move(q));
    });
  }
};

// WebQuestionsSP: {"Questions":[{QuestionId, RawQuestion, Parses:[{Sparql,
// Answers:[{AnswerType, AnswerArgument, EntityName}], Constraints, Order}]}]}.
class WqspReader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kWqsp; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"Questions"});
    if (parsed.truncated) sink.Warn("wqsp: truncated file, salvaged complete records");
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "QuestionId", sink, [&](const json& e) {
      RawQuestion q;
      q.native_id = IdOf(e.at("QuestionId"));
      q.text = e.at("RawQuestion").get<std::string>();
      const auto& parses = e.at("Parses");
      if (parses.empty()) throw Error(ErrorCode::kIngest, "no parses");
      const auto& p = parses.at(0);
      if (p.contains("Sparql") && p.at("Sparql").is_string()) q.sparql = p.at("Sparql");
      json features = json::array();
      if (!p.value("Constraints", json::array()).empty()) features.push_back("constraint");
      if (p.contains("Order") && !p.at("Order").is_null()) features.push_back("order");
      q.native = {{"features", features}};
      for (const auto& a : p.value("Answers", json::array())) {
        ReferenceAnswer ref;
        std::string arg = AsString(a.at("AnswerArgument"));
        if (a.value("AnswerType", "") == "Entity") {
          ref.entity_id = arg;
          std::string name = AsString(a.value("EntityName", json()));
          ref.canonical = name.empty() ? arg : name;
        } else {
          ref.canonical = arg;
        }
        q.gold.push_back(std::move(ref));
      }
      if (q.gold.empty()) throw Error(ErrorCode::kIngest, "no answers in first parse");
      sink.Emit(std::move(q));
    });
  }
};

// ComplexWebQuestions: [{ID, question, sparql, compositionality_type,
// answers:[{answer, answer_id, aliases}]}].
class CwqReader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kCwq; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"questions", "data"});
    if (parsed.truncated) sink.Warn("cwq: truncated file, salvaged complete records");
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "ID", sink, [&](const json& e) {
      RawQuestion q;
      q.native_id = IdOf(e.at("ID"));
      q.text = e.at("question").get<std::string>();
      if (e.contains("sparql") && e.at("sparql").is_string()) q.sparql = e.at("sparql");
      q.native = {{"compositionality_type", e.value("compositionality_type", "")}};
      for (const auto& a : e.value("answers", json::array())) {
        ReferenceAnswer ref;
        ref.canonical = AsString(a.at("answer"));
        if (a.contains("answer_id") && a.at("answer_id").is_string()) {
          ref.entity_id = a.at("answer_id").get<std::string>();
        }
        SetNativeAliases(ref, a.value("aliases", json::array()));
        q.gold.push_back(std::move(ref));
      }
      sink.Emit(std::move(q));
    });
  }
};

// Shared by GrailQA and GraphQuestions: [{qid, question, answer, function,
// num_edge, sparql_query}].
class GrailStyleReader : public DatasetReader {
 public:
  explicit GrailStyleReader(DatasetId id) : id_(id) {}
  DatasetId dataset() const override { return id_; }
  void Read(std::string_view content, const std::filesystem::path& source,
            const LoadOptions& options, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"questions", "data"});
    if (parsed.truncated) {
      sink.Warn(std::string(Info(id_).key) + ": truncated file, salvaged complete records");
    }
    std::optional<std::string> file_split;
    if (id_ == DatasetId::kGrailQa && options.split) {
      std::string stem = text::ToLower(source.stem().string());
      for (const char* s : {"train", "dev", "test"}) {
        if (stem.find(s) != std::string::npos) file_split = s;
      }
    }
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "qid", sink, [&](const json& e) {
      if (id_ == DatasetId::kGrailQa && options.split) {
        std::string split = e.contains("split") ? AsString(e.at("split"))
                                                : file_split.value_or(*options.split);
        if (split != *options.split) {
          sink.Filter();
          return;
        }
      }
      RawQuestion q;
      q.native_id = IdOf(e.at("qid"));
      q.text = e.at("question").get<std::string>();
      for (const char* f : {"sparql_query", "sparql"}) {
        if (e.contains(f) && e.at(f).is_string()) {
          q.sparql = e.at(f).get<std::string>();
          break;
        }
      }
      q.native = json::object();
      q.native["function"] = e.contains("function") ? AsString(e.at("function")) : "none";
      if (e.contains("num_edge") && e.at("num_edge").is_number_integer()) {
        q.native["num_edge"] = e.at("num_edge");
      }
      const json answers = e.value("answer", json::array());
      const json mids = e.value("answer_mid", json::array());
      for (std::size_t i = 0; i < answers.size(); ++i) {
        const auto& a = answers[i];
        ReferenceAnswer ref;
        if (a.is_object()) {
          std::string arg = AsString(a.value("answer_argument", json()));
          if (a.value("answer_type", "") == "Entity") {
            ref.entity_id = arg;
            std::string name = AsString(a.value("entity_name", json()));
            ref.canonical = name.empty() ? arg : name;
          } else {
            ref.canonical = arg;
          }
        } else {
          ref.canonical = AsString(a);
          if (i < mids.size() && mids[i].is_string()) ref.entity_id = mids[i].get<std::string>();
        }
        q.gold.push_back(std::move(ref));
      }
      sink.Emit(std::move(q));
    });
  }

 private:
  DatasetId id_;
};

// QALD-9: {"questions":[{id, answertype, aggregation, question:[{language,
// string}], query:{sparql}, answers:[{boolean | results:{bindings}}]}]}.
// One record per question language in the inventory.
class Qald9Reader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kQald9; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    auto parsed = ReadJsonElements(content, {"questions"});
    if (parsed.truncated) sink.Warn("qald9: truncated file, salvaged complete records");
    std::size_t index = 0;
    ForEachElement(parsed.elements, index, "id", sink, [&](const json& e) {
      std::string id = IdOf(e.at("id"));
      std::optional<std::string> sparql;
      if (e.contains("query") && e.at("query").contains("sparql")) {
        sparql = e.at("query").at("sparql").get<std::string>();
      }
      std::vector<ReferenceAnswer> gold;
      for (const auto& ans : e.value("answers", json::array())) {
        if (ans.contains("boolean")) {
          gold.push_back(ValueAnswer(ans.at("boolean").get<bool>() ? "true" : "false"));
          continue;
        }
        if (!ans.contains("results")) continue;
        for (const auto& binding : ans.at("results").value("bindings", json::array())) {
          for (const auto& [var, cell] : binding.items()) {
            std::string value = AsString(cell.at("value"));
            if (cell.value("type", "") == "uri") {
              gold.push_back(UriAnswer(value));
            } else {
              gold.push_back(ValueAnswer(value));
            }
          }
        }
      }
      json native = json::object();
      for (const char* f : {"answertype", "aggregation"}) {
        if (e.contains(f)) native[f] = AsString(e.at(f));
      }
      for (const auto& variant : e.at("question")) {
        LanguageTag lang = LanguageTag::Parse(variant.at("language").get<std::string>());
        std::string text = AsString(variant.value("string", json()));
        if (!lang.InInventory() || text.empty()) {
          sink.Filter();
          continue;
        }
        RawQuestion q;
        q.native_id = id;
        q.text = std::move(text);
        q.lang = lang.code();
        q.gold = gold;
        q.sparql = sparql;
        q.native = native;
        sink.Emit(std::move(q));
      }
    });
  }
};

// MKQA: JSONL, one {example_id, query, queries:{lang: text},
// answers:{lang:[{type, text, aliases, entity}]}} per line.
class MkqaReader : public DatasetReader {
 public:
  DatasetId dataset() const override { return DatasetId::kMkqa; }
  void Read(std::string_view content, const std::filesystem::path&,
            const LoadOptions&, ReaderSink& sink) const override {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < content.size()) {
      std::size_t end = content.find('\n', start);
      if (end == std::string_view::npos) end = content.size();
      std::string_view line = text::TrimSpace(content.substr(start, end - start));
      start = end + 1;
      ++line_no;
      if (line.empty()) continue;
      std::string name = "line " + std::to_string(line_no);
      try {
        json e = json::parse(line);
        name = IdOf(e.at("example_id"));
        EmitVariants(e, sink);
      } catch (const json::exception& ex) {
        sink.Skip(name, ex.what());
      } catch (const Error& ex) {
        sink.Skip(name, ex.what());
      }
    }
  }

 private:
  static void EmitVariants(const json& e, ReaderSink& sink) {
    std::string id = IdOf(e.at("example_id"));
    const auto& queries = e.at("queries");
    const auto& answers = e.at("answers");
    for (const auto& [code, text_json] : queries.items()) {
      LanguageTag lang = LanguageTag::Parse(code);
      if (!lang.InInventory()) {
        sink.Filter();
        continue;
      }
      RawQuestion q;
      q.native_id = id;
      q.text = text_json.get<std::string>();
      q.lang = lang.code();
      std::string native_type;
      if (answers.contains(code)) {
        for (const auto& a : answers.at(code)) {
          if (native_type.empty()) native_type = AsString(a.value("type", json()));
          std::string t = AsString(a.value("text", json()));
          if (t.empty()) continue;
          ReferenceAnswer ref;
          ref.canonical = std::move(t);
          if (a.contains("entity") && a.at("entity").is_string()) {
            ref.entity_id = a.at("entity").get<std::string>();
          }
          SetNativeAliases(ref, a.value("aliases", json::array()));
          q.gold.push_back(std::move(ref));
        }
      }
      q.native = {{"answer_type", native_type}};
      sink.Emit(std::move(q));
    }
  }
};

class CollectingSink : public ReaderSink {
 public:
  CollectingSink(DatasetId id, const LoadOptions& options, IngestReport& report)
      : id_(id), options_(options), report_(report) {}

  void Emit(RawQuestion question) override {
    try {
      report_.records.push_back(TagQuestion(id_, question, options_));
    } catch (const Error& ex) {
      Skip(question.native_id, ex.what());
    }
  }
  void Skip(const std::string& record_name, const std::string& reason) override {
    ++report_.skipped;
    if (!report_.first_error) report_.first_error = record_name + ": " + reason;
    spdlog::debug("{}: skipped {}: {}", Info(id_).key, record_name, reason);
  }
  void Filter() override { ++report_.filtered; }
  void Warn(const std::string& message) override {
    report_.warnings.push_back(message);
    spdlog::warn("{}", message);
  }

 private:
  DatasetId id_;
  const LoadOptions& options_;
  IngestReport& report_;
};

}  // namespace

JsonElements ReadJsonElements(std::string_view content,
                              const std::vector<std::string>& keys) {
  JsonElements out;
  json doc = json::parse(content, nullptr, false);
  if (!doc.is_discarded()) {
    if (doc.is_array()) {
      out.elements.assign(doc.begin(), doc.end());
      return out;
    }
    if (doc.is_object()) {
      for (const auto& k : keys) {
        if (doc.contains(k) && doc.at(k).is_array()) {
          out.elements.assign(doc.at(k).begin(), doc.at(k).end());
          return out;
        }
      }
    }
    throw Error(ErrorCode::kIngest, "no record array in document", "document");
  }
  // Salvage complete elements of a truncated array.
  out.truncated = true;
  std::size_t pos = std::string_view::npos;
  std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '[') {
    pos = first;
  } else {
    for (const auto& k : keys) {
      std::size_t at = content.find("\"" + k + "\"");
      if (at == std::string_view::npos) continue;
      pos = content.find('[', at);
      break;
    }
  }
  if (pos == std::string_view::npos) {
    throw Error(ErrorCode::kIngest, "unparseable document", "document");
  }
  ++pos;
  while (pos < content.size()) {
    pos = content.find_first_not_of(" \t\r\n,", pos);
    if (pos == std::string_view::npos || content[pos] == ']') break;
    std::size_t end = ScanValue(content, pos);
    if (end == std::string_view::npos) break;
    json element = json::parse(content.substr(pos, end - pos), nullptr, false);
    if (element.is_discarded()) break;
    out.elements.push_back(std::move(element));
    pos = end;
  }
  return out;
}

QuestionRecord TagQuestion(DatasetId dataset, const RawQuestion& raw,
                           const LoadOptions& options) {
  const DatasetInfo& info = Info(dataset);
  if (text::TrimSpace(raw.text).empty()) {
    throw Error(ErrorCode::kIngest, "empty question text", raw.native_id);
  }
  QuestionRecord r;
  r.dataset = std::string(info.key);
  r.id = r.dataset + ":" + raw.native_id;
  r.tags.language = LanguageTag::Parse(raw.lang);
  if (info.multilingual) r.id += ":" + r.tags.language.code();
  r.text = raw.text;
  r.gold = raw.gold;
  r.sparql = raw.sparql;

  PartialTags native = NativeTagMapper::Default().Map(info.key, raw.native);

  ReasoningSet reasoning;
  if (r.sparql) {
    try {
      reasoning = ClassifyReasoning(*r.sparql);
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::kClassification) throw;
      throw Error(ErrorCode::kIngest, std::string("unclassifiable SPARQL: ") + ex.what(),
                  raw.native_id);
    }
    // Native operation tags add to the SPARQL-derived ones; topology comes
    // from the query itself.
    for (auto t : native.reasoning) {
      if (IsOperationTag(t)) reasoning.insert(t);
    }
  } else {
    reasoning = native.reasoning;
  }
  r.tags.reasoning = std::move(reasoning);

  if (native.answer_type) {
    r.tags.answer_type = *native.answer_type;
  } else {
    AnswerTypeResult typed =
        ClassifyAnswerType(r.text, r.GoldStrings(), std::nullopt, options.ner);
    r.tags.answer_type = typed.type;
    if (typed.low_confidence) r.AddFlag(kFlagLowConfidence);
  }

  if (r.gold.empty() && r.tags.answer_type != AnswerType::kUna) {
    throw Error(ErrorCode::kIngest, "no gold answers", raw.native_id);
  }
  for (const auto& g : r.gold) {
    if (text::TrimSpace(g.canonical).empty()) {
      throw Error(ErrorCode::kIngest, "empty gold answer", raw.native_id);
    }
  }
  auto violations = ValidateFeatureTags(r.tags, r.sparql.has_value());
  if (!violations.empty()) {
    throw Error(ErrorCode::kIngest, violations.front(), raw.native_id);
  }
  return r;
}

std::unique_ptr<DatasetReader> MakeReader(DatasetId id) {
  switch (id) {
    case DatasetId::kKqaPro: return std::make_unique<KqaProReader>();
    case DatasetId::kLcQuad2: return std::make_unique<LcQuad2Reader>();
    case DatasetId::kWqsp: return std::make_unique<WqspReader>();
    case DatasetId::kCwq: return std::make_unique<CwqReader>();
    case DatasetId::kGrailQa: return std::make_unique<GrailStyleReader>(id);
    case DatasetId::kGraphQ: return std::make_unique<GrailStyleReader>(id);
    case DatasetId::kQald9: return std::make_unique<Qald9Reader>();
    case DatasetId::kMkqa: return std::make_unique<MkqaReader>();
  }
  throw Error(ErrorCode::kUnsupportedDataset, "unknown dataset");
}

IngestReport LoadDataset(std::string_view dataset_id, const std::filesystem::path& source,
                         const LoadOptions& options) {
  DatasetId id = RequireDatasetId(dataset_id);
  IngestReport report;
  report.dataset = id;
  std::string content = ReadFile(source);
  if (text::TrimSpace(content).empty()) {
    report.warnings.push_back(source.string() + ": empty file, no records");
    spdlog::warn("{}", report.warnings.back());
    return report;
  }
  CollectingSink sink(id, options, report);
  try {
    MakeReader(id)->Read(content, source, options, sink);
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::kIngest) throw;
    throw Error(ErrorCode::kIngest,
                std::string(Info(id).key) + ": " + ex.what(), ex.detail());
  }
  if (report.records.empty() && report.skipped > 0) {
    throw Error(ErrorCode::kIngest,
                std::string(Info(id).key) + ": schema mismatch at " + *report.first_error,
                *report.first_error);
  }
  const auto& info = Info(id);
  if (report.records.size() != info.collected_size) {
    spdlog::info("{}: {} records (collected size {})", info.key, report.records.size(),
                 info.collected_size);
  }
  return report;
}

}  // namespace kbqa
