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

#include "kbqa/native_tags.h"

#include <algorithm>
#include <cctype>

#include "kbqa/error.h"
#include "kbqa/resources.h"
#include "kbqa/text.h"

namespace kbqa {

const std::array<DatasetInfo, 8>& SupportedDatasets() {
  static const std::array<DatasetInfo, 8> kDatasets = {{
      {DatasetId::kKqaPro, "kqapro", "KQApro", 117970, 106173, false,
       DatasetMetric::kAccuracy},
      {DatasetId::kLcQuad2, "lcquad2", "LC-quad2", 26975, 26975, false,
       DatasetMetric::kF1},
      {DatasetId::kWqsp, "wqsp", "WQSP", 4737, 4700, false,
       DatasetMetric::kAccuracy},
      {DatasetId::kCwq, "cwq", "CWQ", 31158, 31158, false,
       DatasetMetric::kAccuracy},
      {DatasetId::kGrailQa, "grailqa", "GrailQA", 64331, 6763, false,
       DatasetMetric::kAccuracy},
      {DatasetId::kGraphQ, "graphq", "GraphQ", 4776, 4776, false,
       DatasetMetric::kF1},
      {DatasetId::kQald9, "qald9", "QALD-9", 6045, 6045, true,
       DatasetMetric::kF1},
      {DatasetId::kMkqa, "mkqa", "MKQA", 260000, 6144, true,
       DatasetMetric::kAccuracy},
  }};
  return kDatasets;
}

const DatasetInfo& Info(DatasetId id) {
  for (const auto& info : SupportedDatasets()) {
    if (info.id == id) return info;
  }
  throw Error(ErrorCode::kUnsupportedDataset, "unknown dataset id");
}

std::optional<DatasetId> ParseDatasetId(std::string_view name) {
  std::string key;
  for (char c : text::ToLower(text::TrimSpace(name))) {
    if (std::isalnum(static_cast<unsigned char>(c))) key.push_back(c);
  }
  for (const auto& info : SupportedDatasets()) {
    if (key == info.key) return info.id;
  }
  if (key == "lcquad20" || key == "lcquad") return DatasetId::kLcQuad2;
  if (key == "webquestionssp" || key == "webquestionsp") return DatasetId::kWqsp;
  if (key == "complexwebquestions") return DatasetId::kCwq;
  if (key == "graphquestions") return DatasetId::kGraphQ;
  if (key == "qald") return DatasetId::kQald9;
  return std::nullopt;
}

DatasetId RequireDatasetId(std::string_view name) {
  auto id = ParseDatasetId(name);
  if (!id) {
    throw Error(ErrorCode::kUnsupportedDataset,
                "unsupported dataset '" + std::string(name) + "'",
                std::string(name));
  }
  return *id;
}

NativeTagMapper NativeTagMapper::FromJson(const nlohmann::json& table) {
  NativeTagMapper mapper;
  try {
    mapper.version_ = table.value("version", "unversioned");
    for (const auto& [name, entry] : table.at("datasets").items()) {
      DatasetId id = RequireDatasetId(name);
      DatasetTable t;
      t.fields = entry.value("fields", std::vector<std::string>{});
      if (entry.contains("hop_field")) {
        t.hop_field = entry.at("hop_field").get<std::string>();
      }
      const nlohmann::json reasoning = entry.value("reasoning", nlohmann::json::object());
      for (const auto& [native, tags] : reasoning.items()) {
        ReasoningSet set;
        for (const auto& tag : tags) {
          auto parsed = ParseReasoningType(tag.get<std::string>());
          if (!parsed) {
            throw Error(ErrorCode::kConfiguration,
                        "unknown reasoning tag " + tag.dump() + " for " + name);
          }
          set.insert(*parsed);
        }
        t.reasoning[text::ToLower(native)] = std::move(set);
      }
      const nlohmann::json answer_types = entry.value("answer_type", nlohmann::json::object());
      for (const auto& [native, tag] : answer_types.items()) {
        auto parsed = ParseAnswerType(tag.get<std::string>());
        if (!parsed) {
          throw Error(ErrorCode::kConfiguration,
                      "unknown answer type " + tag.dump() + " for " + name);
        }
        t.answer_type[text::ToLower(native)] = *parsed;
      }
      mapper.tables_[id] = std::move(t);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("malformed native tag table: ") + e.what());
  }
  return mapper;
}

const NativeTagMapper& NativeTagMapper::Default() {
  static const NativeTagMapper kMapper = FromJson(LoadResource("native_tags.json"));
  return kMapper;
}

const NativeTagMapper::DatasetTable& NativeTagMapper::TableFor(
    std::string_view dataset_id) const {
  DatasetId id = RequireDatasetId(dataset_id);
  auto it = tables_.find(id);
  if (it == tables_.end()) {
    static const DatasetTable kEmpty;
    return kEmpty;
  }
  return it->second;
}

std::optional<AnswerType> NativeTagMapper::MapAnswerTag(
    std::string_view dataset_id, std::string_view tag) const {
  const DatasetTable& t = TableFor(dataset_id);
  auto it = t.answer_type.find(text::ToLower(tag));
  if (it == t.answer_type.end()) return std::nullopt;
  return it->second;
}

PartialTags NativeTagMapper::Map(std::string_view dataset_id,
                                 const nlohmann::json& native) const {
  const DatasetTable& t = TableFor(dataset_id);
  std::vector<std::string> values;
  auto collect = [&](const nlohmann::json& v) {
    if (v.is_string()) {
      values.push_back(text::ToLower(v.get<std::string>()));
    } else if (v.is_array()) {
      for (const auto& e : v) {
        if (e.is_string()) values.push_back(text::ToLower(e.get<std::string>()));
      }
    }
  };
  if (native.is_string() || native.is_array()) {
    collect(native);
  } else if (native.is_object()) {
    for (const auto& field : t.fields) {
      if (native.contains(field)) collect(native.at(field));
    }
  }

  PartialTags out;
  for (const auto& v : values) {
    if (auto it = t.reasoning.find(v); it != t.reasoning.end()) {
      out.reasoning.insert(it->second.begin(), it->second.end());
    }
    if (!out.answer_type) {
      if (auto it = t.answer_type.find(v); it != t.answer_type.end()) {
        out.answer_type = it->second;
      }
    }
  }
  if (t.hop_field && native.is_object() && native.contains(*t.hop_field) &&
      native.at(*t.hop_field).is_number_integer()) {
    int hops = native.at(*t.hop_field).get<int>();
    out.reasoning.erase(ReasoningType::kSingleHop);
    out.reasoning.erase(ReasoningType::kMultiHop);
    out.reasoning.insert(hops <= 1 ? ReasoningType::kSingleHop
                                   : ReasoningType::kMultiHop);
  }
  return out;
}

}  // namespace kbqa
