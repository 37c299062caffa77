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

#ifndef KBQA_NATIVE_TAGS_H_
#define KBQA_NATIVE_TAGS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/tags.h"

namespace kbqa {

enum class DatasetId { kKqaPro, kLcQuad2, kWqsp, kCwq, kGrailQa, kGraphQ, kQald9, kMkqa };

enum class DatasetMetric { kAccuracy, kF1 };

struct DatasetInfo {
  DatasetId id;
  std::string_view key;           // canonical lowercase id used in stores
  std::string_view display_name;  // report column label
  std::size_t original_size;
  std::size_t collected_size;
  bool multilingual;
  DatasetMetric metric;
};

// The eight supported datasets in report order.
const std::array<DatasetInfo, 8>& SupportedDatasets();
const DatasetInfo& Info(DatasetId id);
// Accepts canonical keys and display spellings ("LC-quad2.0", "QALD-9",
// "WebQuestionsSP", ...).
std::optional<DatasetId> ParseDatasetId(std::string_view name);
// Same as ParseDatasetId but throws Error(kUnsupportedDataset).
DatasetId RequireDatasetId(std::string_view name);

struct PartialTags {
  std::optional<AnswerType> answer_type;
  ReasoningSet reasoning;
};

// Maps dataset-native annotations onto unified tags using the versioned
// native_tags.json table. A payload is either a bare string (one native tag
// value) or an object whose configured fields hold strings or arrays of
// strings.
class NativeTagMapper {
 public:
  static const NativeTagMapper& Default();
  static NativeTagMapper FromJson(const nlohmann::json& table);

  const std::string& version() const { return version_; }

  PartialTags Map(std::string_view dataset_id, const nlohmann::json& native) const;
  std::optional<AnswerType> MapAnswerTag(std::string_view dataset_id,
                                         std::string_view tag) const;

 private:
  struct DatasetTable {
    std::vector<std::string> fields;
    std::optional<std::string> hop_field;
    std::map<std::string, ReasoningSet> reasoning;  // lowercase keys
    std::map<std::string, AnswerType> answer_type;  // lowercase keys
  };
  const DatasetTable& TableFor(std::string_view dataset_id) const;

  std::string version_;
  std::map<DatasetId, DatasetTable> tables_;
};

}  // namespace kbqa

#endif  // KBQA_NATIVE_TAGS_H_
