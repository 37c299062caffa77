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

#ifndef KBQA_DATASETS_H_
#define KBQA_DATASETS_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/answer_type.h"
#include "kbqa/native_tags.h"
#include "kbqa/record.h"

namespace kbqa {

// A question as read from a source dump, before unified tagging.
struct RawQuestion {
  std::string native_id;
  std::string text;
  std::string lang = "en";
  std::vector<ReferenceAnswer> gold;
  std::optional<std::string> sparql;
  nlohmann::json native;  // payload for NativeTagMapper
};

struct LoadOptions {
  // Used for answer typing when no native tag decides. Null means "no NER
  // available": such records are typed MISC and flagged low-confidence.
  const NerProvider* ner = nullptr;
  // GrailQA split selector ("train", "dev", "test").
  std::optional<std::string> split;
};

struct IngestReport {
  DatasetId dataset = DatasetId::kWqsp;
  std::vector<QuestionRecord> records;
  std::size_t skipped = 0;   // records that failed to parse or tag
  std::size_t filtered = 0;  // language variants or splits not selected
  std::optional<std::string> first_error;
  std::vector<std::string> warnings;  // truncated or empty source

  bool partial() const { return skipped > 0 || !warnings.empty(); }
};

// Receives questions from a reader; failures are recorded against the
// named record and ingestion continues.
class ReaderSink {
 public:
  virtual ~ReaderSink() = default;
  virtual void Emit(RawQuestion question) = 0;
  virtual void Skip(const std::string& record_name, const std::string& reason) = 0;
  virtual void Filter() = 0;
  virtual void Warn(const std::string& message) = 0;
};

// One reader per source dataset schema.
class DatasetReader {
 public:
  virtual ~DatasetReader() = default;
  virtual DatasetId dataset() const = 0;
  virtual void Read(std::string_view content, const std::filesystem::path& source,
                    const LoadOptions& options, ReaderSink& sink) const = 0;
};

std::unique_ptr<DatasetReader> MakeReader(DatasetId id);

// Reads a source dump into fully tagged records. Multilingual datasets give
// one record per supported language variant. Throws
// Error(kUnsupportedDataset) for unknown ids, Error(kIo) for missing files
// and Error(kIngest) naming the first offending record when nothing could
// be ingested from a non-empty file.
IngestReport LoadDataset(std::string_view dataset_id,
                         const std::filesystem::path& source,
                         const LoadOptions& options = {});

// Applies unified tagging to one raw question (exposed for tests and
// custom readers). Throws Error(kIngest) when the question cannot be
// tagged consistently.
QuestionRecord TagQuestion(DatasetId dataset, const RawQuestion& raw,
                           const LoadOptions& options);

// Splits a JSON document into the elements of its record array, salvaging
// complete elements from a truncated file. `keys` names the object member
// holding the array when the top level is an object.
struct JsonElements {
  std::vector<nlohmann::json> elements;
  bool truncated = false;
};
JsonElements ReadJsonElements(std::string_view content,
                              const std::vector<std::string>& keys);

}  // namespace kbqa

#endif  // KBQA_DATASETS_H_
