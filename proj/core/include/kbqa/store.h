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

#ifndef KBQA_STORE_H_
#define KBQA_STORE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <vector>

#include "kbqa/record.h"

namespace kbqa {

// Append-only JSONL writer for QuestionRecords. Single writer; Append is
// serialized internally so it may be called from several threads.
class StoreWriter {
 public:
  // Truncates when `append` is false.
  explicit StoreWriter(const std::filesystem::path& path, bool append = false);
  void Append(const QuestionRecord& record);
  void Flush();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mu_;
};

std::filesystem::path WriteStore(const std::filesystem::path& path,
                                 const std::vector<QuestionRecord>& records);
// Throws Error(kParse) whose detail is the 1-based line number of the first
// malformed line.
std::vector<QuestionRecord> ReadStore(const std::filesystem::path& path);

std::string SerializeRecord(const QuestionRecord& record);

enum class SampleKey { kNone, kAnswerType, kLanguage, kDataset };

// Deterministic sampling under a fixed seed. With kNone, `n` records are
// drawn from the whole list; otherwise up to `n` per stratum. Output keeps
// the input order.
std::vector<QuestionRecord> SampleStore(const std::vector<QuestionRecord>& records,
                                        SampleKey by, std::size_t n,
                                        std::uint64_t seed);

std::optional<SampleKey> ParseSampleKey(std::string_view name);

}  // namespace kbqa

#endif  // KBQA_STORE_H_
