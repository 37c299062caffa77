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

#include "kbqa/store.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "kbqa/error.h"
#include "kbqa/rng.h"
#include "kbqa/text.h"

namespace kbqa {

StoreWriter::StoreWriter(const std::filesystem::path& path, bool append)
    : path_(path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  out_.open(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out_) {
    throw Error(ErrorCode::kIo, "cannot open store " + path.string() + " for writing",
                path.string());
  }
}

void StoreWriter::Append(const QuestionRecord& record) {
  std::string line = SerializeRecord(record);
  std::lock_guard<std::mutex> lock(mu_);
  out_ << line << '\n';
  if (!out_) throw Error(ErrorCode::kIo, "write failed for " + path_.string());
}

void StoreWriter::Flush() {
  std::lock_guard<std::mutex> lock(mu_);
  out_.flush();
}

std::string SerializeRecord(const QuestionRecord& record) {
  return ToJson(record).dump();
}

std::filesystem::path WriteStore(const std::filesystem::path& path,
                                 const std::vector<QuestionRecord>& records) {
  StoreWriter writer(path);
  for (const auto& r : records) writer.Append(r);
  writer.Flush();
  return path;
}

std::vector<QuestionRecord> ReadStore(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open store " + path.string(), path.string());
  }
  std::vector<QuestionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::TrimSpace(line).empty()) continue;
    try {
      records.push_back(RecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) +
                      ": malformed line: " + e.what(),
                  std::to_string(line_no));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what(),
                  std::to_string(line_no));
    }
  }
  return records;
}

std::optional<SampleKey> ParseSampleKey(std::string_view name) {
  std::string key = text::ToLower(name);
  if (key == "none" || key.empty()) return SampleKey::kNone;
  if (key == "answer_type" || key == "answer-type") return SampleKey::kAnswerType;
  if (key == "language" || key == "lang") return SampleKey::kLanguage;
  if (key == "dataset") return SampleKey::kDataset;
  return std::nullopt;
}

std::vector<QuestionRecord> SampleStore(const std::vector<QuestionRecord>& records,
                                        SampleKey by, std::size_t n,
                                        std::uint64_t seed) {
  if (n == 0) return {};
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string key;
    switch (by) {
      case SampleKey::kNone: break;
      case SampleKey::kAnswerType:
        key = std::string(ToString(records[i].tags.answer_type));
        break;
      case SampleKey::kLanguage: key = records[i].language().code(); break;
      case SampleKey::kDataset: key = records[i].dataset; break;
    }
    strata[key].push_back(i);
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  for (auto& [key, indices] : strata) {
    std::size_t take = std::min(n, indices.size());
    // Partial Fisher-Yates: the first `take` slots become the sample.
    for (std::size_t i = 0; i < take; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.Below(indices.size() - i));
      std::swap(indices[i], indices[j]);
    }
    chosen.insert(chosen.end(), indices.begin(), indices.begin() + take);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<QuestionRecord> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(records[i]);
  return out;
}

}  // namespace kbqa
