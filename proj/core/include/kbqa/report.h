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

#ifndef KBQA_REPORT_H_
#define KBQA_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbqa/metrics.h"

namespace kbqa {

enum class ReportFormat { kMarkdown, kCsv, kJson };
// "md", "csv" or "json"; throws Error(kInvalidArgument) otherwise.
ReportFormat ParseReportFormat(std::string_view name);

// RFC 4180 field quoting.
std::string CsvField(std::string_view field);

std::string RenderTableMarkdown(const Table& table);
std::string RenderTableCsv(const Table& table);
std::string RenderMarkdown(const Report& report);
std::string RenderJson(const Report& report);

// Keeps the stored key order of metadata and notes.
Report ReportFromJson(const nlohmann::ordered_json& j);
Report ReadReport(const std::filesystem::path& report_json);

// Writes the files of one format under `dir`: report.md; tables/*.csv and
// curves/*.csv; or report.json. Returns the paths written.
std::vector<std::filesystem::path> RenderReport(const Report& report, ReportFormat format,
                                                const std::filesystem::path& dir);

}  // namespace kbqa

#endif  // KBQA_REPORT_H_
