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

#ifndef KBQA_CLI_COMMANDS_H_
#define KBQA_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kbqa/checklist.h"
#include "kbqa/error.h"
#include "kbqa/metrics.h"
#include "kbqa/paraphrase.h"
#include "kbqa/record.h"

namespace kbqa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUsage = 2,    // bad flags, missing config or environment
  kExitPartial = 3,  // finished, but some items failed or were skipped
};

int ExitCodeFor(ErrorCode code);
// One-line JSON: {"error": <code>, "message": ..., "detail": ...}.
std::string ErrorLine(std::string_view code, std::string_view message, std::string_view detail);

// Entry point. `args` excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Batteries: base, inv, dir-swap, dir-hint, dir-cot, mft.
bool IsBattery(std::string_view name);

struct Battery {
  std::vector<TestCase> cases;
  std::vector<std::pair<std::string, std::string>> skipped;  // (record id, reason)
};

// `paraphraser` is required for "inv".
Battery BuildBattery(const std::vector<QuestionRecord>& records, std::string_view battery,
                     std::uint64_t seed, ParaphraseProvider* paraphraser,
                     const NerProvider* ner);

std::vector<TestCase> ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const std::vector<TestCase>& cases);

std::vector<RunResult> ReadRuns(const std::filesystem::path& path);
// Replaces entries with the same (model_id, test id) and appends the rest,
// then writes the file atomically.
std::vector<RunResult> MergeRuns(std::vector<RunResult> existing,
                                 const std::vector<RunResult>& fresh);
void WriteRuns(const std::filesystem::path& path, const std::vector<RunResult>& runs);

std::vector<Verdict> ReadVerdicts(const std::filesystem::path& path);

}  // namespace kbqa::cli

#endif  // KBQA_CLI_COMMANDS_H_
