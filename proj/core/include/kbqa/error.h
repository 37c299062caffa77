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

#ifndef KBQA_ERROR_H_
#define KBQA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kbqa {

enum class ErrorCode {
  kInvalidArgument,
  kPrecondition,
  kConfiguration,
  kClassification,
  kUnsupportedDataset,
  kIngest,
  kParse,
  kTransport,
  kUnavailable,
  kIo,
};

std::string_view ToString(ErrorCode code);

// All library failures are reported as kbqa::Error. The code is stable and
// machine readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  // `detail` carries the offending payload (a query, a line number, a
  // record id) so callers can report it without parsing the message.
  Error(ErrorCode code, const std::string& message, std::string detail)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace kbqa

#endif  // KBQA_ERROR_H_
