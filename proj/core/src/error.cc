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

#include "kbqa/error.h"

namespace kbqa {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kConfiguration:
      return "configuration";
    case ErrorCode::kClassification:
      return "classification";
    case ErrorCode::kUnsupportedDataset:
      return "unsupported_dataset";
    case ErrorCode::kIngest:
      return "ingest";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kTransport:
      return "transport";
    case ErrorCode::kUnavailable:
      return "unavailable";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

}  // namespace kbqa
