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

#include "kbqa/resources.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "kbqa/error.h"

namespace kbqa {
namespace internal {
const std::map<std::string, std::string_view>& EmbeddedResources();
}  // namespace internal

nlohmann::json LoadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string(), path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what(),
                path.string());
  }
}

nlohmann::json LoadResource(const std::string& name) {
  if (const char* dir = std::getenv("KBQA_RESOURCE_DIR"); dir && *dir) {
    std::filesystem::path override_path = std::filesystem::path(dir) / name;
    if (std::filesystem::exists(override_path)) {
      return LoadJsonFile(override_path);
    }
  }
  const auto& resources = internal::EmbeddedResources();
  auto it = resources.find(name);
  if (it == resources.end()) {
    throw Error(ErrorCode::kConfiguration, "unknown resource " + name, name);
  }
  return nlohmann::json::parse(it->second);
}

}  // namespace kbqa
