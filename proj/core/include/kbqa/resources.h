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

#ifndef KBQA_RESOURCES_H_
#define KBQA_RESOURCES_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace kbqa {

// Versioned mapping tables shipped with the library. Each is compiled into
// the binary; `LoadResource` reads an override file instead when the
// KBQA_RESOURCE_DIR environment variable names a directory that has it.
//
//   reasoning_rules.json  SPARQL keyword -> reasoning tag
//   native_tags.json      dataset-native annotation -> unified tags
//   swap_rules.json       DIR phrase swaps and expected SPARQL keywords
//   hint_templates.json   DIR answer-type hint suffixes
nlohmann::json LoadResource(const std::string& name);
nlohmann::json LoadJsonFile(const std::filesystem::path& path);

}  // namespace kbqa

#endif  // KBQA_RESOURCES_H_
