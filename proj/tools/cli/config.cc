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

#include "cli/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kbqa/error.h"
#include "kbqa/hashing.h"
#include "kbqa/resources.h"

namespace kbqa::cli {
namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

constexpr std::string_view kModelPrefix = "model.";

[[noreturn]] void Bad(const std::string& message, const std::string& detail = {}) {
  throw Error(ErrorCode::kConfiguration, message, detail);
}

fs::path Resolve(const fs::path& base, const std::string& value) {
  if (value.empty()) return {};
  fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

template <typename T>
T Parse(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !(in >> std::ws).eof()) Bad("invalid value for " + key, value);
  return out;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Bad("cannot read " + path.string(), path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ModelSpec ParseModel(const std::string& id, const pt::ptree& section, const fs::path& base) {
  ModelSpec spec;
  spec.model_id = id;
  if (id.empty()) Bad("model section without an id");
  for (const auto& [key, node] : section) {
    const std::string value = node.data();
    if (key == "endpoint") {
      spec.endpoint = value;
    } else if (key == "auth_env") {
      spec.auth_env = value;
    } else if (key == "temperature") {
      spec.params.temperature = Parse<double>(key, value);
    } else if (key == "max_tokens") {
      spec.params.max_tokens = Parse<int>(key, value);
    } else if (key == "request_template") {
      spec.request_template = ReadText(Resolve(base, value));
    } else if (key == "response_path") {
      spec.response_path = value;
    } else if (key == "mock_script") {
      auto script = MockScript::FromJson(LoadJsonFile(Resolve(base, value)));
      spec.mock = std::make_shared<const MockScript>(std::move(script));
    } else {
      Bad("unknown key in [model." + id + "]: " + key, key);
    }
  }
  if (!spec.is_mock() && spec.endpoint.empty()) {
    Bad("model " + id + " needs an endpoint or a mock_script", id);
  }
  return spec;
}

}  // namespace

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json models_json = nlohmann::ordered_json::array();
  for (const auto& m : models) {
    nlohmann::ordered_json j;
    j["model_id"] = m.model_id;
    j["endpoint"] = m.endpoint;
    j["auth_env"] = m.AuthEnvName();
    j["temperature"] = m.params.temperature;
    j["max_tokens"] = m.params.max_tokens;
    j["request_template"] = m.request_template;
    j["response_path"] = m.response_path;
    if (m.mock) {
      nlohmann::ordered_json script;
      script["answers"] = m.mock->answers;
      nlohmann::ordered_json conv = nlohmann::ordered_json::array();
      for (const auto& [turns, out] : m.mock->conversations) {
        conv.push_back({{"turns", turns}, {"output", out}});
      }
      script["conversations"] = conv;
      script["fallback"] = m.mock->fallback;
      j["mock"] = script;
    }
    models_json.push_back(std::move(j));
  }
  nlohmann::ordered_json j;
  j["models"] = models_json;
  j["store"] = store_path.filename().string();
  j["tau"] = tau;
  j["batteries"] = batteries;
  j["paraphrases"] = paraphrase_path.filename().string();
  j["paraphrase_model"] = paraphrase_model;
  j["aliases"] = alias_path.filename().string();
  j["seed"] = seed;
  return j;
}

std::string RunConfig::Hash() const { return Sha256Hex(ToJson().dump()); }

const ModelSpec* RunConfig::FindModel(const std::string& id) const {
  for (const auto& m : models) {
    if (m.model_id == id) return &m;
  }
  return nullptr;
}

RunConfig LoadRunConfig(const fs::path& path) {
  if (!fs::exists(path)) Bad("config file not found: " + path.string(), path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    Bad(std::string("config parse error: ") + e.what(), path.string());
  }
  const fs::path base = path.parent_path();
  RunConfig cfg;
  std::set<std::string> seen_models;
  for (const auto& [key, node] : tree) {
    if (!node.empty()) {
      if (key.rfind(kModelPrefix, 0) != 0) Bad("unknown section [" + key + "]", key);
      std::string id = key.substr(kModelPrefix.size());
      if (!seen_models.insert(id).second) Bad("duplicate model " + id, id);
      cfg.models.push_back(ParseModel(id, node, base));
      continue;
    }
    const std::string value = node.data();
    if (key == "seed") {
      cfg.seed = Parse<std::uint64_t>(key, value);
    } else if (key == "store") {
      cfg.store_path = Resolve(base, value);
    } else if (key == "cache") {
      cfg.cache_path = Resolve(base, value);
    } else if (key == "runs") {
      cfg.runs_path = Resolve(base, value);
    } else if (key == "tau") {
      cfg.tau = Parse<double>(key, value);
    } else if (key == "parallelism") {
      cfg.parallelism = Parse<std::size_t>(key, value);
    } else if (key == "battery") {
      cfg.batteries.clear();
      std::istringstream in(value);
      for (std::string b; std::getline(in, b, ',');) {
        auto first = b.find_first_not_of(' ');
        auto last = b.find_last_not_of(' ');
        if (first != std::string::npos) cfg.batteries.push_back(b.substr(first, last - first + 1));
      }
    } else if (key == "paraphrases") {
      cfg.paraphrase_path = Resolve(base, value);
    } else if (key == "paraphrase_model") {
      cfg.paraphrase_model = value;
    } else if (key == "aliases") {
      cfg.alias_path = Resolve(base, value);
    } else if (key == "sidecar") {
      cfg.sidecar_url = value;
    } else if (key == "rate_per_second") {
      cfg.rate_per_second = Parse<double>(key, value);
    } else {
      Bad("unknown config key: " + key, key);
    }
  }
  if (cfg.tau < 0.0 || cfg.tau > 1.0) Bad("tau outside [0, 1]", std::to_string(cfg.tau));
  if (cfg.parallelism == 0) Bad("parallelism must be positive");
  if (cfg.runs_path.empty()) cfg.runs_path = base / "runs.jsonl";
  return cfg;
}

}  // namespace kbqa::cli
