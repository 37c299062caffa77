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

#include "kbqa/sidecar_client.h"

#include <cmath>

#include <httplib.h>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

using nlohmann::json;

constexpr double kNormTolerance = 1e-6;

[[noreturn]] void SchemaError(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kUnavailable, "sidecar " + path + ": " + what, path);
}

void SetTimeouts(httplib::Client& client, std::chrono::milliseconds timeout) {
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
}

json ParseBody(const std::string& path, int status, const std::string& body) {
  if (status >= 400 && status < 500) {
    throw Error(ErrorCode::kInvalidArgument,
                "sidecar " + path + " rejected the request (" + std::to_string(status) + ")",
                body);
  }
  if (status != 200) {
    throw Error(ErrorCode::kUnavailable,
                "sidecar " + path + " status " + std::to_string(status), std::to_string(status));
  }
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) SchemaError(path, "response is not a JSON object");
  return j;
}

}  // namespace

SidecarClient::SidecarClient(SidecarOptions options) : options_(std::move(options)) {}

json SidecarClient::Post(const std::string& path, const json& body) const {
  httplib::Client client(options_.base_url);
  SetTimeouts(client, options_.timeout);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                "sidecar unreachable: " + httplib::to_string(res.error()), options_.base_url);
  }
  return ParseBody(path, res->status, res->body);
}

json SidecarClient::Health() const {
  httplib::Client client(options_.base_url);
  SetTimeouts(client, options_.timeout);
  auto res = client.Get("/healthz");
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                "sidecar unreachable: " + httplib::to_string(res.error()), options_.base_url);
  }
  return ParseBody("/healthz", res->status, res->body);
}

bool SidecarClient::Ready() const {
  try {
    return Health().value("status", "") == "ready";
  } catch (const Error&) {
    return false;
  }
}

std::vector<PhraseSpan> SidecarClient::Parse(std::string_view input, std::string_view lang) const {
  if (input.empty()) throw Error(ErrorCode::kInvalidArgument, "parse needs non-empty text");
  json res = Post("/parse", {{"text", input}, {"lang", lang}});
  if (!res.contains("phrases") || !res.at("phrases").is_array()) {
    SchemaError("/parse", "missing phrases");
  }
  const std::size_t cps = text::DecodeUtf8(input).size();
  std::vector<PhraseSpan> out;
  for (const auto& p : res.at("phrases")) {
    if (!p.is_object() || !p.contains("label") || !p.contains("char_span")) {
      SchemaError("/parse", "malformed phrase");
    }
    PhraseSpan span;
    span.label = p.at("label").get<std::string>();
    if (span.label != "NP" && span.label != "VP") SchemaError("/parse", "label " + span.label);
    const auto& cs = p.at("char_span");
    if (!cs.is_array() || cs.size() != 2 || !cs[0].is_number_unsigned() ||
        !cs[1].is_number_unsigned()) {
      SchemaError("/parse", "char_span must be [begin, end]");
    }
    auto b = cs[0].get<std::size_t>();
    auto e = cs[1].get<std::size_t>();
    if (b > e || e > cps) SchemaError("/parse", "char_span outside the input");
    span.span = {text::CodePointToByteOffset(input, b), text::CodePointToByteOffset(input, e)};
    span.text = p.contains("text") ? p.at("text").get<std::string>()
                                   : std::string(span.span.View(input));
    out.push_back(std::move(span));
  }
  return out;
}

std::vector<std::vector<double>> SidecarClient::Embed(const std::vector<std::string>& texts,
                                                      std::string_view lang) const {
  std::vector<std::vector<double>> out;
  for (std::size_t start = 0; start < texts.size(); start += kSidecarMaxBatch) {
    std::size_t end = std::min(texts.size(), start + kSidecarMaxBatch);
    json batch(std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                        texts.begin() + static_cast<std::ptrdiff_t>(end)));
    json res = Post("/embed", {{"texts", batch}, {"lang", lang}});
    if (!res.contains("vectors") || !res.at("vectors").is_array() ||
        res.at("vectors").size() != end - start) {
      SchemaError("/embed", "vector count does not match the input");
    }
    for (const auto& v : res.at("vectors")) {
      auto vec = v.get<std::vector<double>>();
      double sq = 0.0;
      for (double x : vec) sq += x * x;
      if (std::fabs(std::sqrt(sq) - 1.0) > kNormTolerance) SchemaError("/embed", "vector not unit norm");
      if (!out.empty() && vec.size() != out.front().size()) {
        SchemaError("/embed", "vector dimensions differ");
      }
      out.push_back(std::move(vec));
    }
  }
  return out;
}

std::vector<EntityMention> SidecarClient::Ner(std::string_view input) const {
  if (input.empty()) throw Error(ErrorCode::kInvalidArgument, "ner needs non-empty text");
  json res = Post("/ner", {{"text", input}});
  if (!res.contains("entities") || !res.at("entities").is_array()) {
    SchemaError("/ner", "missing entities");
  }
  std::vector<EntityMention> out;
  for (const auto& e : res.at("entities")) {
    EntityMention m;
    m.text = e.at("text").get<std::string>();
    auto type = ParseAnswerType(e.at("type").get<std::string>());
    if (!type || (*type != AnswerType::kPer && *type != AnswerType::kLoc &&
                  *type != AnswerType::kOrg && *type != AnswerType::kMisc)) {
      SchemaError("/ner", "entity type " + e.at("type").dump());
    }
    m.type = *type;
    auto pos = input.find(m.text);
    if (pos != std::string_view::npos) m.span = {pos, pos + m.text.size()};
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Embedding> SidecarEmbedder::Embed(const std::vector<std::string>& texts,
                                              std::string_view lang) const {
  std::vector<Embedding> out;
  for (auto& v : client_.Embed(texts, lang)) out.push_back(Embedding::Dense(std::move(v)));
  return out;
}

}  // namespace kbqa
