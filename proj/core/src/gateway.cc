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

#include "kbqa/gateway.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ctime>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "kbqa/error.h"
#include "kbqa/hashing.h"
#include "kbqa/text.h"

namespace kbqa {
namespace {

using nlohmann::json;

std::string ReplaceAll(std::string s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kConfiguration, "endpoint is not a URL: " + url, url);
  }
  auto path = url.find('/', scheme + 3);
  if (path == std::string::npos) return {url, "/"};
  return {url.substr(0, path), url.substr(path)};
}

class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::milliseconds timeout) : timeout_(timeout) {}

  HttpResponse Post(const std::string& url,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    const std::string& body) override {
    auto [base, path] = SplitUrl(url);
    httplib::Client client(base);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    HttpResponse out;
    auto res = client.Post(path, h, body, "application/json");
    if (!res) {
      out.error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    if (res->has_header("Retry-After")) {
      try {
        out.retry_after_seconds = std::stod(res->get_header_value("Retry-After"));
      } catch (const std::exception&) {
      }
    }
    return out;
  }

 private:
  std::chrono::milliseconds timeout_;
};

bool Transient(const HttpResponse& r) {
  return r.status == 0 || r.status == 429 || r.status >= 500;
}

}  // namespace

json DecodingParams::ToJson() const {
  return json{{"max_tokens", max_tokens}, {"temperature", temperature}};
}

MockScript MockScript::FromJson(const json& j) {
  MockScript s;
  const json answers = j.value("answers", json::object());
  for (const auto& [q, a] : answers.items()) {
    s.answers[q] = a.get<std::string>();
  }
  for (const auto& c : j.value("conversations", json::array())) {
    s.conversations[c.at("turns").get<std::vector<std::string>>()] =
        c.at("output").get<std::string>();
  }
  s.fallback = j.value("fallback", "");
  return s;
}

std::string MockScript::Reply(const std::vector<std::string>& turns_so_far) const {
  if (auto it = conversations.find(turns_so_far); it != conversations.end()) return it->second;
  const std::string& turn = turns_so_far.back();
  if (auto it = answers.find(turn); it != answers.end()) return it->second;
  constexpr std::string_view kEcho = "echo:";
  if (turn.starts_with(kEcho)) return std::string(text::TrimSpace(turn.substr(kEcho.size())));
  return fallback;
}

std::string ModelSpec::AuthEnvName() const {
  if (!auth_env.empty()) return auth_env;
  std::string name;
  for (char c : model_id) {
    name += std::isalnum(static_cast<unsigned char>(c))
                ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                : '_';
  }
  return name + "_API_KEY";
}

ModelSpec MockModel(std::map<std::string, std::string> script, std::string fallback,
                    std::string model_id) {
  MockScript s;
  s.answers = std::move(script);
  s.fallback = std::move(fallback);
  return MockModel(std::move(s), std::move(model_id));
}

ModelSpec MockModel(MockScript script, std::string model_id) {
  ModelSpec spec;
  spec.model_id = std::move(model_id);
  spec.endpoint = "mock://local";
  spec.mock = std::make_shared<const MockScript>(std::move(script));
  return spec;
}

nlohmann::ordered_json RunRecord::ToJson() const {
  nlohmann::ordered_json j;
  j["cache_key"] = cache_key;
  j["model_id"] = model_id;
  j["params"] = {{"temperature", params.temperature}, {"max_tokens", params.max_tokens}};
  j["turns"] = turns;
  j["outputs"] = outputs;
  j["output"] = output;
  j["created_at"] = created_at;
  return j;
}

RunRecord RunRecord::FromJson(const json& j) {
  RunRecord r;
  r.cache_key = j.at("cache_key").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.params.temperature = j.at("params").at("temperature").get<double>();
  r.params.max_tokens = j.at("params").at("max_tokens").get<int>();
  r.turns = j.at("turns").get<std::vector<std::string>>();
  r.output = j.at("output").get<std::string>();
  r.outputs = j.value("outputs", std::vector<std::string>{r.output});
  r.created_at = j.value("created_at", "");
  return r;
}

std::string CacheKey(const std::string& model_id, const DecodingParams& params,
                     const std::vector<std::string>& turns) {
  json key{{"model_id", model_id}, {"params", params.ToJson()}, {"turns", turns}};
  return Sha256Hex(key.dump());
}

ResponseCache::ResponseCache(const std::filesystem::path& path) : path_(path) {
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (text::TrimSpace(line).empty()) continue;
      try {
        RunRecord r = RunRecord::FromJson(json::parse(line));
        records_.try_emplace(r.cache_key, std::move(r));
      } catch (const std::exception& ex) {
        spdlog::warn("{}:{}: ignoring unreadable cache line ({})", path.string(), line_no,
                     ex.what());
      }
    }
  } else if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  out_.open(path, std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open cache " + path.string(), path.string());
  // Start on a fresh line if the previous writer died mid-record.
  if (std::filesystem::file_size(path) > 0) {
    std::ifstream tail(path, std::ios::binary);
    tail.seekg(-1, std::ios::end);
    if (tail.get() != '\n') out_ << '\n';
  }
}

std::optional<RunRecord> ResponseCache::Get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::Put(const RunRecord& record) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!records_.try_emplace(record.cache_key, record).second) return;
  if (out_.is_open()) {
    out_ << record.ToJson().dump() << '\n';
    out_.flush();
  }
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

std::unique_ptr<HttpTransport> MakeHttplibTransport(std::chrono::milliseconds timeout) {
  return std::make_unique<HttplibTransport>(timeout);
}

RateLimiter::RateLimiter(double per_second, double burst, Sleep sleep)
    : rate_(per_second),
      capacity_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)),
      last_(std::chrono::steady_clock::now()),
      sleep_(std::move(sleep)) {
  if (!(per_second > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "rate limit must be positive");
  }
  if (!sleep_) sleep_ = [](std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); };
}

void RateLimiter::Acquire() {
  std::chrono::nanoseconds wait{0};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
    tokens_ -= 1.0;
    if (tokens_ < 0.0) {
      wait = std::chrono::nanoseconds(static_cast<std::int64_t>(-tokens_ / rate_ * 1e9));
    }
  }
  if (wait.count() > 0) sleep_(wait);
}

std::string RenderRequest(const ModelSpec& spec, const std::vector<std::string>& turns,
                          const std::vector<std::string>& replies) {
  json messages = json::array();
  std::string prompt;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    messages.push_back({{"role", "user"}, {"content", turns[i]}});
    prompt += "Q: " + turns[i] + "\nA:";
    if (i < replies.size()) {
      messages.push_back({{"role", "assistant"}, {"content", replies[i]}});
      prompt += " " + replies[i] + "\n";
    }
  }
  std::string body = spec.request_template.empty() ? std::string(kDefaultRequestTemplate)
                                                   : spec.request_template;
  body = ReplaceAll(body, "{{model}}", json(spec.model_id).dump());
  body = ReplaceAll(body, "{{messages}}", messages.dump());
  body = ReplaceAll(body, "{{prompt}}", json(prompt).dump());
  body = ReplaceAll(body, "{{temperature}}", json(spec.params.temperature).dump());
  body = ReplaceAll(body, "{{max_tokens}}", json(spec.params.max_tokens).dump());
  if (!json::accept(body)) {
    throw Error(ErrorCode::kConfiguration,
                "request template for " + spec.model_id + " does not render to JSON", body);
  }
  return body;
}

Gateway::Gateway(GatewayOptions options)
    : options_(std::move(options)),
      transport_(options_.transport),
      slots_(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(options_.parallelism, 1, 1024))) {
  cache_ = options_.cache_path.empty() ? std::make_unique<ResponseCache>()
                                       : std::make_unique<ResponseCache>(options_.cache_path);
  if (!transport_) transport_ = MakeHttplibTransport(options_.timeout);
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::string Gateway::Now() const {
  if (options_.clock) return options_.clock();
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunRecord Gateway::Ask(const ModelSpec& spec, const std::vector<std::string>& turns) {
  if (spec.model_id.empty()) throw Error(ErrorCode::kConfiguration, "model_id is empty");
  if (turns.empty()) throw Error(ErrorCode::kPrecondition, "ask needs at least one turn");
  const std::string key = CacheKey(spec.model_id, spec.params, turns);
  if (auto hit = cache_->Get(key)) {
    ++cache_hits_;
    return *hit;
  }

  std::promise<RunRecord> promise;
  std::shared_future<RunRecord> pending;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(inflight_mu_);
    auto it = inflight_.find(key);
    if (it != inflight_.end()) {
      pending = it->second;
    } else if (auto late = cache_->Get(key)) {
      ++cache_hits_;
      return *late;
    } else {
      pending = promise.get_future().share();
      inflight_.emplace(key, pending);
      owner = true;
    }
  }
  if (!owner) {
    ++cache_hits_;
    return pending.get();
  }
  try {
    RunRecord record = Execute(spec, turns, key);
    cache_->Put(record);
    promise.set_value(record);
    std::lock_guard<std::mutex> lock(inflight_mu_);
    inflight_.erase(key);
    return record;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard<std::mutex> lock(inflight_mu_);
    inflight_.erase(key);
    throw;
  }
}

RunRecord Gateway::Execute(const ModelSpec& spec, const std::vector<std::string>& turns,
                           const std::string& key) {
  std::string api_key;
  if (!spec.is_mock()) {
    const char* env = std::getenv(spec.AuthEnvName().c_str());
    if (!env || !*env) {
      throw Error(ErrorCode::kConfiguration,
                  "environment variable " + spec.AuthEnvName() + " is not set",
                  spec.AuthEnvName());
    }
    api_key = env;
  }
  RunRecord record;
  record.model_id = spec.model_id;
  record.turns = turns;
  record.params = spec.params;
  record.cache_key = key;

  slots_.acquire();
  std::size_t now_in_flight = ++in_flight_;
  std::size_t seen = max_in_flight_.load();
  while (now_in_flight > seen && !max_in_flight_.compare_exchange_weak(seen, now_in_flight)) {
  }
  ++network_calls_;
  try {
    std::vector<std::string> history;
    for (const auto& turn : turns) {
      history.push_back(turn);
      record.outputs.push_back(spec.is_mock() ? spec.mock->Reply(history)
                                              : CallRemote(spec, api_key, history, record.outputs));
    }
  } catch (...) {
    --in_flight_;
    slots_.release();
    throw;
  }
  --in_flight_;
  slots_.release();
  record.output = record.outputs.back();
  record.created_at = Now();
  return record;
}

std::string Gateway::CallRemote(const ModelSpec& spec, const std::string& api_key,
                                const std::vector<std::string>& turns,
                                const std::vector<std::string>& replies) {
  const std::string body = RenderRequest(spec, turns, replies);
  const std::vector<std::pair<std::string, std::string>> headers = {
      {"Authorization", "Bearer " + api_key}};
  std::chrono::milliseconds backoff = options_.initial_backoff;
  HttpResponse last;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      auto wait = backoff;
      if (last.retry_after_seconds) {
        wait = std::max(wait, std::chrono::milliseconds(
                                  static_cast<std::int64_t>(*last.retry_after_seconds * 1000)));
      }
      options_.sleep(std::min(wait, options_.max_backoff));
      backoff = std::min(backoff * 2, options_.max_backoff);
    }
    if (options_.rate_limiter) options_.rate_limiter->Acquire();
    last = transport_->Post(spec.endpoint, headers, body);
    if (last.status >= 200 && last.status < 300) {
      json doc = json::parse(last.body, nullptr, false);
      if (doc.is_discarded()) {
        throw Error(ErrorCode::kTransport, "response is not JSON", std::to_string(last.status));
      }
      json::json_pointer ptr(spec.response_path);
      if (!doc.contains(ptr) || !doc.at(ptr).is_string()) {
        throw Error(ErrorCode::kTransport, "response has no text at " + spec.response_path,
                    std::to_string(last.status));
      }
      return doc.at(ptr).get<std::string>();
    }
    if (!Transient(last)) break;
    spdlog::debug("{}: transient failure (status {}), attempt {}", spec.model_id, last.status,
                  attempt + 1);
  }
  std::string status = last.status == 0 ? "connection: " + last.error : std::to_string(last.status);
  throw Error(ErrorCode::kTransport,
              fmt::format("{}: request failed after retries (last status {})", spec.model_id,
                          status),
              status);
}

std::vector<Gateway::Outcome> Gateway::AskMany(
    const ModelSpec& spec, const std::vector<std::vector<std::string>>& conversations) {
  std::vector<Outcome> results(conversations.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < conversations.size(); i = next++) {
      try {
        results[i].record = Ask(spec, conversations[i]);
      } catch (const Error& ex) {
        results[i].error = ex.what();
        results[i].error_code = static_cast<int>(ex.code());
      }
    }
  };
  std::size_t threads = std::min(std::max<std::size_t>(1, options_.parallelism),
                                 std::max<std::size_t>(1, conversations.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace kbqa
