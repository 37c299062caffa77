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

#ifndef KBQA_GATEWAY_H_
#define KBQA_GATEWAY_H_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kbqa {

struct DecodingParams {
  double temperature = 0.0;
  int max_tokens = 256;

  nlohmann::json ToJson() const;
  friend bool operator==(const DecodingParams&, const DecodingParams&) = default;
};

// Deterministic in-process model. Lookup order for each turn: a scripted
// conversation matching all turns so far, the turn text, "echo: X" -> X,
// then the fallback.
struct MockScript {
  std::map<std::string, std::string> answers;
  std::map<std::vector<std::string>, std::string> conversations;
  std::string fallback;

  // {"answers": {q: a}, "conversations": [{"turns": [...], "output": o}],
  //  "fallback": f}
  static MockScript FromJson(const nlohmann::json& j);
  std::string Reply(const std::vector<std::string>& turns_so_far) const;
};

struct ModelSpec {
  std::string model_id;
  std::string endpoint;  // http(s) URL of the chat/completions route
  std::string auth_env;  // empty: <MODEL_ID>_API_KEY
  DecodingParams params;
  // JSON text; {{model}}, {{messages}}, {{prompt}}, {{temperature}} and
  // {{max_tokens}} are replaced by JSON-encoded values.
  std::string request_template;
  std::string response_path = "/choices/0/message/content";  // JSON pointer
  std::shared_ptr<const MockScript> mock;

  bool is_mock() const { return mock != nullptr; }
  // Upper-cased model id with non-alphanumerics as '_', plus "_API_KEY".
  std::string AuthEnvName() const;
};

inline constexpr std::string_view kDefaultRequestTemplate =
    R"({"model": {{model}}, "messages": {{messages}}, )"
    R"("temperature": {{temperature}}, "max_tokens": {{max_tokens}}})";

ModelSpec MockModel(std::map<std::string, std::string> script, std::string fallback,
                    std::string model_id = "mock");
ModelSpec MockModel(MockScript script, std::string model_id = "mock");

struct RunRecord {
  std::string model_id;
  std::vector<std::string> turns;
  std::vector<std::string> outputs;  // one reply per turn
  std::string output;                // final reply
  std::string cache_key;
  std::string created_at;  // ISO-8601 UTC
  DecodingParams params;

  nlohmann::ordered_json ToJson() const;
  static RunRecord FromJson(const nlohmann::json& j);
};

// SHA-256 over the canonical JSON of (model_id, params, turns).
std::string CacheKey(const std::string& model_id, const DecodingParams& params,
                     const std::vector<std::string>& turns);

// Append-only JSONL cache of RunRecords. Many readers, one serialized
// writer. A torn last line from an interrupted run is ignored.
class ResponseCache {
 public:
  ResponseCache() = default;  // memory only
  explicit ResponseCache(const std::filesystem::path& path);

  std::optional<RunRecord> Get(const std::string& key) const;
  // First write wins; later records with the same key are dropped.
  void Put(const RunRecord& record);
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, RunRecord> records_;
  std::ofstream out_;
};

struct HttpResponse {
  int status = 0;  // 0 when no response was received
  std::string body;
  std::string error;  // transport failure description
  std::optional<double> retry_after_seconds;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Post(const std::string& url,
                            const std::vector<std::pair<std::string, std::string>>& headers,
                            const std::string& body) = 0;
};

std::unique_ptr<HttpTransport> MakeHttplibTransport(std::chrono::milliseconds timeout);

// Token bucket shared by every gateway that holds it.
class RateLimiter {
 public:
  using Sleep = std::function<void(std::chrono::nanoseconds)>;
  RateLimiter(double per_second, double burst, Sleep sleep = {});
  void Acquire();

 private:
  double rate_;
  double capacity_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  Sleep sleep_;
  std::mutex mu_;
};

struct GatewayOptions {
  std::filesystem::path cache_path;  // empty: memory-only cache
  std::size_t parallelism = 4;
  int max_retries = 4;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{16000};
  std::chrono::milliseconds timeout{60000};
  std::shared_ptr<RateLimiter> rate_limiter;
  std::shared_ptr<HttpTransport> transport;  // null: cpp-httplib
  std::function<void(std::chrono::milliseconds)> sleep;  // null: this_thread
  std::function<std::string()> clock;                    // null: system clock
};

class Gateway {
 public:
  explicit Gateway(GatewayOptions options = {});

  // Served from the cache when the key is present; otherwise performs one
  // conversation (turn by turn), stores and returns it. Throws
  // Error(kPrecondition) for empty turns, Error(kConfiguration) when the
  // API key variable is unset, Error(kTransport) once retries run out.
  RunRecord Ask(const ModelSpec& spec, const std::vector<std::string>& turns);

  // Runs every conversation with at most `parallelism` in flight; results
  // keep the input order. Per-item failures are returned as errors.
  struct Outcome {
    std::optional<RunRecord> record;
    std::optional<std::string> error;
    int error_code = 0;  // ErrorCode as int when error is set
  };
  std::vector<Outcome> AskMany(const ModelSpec& spec,
                               const std::vector<std::vector<std::string>>& conversations);

  std::size_t network_calls() const { return network_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }
  std::size_t max_in_flight() const { return max_in_flight_.load(); }
  const ResponseCache& cache() const { return *cache_; }

 private:
  RunRecord Execute(const ModelSpec& spec, const std::vector<std::string>& turns,
                    const std::string& key);
  std::string CallRemote(const ModelSpec& spec, const std::string& api_key,
                         const std::vector<std::string>& turns,
                         const std::vector<std::string>& replies);
  std::string Now() const;

  GatewayOptions options_;
  std::unique_ptr<ResponseCache> cache_;
  std::shared_ptr<HttpTransport> transport_;
  std::counting_semaphore<1024> slots_;
  std::mutex inflight_mu_;
  std::map<std::string, std::shared_future<RunRecord>> inflight_;
  std::atomic<std::size_t> network_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
  std::atomic<std::size_t> in_flight_{0};
  std::atomic<std::size_t> max_in_flight_{0};
};

// Builds the request body for one remote turn.
std::string RenderRequest(const ModelSpec& spec, const std::vector<std::string>& turns,
                          const std::vector<std::string>& replies);

}  // namespace kbqa

#endif  // KBQA_GATEWAY_H_
