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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <thread>

#include "kbqa/error.h"
#include "test_support.h"

namespace kbqa {
namespace {

using testing::TempDir;

ModelSpec Mock(std::map<std::string, std::string> answers, std::string fallback) {
  return MockModel(std::move(answers), std::move(fallback));
}

GatewayOptions Quiet() {
  GatewayOptions o;
  o.sleep = [](std::chrono::milliseconds) {};
  o.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
  return o;
}

TEST(Mock, EchoTurn) {
  Gateway g(Quiet());
  EXPECT_EQ(g.Ask(Mock({}, "?"), {"echo: Paris"}).output, "Paris");
}

TEST(Mock, ScriptAndFallback) {
  Gateway g(Quiet());
  auto spec = Mock({{"Q1", "yes"}}, "I don't know");
  EXPECT_EQ(g.Ask(spec, {"Q1"}).output, "yes");
  EXPECT_EQ(g.Ask(spec, {"Q2"}).output, "I don't know");
}

TEST(Mock, RepeatsAreIdentical) {
  Gateway g(Quiet());
  auto spec = Mock({{"Q1", "yes"}}, "no");
  std::string first = g.Ask(spec, {"Q1"}).output;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(g.Ask(spec, {"Q1"}).output, first);
}

TEST(Mock, MultiTurnConversations) {
  MockScript script;
  script.conversations[{"facts about Jaws", "Who directed Jaws?"}] = "Steven Spielberg";
  script.answers["facts about Jaws"] = "Jaws is a 1975 film.";
  script.fallback = "?";
  Gateway g(Quiet());
  auto r = g.Ask(MockModel(script), {"facts about Jaws", "Who directed Jaws?"});
  EXPECT_EQ(r.outputs, (std::vector<std::string>{"Jaws is a 1975 film.", "Steven Spielberg"}));
  EXPECT_EQ(r.output, "Steven Spielberg");
}

TEST(Mock, ScriptFromJson) {
  auto s = MockScript::FromJson(nlohmann::json::parse(
      R"({"answers": {"a": "b"}, "conversations": [{"turns": ["x", "y"], "output": "z"}],
          "fallback": "f"})"));
  EXPECT_EQ(s.Reply({"a"}), "b");
  EXPECT_EQ(s.Reply({"x", "y"}), "z");
  EXPECT_EQ(s.Reply({"q"}), "f");
}

TEST(Ask, SecondCallServedFromCache) {
  Gateway g(Quiet());
  auto spec = Mock({{"Q1", "yes"}}, "no");
  auto a = g.Ask(spec, {"Q1"});
  auto b = g.Ask(spec, {"Q1"});
  EXPECT_EQ(g.network_calls(), 1u);
  EXPECT_EQ(g.cache_hits(), 1u);
  EXPECT_EQ(a.cache_key, b.cache_key);
}

TEST(Ask, EmptyTurnsArePrecondition) {
  Gateway g(Quiet());
  try {
    g.Ask(Mock({}, ""), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(CacheKey, DependsOnParamsAndTurns) {
  DecodingParams p;
  auto k = CacheKey("m", p, {"a"});
  EXPECT_EQ(k.size(), 64u);
  EXPECT_NE(k, CacheKey("m", p, {"a", "b"}));
  EXPECT_NE(k, CacheKey("n", p, {"a"}));
  p.temperature = 0.7;
  EXPECT_NE(k, CacheKey("m", p, {"a"}));
}

TEST(Cache, ResumesFromDisk) {
  TempDir dir;
  auto opts = Quiet();
  opts.cache_path = dir / "cache.jsonl";
  auto spec = Mock({{"Q1", "yes"}, {"Q2", "no"}}, "?");
  {
    Gateway g(opts);
    g.Ask(spec, {"Q1"});
  }
  // Simulate a writer killed mid-record.
  {
    std::ofstream out(opts.cache_path, std::ios::app);
    out << R"({"cache_key": "dead", "model_id)";
  }
  Gateway g(opts);
  auto outcomes = g.AskMany(spec, {{"Q1"}, {"Q2"}});
  EXPECT_EQ(g.network_calls(), 1u);
  EXPECT_EQ(g.cache_hits(), 1u);
  Gateway again(opts);
  again.AskMany(spec, {{"Q1"}, {"Q2"}});
  EXPECT_EQ(again.network_calls(), 0u);
  EXPECT_EQ(again.cache().size(), 2u);
}

class ScriptedTransport : public HttpTransport {
 public:
  explicit ScriptedTransport(std::deque<HttpResponse> replies) : replies_(std::move(replies)) {}
  HttpResponse Post(const std::string& url,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    const std::string& body) override {
    std::lock_guard<std::mutex> lock(mu_);
    urls.push_back(url);
    bodies.push_back(body);
    for (const auto& [k, v] : headers) {
      if (k == "Authorization") auth = v;
    }
    if (replies_.empty()) return {500, "", "", std::nullopt};
    HttpResponse r = replies_.front();
    replies_.pop_front();
    return r;
  }
  std::vector<std::string> urls;
  std::vector<std::string> bodies;
  std::string auth;

 private:
  std::mutex mu_;
  std::deque<HttpResponse> replies_;
};

HttpResponse Ok(const std::string& text) {
  nlohmann::json body = {{"choices", {{{"message", {{"content", text}}}}}}};
  return {200, body.dump(), "", std::nullopt};
}

ModelSpec Remote() {
  ModelSpec spec;
  spec.model_id = "test-model";
  spec.endpoint = "http://example.invalid/v1/chat/completions";
  return spec;
}

class RemoteTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("TEST_MODEL_API_KEY", "sk-test", 1); }
  void TearDown() override { unsetenv("TEST_MODEL_API_KEY"); }
};

TEST_F(RemoteTest, RetriesTransientFailuresWithBackoff) {
  auto transport = std::make_shared<ScriptedTransport>(std::deque<HttpResponse>{
      {429, "", "", 3.0}, {503, "", "", std::nullopt}, Ok("Paris")});
  std::vector<std::chrono::milliseconds> waits;
  auto opts = Quiet();
  opts.transport = transport;
  opts.sleep = [&](std::chrono::milliseconds d) { waits.push_back(d); };
  Gateway g(opts);
  EXPECT_EQ(g.Ask(Remote(), {"Capital of France?"}).output, "Paris");
  EXPECT_EQ(transport->bodies.size(), 3u);
  EXPECT_EQ(transport->auth, "Bearer sk-test");
  ASSERT_EQ(waits.size(), 2u);
  EXPECT_EQ(waits[0], std::chrono::milliseconds(3000));  // Retry-After wins
  EXPECT_EQ(waits[1], std::chrono::milliseconds(1000));
}

TEST_F(RemoteTest, CapExceededCarriesLastStatus) {
  auto transport = std::make_shared<ScriptedTransport>(std::deque<HttpResponse>{});
  auto opts = Quiet();
  opts.transport = transport;
  opts.max_retries = 2;
  Gateway g(opts);
  try {
    g.Ask(Remote(), {"q"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransport);
    EXPECT_EQ(e.detail(), "500");
  }
  EXPECT_EQ(transport->bodies.size(), 3u);
}

TEST_F(RemoteTest, ClientErrorsAreNotRetried) {
  auto transport = std::make_shared<ScriptedTransport>(
      std::deque<HttpResponse>{{400, "{}", "", std::nullopt}, Ok("x")});
  auto opts = Quiet();
  opts.transport = transport;
  Gateway g(opts);
  EXPECT_THROW(g.Ask(Remote(), {"q"}), Error);
  EXPECT_EQ(transport->bodies.size(), 1u);
}

TEST_F(RemoteTest, MissingTextAtResponsePath) {
  auto transport = std::make_shared<ScriptedTransport>(
      std::deque<HttpResponse>{{200, R"({"choices": []})", "", std::nullopt}});
  auto opts = Quiet();
  opts.transport = transport;
  Gateway g(opts);
  EXPECT_THROW(g.Ask(Remote(), {"q"}), Error);
}

TEST_F(RemoteTest, MultiTurnSendsHistory) {
  auto transport = std::make_shared<ScriptedTransport>(
      std::deque<HttpResponse>{Ok("Jaws is a film."), Ok("Spielberg")});
  auto opts = Quiet();
  opts.transport = transport;
  Gateway g(opts);
  auto r = g.Ask(Remote(), {"facts", "who?"});
  EXPECT_EQ(r.output, "Spielberg");
  auto second = nlohmann::json::parse(transport->bodies[1]);
  ASSERT_EQ(second.at("messages").size(), 3u);
  EXPECT_EQ(second["messages"][1]["role"], "assistant");
  EXPECT_EQ(second["messages"][1]["content"], "Jaws is a film.");
  EXPECT_EQ(second["temperature"], 0.0);
}

TEST(Auth, MissingKeyIsConfigurationError) {
  unsetenv("TEST_MODEL_API_KEY");
  Gateway g(Quiet());
  try {
    g.Ask(Remote(), {"q"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
    EXPECT_EQ(e.detail(), "TEST_MODEL_API_KEY");
  }
}

TEST(Auth, EnvNameDerivation) {
  ModelSpec s;
  s.model_id = "gpt-3.5-turbo";
  EXPECT_EQ(s.AuthEnvName(), "GPT_3_5_TURBO_API_KEY");
  s.auth_env = "OPENAI_KEY";
  EXPECT_EQ(s.AuthEnvName(), "OPENAI_KEY");
}

TEST(Request, TemplateSubstitution) {
  ModelSpec s = Remote();
  s.request_template = R"({"engine": {{model}}, "prompt": {{prompt}}, "n": {{max_tokens}}})";
  auto body = nlohmann::json::parse(RenderRequest(s, {"Who?"}, {}));
  EXPECT_EQ(body["engine"], "test-model");
  EXPECT_EQ(body["prompt"], "Q: Who?\nA:");
  EXPECT_EQ(body["n"], 256);
  s.request_template = R"({"broken": {{model}})";
  EXPECT_THROW(RenderRequest(s, {"Who?"}, {}), Error);
}

class SlowTransport : public HttpTransport {
 public:
  HttpResponse Post(const std::string&, const std::vector<std::pair<std::string, std::string>>&,
                    const std::string& body) override {
    int now = ++active;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --active;
    auto j = nlohmann::json::parse(body);
    return Ok("re: " + j["messages"].back()["content"].get<std::string>());
  }
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
};

TEST_F(RemoteTest, ParallelismBoundAndOrder) {
  auto transport = std::make_shared<SlowTransport>();
  auto opts = Quiet();
  opts.transport = transport;
  opts.parallelism = 3;
  Gateway g(opts);
  std::vector<std::vector<std::string>> convs;
  for (int i = 0; i < 24; ++i) convs.push_back({"q" + std::to_string(i)});
  auto out = g.AskMany(Remote(), convs);
  ASSERT_EQ(out.size(), 24u);
  for (int i = 0; i < 24; ++i) {
    ASSERT_TRUE(out[i].record.has_value());
    EXPECT_EQ(out[i].record->output, "re: q" + std::to_string(i));
  }
  EXPECT_LE(transport->peak.load(), 3);
  EXPECT_LE(g.max_in_flight(), 3u);
}

TEST_F(RemoteTest, ConcurrentDuplicatesShareOneCall) {
  auto transport = std::make_shared<SlowTransport>();
  auto opts = Quiet();
  opts.transport = transport;
  opts.parallelism = 4;
  Gateway g(opts);
  auto out = g.AskMany(Remote(), std::vector<std::vector<std::string>>(8, {"same"}));
  for (const auto& o : out) EXPECT_EQ(o.record->output, "re: same");
  EXPECT_EQ(g.network_calls(), 1u);
}

TEST(AskMany, ReportsPerItemErrors) {
  Gateway g(Quiet());
  auto out = g.AskMany(Mock({}, "x"), {{"a"}, {}});
  EXPECT_TRUE(out[0].record.has_value());
  ASSERT_TRUE(out[1].error.has_value());
  EXPECT_EQ(out[1].error_code, static_cast<int>(ErrorCode::kPrecondition));
}

TEST(RateLimiter, SleepsWhenBucketEmpty) {
  std::vector<std::chrono::nanoseconds> sleeps;
  RateLimiter limiter(10.0, 1.0, [&](std::chrono::nanoseconds d) { sleeps.push_back(d); });
  limiter.Acquire();
  limiter.Acquire();
  ASSERT_EQ(sleeps.size(), 1u);
  EXPECT_GT(sleeps[0].count(), 50'000'000);
  EXPECT_LE(sleeps[0].count(), 100'000'000);
  EXPECT_THROW(RateLimiter(0.0, 1.0), Error);
}

TEST(HttpTransport, TalksToLocalServer) {
  testing::LocalServer server;
  server.server().Post("/v1/chat/completions",
                       [](const httplib::Request& req, httplib::Response& res) {
                         EXPECT_EQ(req.get_header_value("Authorization"), "Bearer k");
                         auto j = nlohmann::json::parse(req.body);
                         nlohmann::json reply = {
                             {"choices",
                              {{{"message", {{"content", j["messages"][0]["content"]}}}}}}};
                         res.set_content(reply.dump(), "application/json");
                       });
  server.server().Post("/busy", [](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_header("Retry-After", "2");
  });
  server.Start();
  auto transport = MakeHttplibTransport(std::chrono::milliseconds(5000));
  auto ok = transport->Post(server.url() + "/v1/chat/completions", {{"Authorization", "Bearer k"}},
                            R"({"messages": [{"role": "user", "content": "hi"}]})");
  EXPECT_EQ(ok.status, 200);
  EXPECT_NE(ok.body.find("hi"), std::string::npos);
  auto busy = transport->Post(server.url() + "/busy", {}, "{}");
  EXPECT_EQ(busy.status, 429);
  EXPECT_EQ(busy.retry_after_seconds, 2.0);
  auto down = transport->Post("http://127.0.0.1:1/x", {}, "{}");
  EXPECT_EQ(down.status, 0);
  EXPECT_FALSE(down.error.empty());
}

}  // namespace
}  // namespace kbqa
