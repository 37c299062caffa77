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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "kbqa/error.h"
#include "kbqa/text.h"
#include "test_support.h"

namespace kbqa {
namespace {

using nlohmann::json;
using testing::LocalServer;

void Reply(httplib::Response& res, const json& body) {
  res.set_content(body.dump(), "application/json");
}

class SidecarTest : public ::testing::Test {
 protected:
  void SetUp() override {
    auto& s = server_.server();
    s.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      Reply(res, {{"status", "ready"}, {"models", {{"parse", "stub"}}}});
    });
    s.Post("/parse", [](const httplib::Request& req, httplib::Response& res) {
      auto body = json::parse(req.body);
      std::string t = body.at("text");
      if (t == "the red car stopped") {
        Reply(res, {{"phrases",
                     {{{"text", "the red car"}, {"label", "NP"}, {"char_span", {0, 11}}},
                      {{"text", "stopped"}, {"label", "VP"}, {"char_span", {12, 19}}}}}});
      } else if (t == "Zürich is in Switzerland") {
        // Offsets count code points, not bytes.
        Reply(res, {{"phrases", {{{"label", "NP"}, {"char_span", {13, 24}}},
                                 {{"label", "NP"}, {"char_span", {0, 6}}}}}});
      } else if (t == "bad label") {
        Reply(res, {{"phrases", {{{"label", "PP"}, {"char_span", {0, 3}}}}}});
      } else if (t == "out of range") {
        Reply(res, {{"phrases", {{{"label", "NP"}, {"char_span", {0, 99}}}}}});
      } else {
        res.status = 400;
        Reply(res, {{"error", "unsupported"}});
      }
    });
    s.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      auto texts = json::parse(req.body).at("texts");
      {
        std::lock_guard<std::mutex> lock(mu_);
        batches_.push_back(texts.size());
      }
      json vectors = json::array();
      for (const auto& t : texts) {
        double a = static_cast<double>(t.get<std::string>().size());
        vectors.push_back({std::cos(a), std::sin(a)});
      }
      Reply(res, {{"vectors", vectors}});
    });
    s.Post("/ner", [](const httplib::Request& req, httplib::Response& res) {
      std::string t = json::parse(req.body).at("text");
      if (t == "boom") {
        res.status = 503;
        return;
      }
      if (t == "garbage") {
        res.set_content("not json", "text/plain");
        return;
      }
      Reply(res, {{"entities", {{{"text", "Paris"}, {"type", "LOC"}}}}});
    });
    server_.Start();
    client_ = std::make_unique<SidecarClient>(SidecarOptions{server_.url(),
                                                             std::chrono::milliseconds(5000)});
  }

  LocalServer server_;
  std::unique_ptr<SidecarClient> client_;
  std::mutex mu_;
  std::vector<std::size_t> batches_;
};

TEST_F(SidecarTest, Health) {
  EXPECT_TRUE(client_->Ready());
  EXPECT_EQ(client_->Health().at("status"), "ready");
}

TEST_F(SidecarTest, ParseYieldsNounPhrase) {
  std::string input = "the red car stopped";
  auto phrases = client_->Parse(input, "en");
  ASSERT_EQ(phrases.size(), 2u);
  EXPECT_EQ(phrases[0].label, "NP");
  EXPECT_EQ(phrases[0].span.View(input), "the red car");
  auto pool = ExtractCandidates(input, phrases);
  EXPECT_EQ(pool.phrases.front(), "the red car stopped");
  EXPECT_NE(std::find(pool.phrases.begin(), pool.phrases.end(), "the red car"),
            pool.phrases.end());
}

TEST_F(SidecarTest, SpansAreCodePoints) {
  std::string input = "Zürich is in Switzerland";
  auto phrases = client_->Parse(input, "en");
  ASSERT_EQ(phrases.size(), 2u);
  EXPECT_EQ(phrases[0].span.View(input), "Switzerland");
  EXPECT_EQ(phrases[0].text, "Switzerland");
  EXPECT_EQ(phrases[1].text, "Zürich");
}

TEST_F(SidecarTest, ErrorMapping) {
  auto code = [&](auto&& fn) -> std::optional<ErrorCode> {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code([&] { client_->Parse("unknown", "en"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code([&] { client_->Parse("bad label", "en"); }), ErrorCode::kUnavailable);
  EXPECT_EQ(code([&] { client_->Parse("out of range", "en"); }), ErrorCode::kUnavailable);
  EXPECT_EQ(code([&] { client_->Ner("boom"); }), ErrorCode::kUnavailable);
  EXPECT_EQ(code([&] { client_->Ner("garbage"); }), ErrorCode::kUnavailable);
  EXPECT_EQ(code([&] { client_->Parse("", "en"); }), ErrorCode::kInvalidArgument);
}

TEST_F(SidecarTest, EmbedSplitsLargeBatches) {
  std::vector<std::string> texts;
  for (int i = 0; i < 257; ++i) texts.push_back(std::string(static_cast<std::size_t>(i % 7 + 1), 'a'));
  auto vectors = client_->Embed(texts, "en");
  ASSERT_EQ(vectors.size(), 257u);
  EXPECT_EQ(batches_, (std::vector<std::size_t>{256, 1}));
  for (const auto& v : vectors) {
    EXPECT_NEAR(std::hypot(v[0], v[1]), 1.0, 1e-12);
  }
  SidecarEmbedder embedder(*client_);
  auto e = embedder.Embed({"ab", "ab", "abc"}, "en");
  EXPECT_NEAR(Similarity(e[0], e[1]), 1.0, 1e-12);
  EXPECT_NEAR(Similarity(e[0], e[2]), std::cos(1.0), 1e-12);
}

TEST_F(SidecarTest, Ner) {
  auto mentions = SidecarNer(*client_).Recognize("Is Paris big?");
  ASSERT_EQ(mentions.size(), 1u);
  EXPECT_EQ(mentions[0].type, AnswerType::kLoc);
  EXPECT_EQ(mentions[0].span.begin, 3u);
}

TEST(SidecarDown, UnreachableIsUnavailable) {
  SidecarClient client({"http://127.0.0.1:1", std::chrono::milliseconds(500)});
  EXPECT_FALSE(client.Ready());
  try {
    client.Parse("the red car", "en");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
}

}  // namespace
}  // namespace kbqa
