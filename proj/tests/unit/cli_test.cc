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

#include "cli/commands.h"

#include <gtest/gtest.h>

#include <sstream>

#include "kbqa/sweep.h"
#include "test_support.h"

namespace kbqa::cli {
namespace {

using nlohmann::json;
using testing::Fixture;
using testing::ReadFile;
using testing::TempDir;
using testing::WriteFile;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json Summary() const { return json::parse(out.substr(0, out.find('\n'))); }
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = Main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string MockConfig(const std::string& extra = "") {
  return "seed = 7\n"
         "store = " + Fixture("e2e/store.jsonl").string() + "\n"
         "cache = cache.jsonl\n"
         "runs = runs.jsonl\n"
         "paraphrases = " + Fixture("e2e/paraphrases.jsonl").string() + "\n"
         "battery = base\n" + extra +
         "\n[model.mock]\n"
         "mock_script = " + Fixture("e2e/mock_script.json").string() + "\n";
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  auto r = Invoke({"run"});
  EXPECT_EQ(r.code, kExitUsage);
  auto err = json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_EQ(err.at("error"), "usage");
}

TEST(Cli, MissingConfigIsUsage) {
  auto r = Invoke({"run", "--config", "/nonexistent/run.ini"});
  EXPECT_EQ(r.code, kExitUsage);
  auto err = json::parse(r.err.substr(0, r.err.find('\n')));
  EXPECT_TRUE(err.contains("message"));
  EXPECT_TRUE(err.contains("detail"));
}

TEST(Cli, UnknownConfigKeyIsUsage) {
  TempDir dir;
  WriteFile(dir / "run.ini", MockConfig("colour = blue\n"));
  EXPECT_EQ(Invoke({"run", "--config", (dir / "run.ini").string()}).code, kExitUsage);
}

TEST(Cli, RunIsResumableFromCache) {
  TempDir dir;
  WriteFile(dir / "run.ini", MockConfig());
  auto first = Invoke({"run", "--config", (dir / "run.ini").string()});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  auto s1 = first.Summary();
  EXPECT_EQ(s1.at("cases"), 50);
  EXPECT_EQ(s1.at("network_calls"), 50);
  EXPECT_EQ(s1.at("seed"), 7);
  EXPECT_EQ(s1.at("config_hash").get<std::string>().size(), 64u);
  auto second = Invoke({"run", "--config", (dir / "run.ini").string()});
  ASSERT_EQ(second.code, kExitOk);
  EXPECT_EQ(second.Summary().at("network_calls"), 0);
  EXPECT_EQ(second.Summary().at("cache_hits"), 50);
  EXPECT_EQ(s1.at("config_hash"), second.Summary().at("config_hash"));
}

TEST(Cli, EvalIsDeterministic) {
  TempDir dir;
  WriteFile(dir / "run.ini", MockConfig());
  std::string cfg = (dir / "run.ini").string();
  ASSERT_EQ(Invoke({"run", "--config", cfg}).code, kExitOk);
  auto e1 = Invoke({"eval", "--config", cfg, "--out", (dir / "rep").string()});
  ASSERT_EQ(e1.code, kExitOk) << e1.err;
  EXPECT_EQ(e1.Summary().at("base_em").at("mock"), "60.00");
  std::string first = ReadFile(dir / "rep/report.json");
  auto e2 = Invoke({"eval", "--config", cfg, "--out", (dir / "rep").string()});
  ASSERT_EQ(e2.code, kExitOk);
  EXPECT_EQ(ReadFile(dir / "rep/report.json"), first);
  auto md = Invoke({"report", "--in", (dir / "rep").string(), "--format", "md"});
  ASSERT_EQ(md.code, kExitOk) << md.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "rep/report.md"));
  EXPECT_EQ(Invoke({"report", "--in", (dir / "rep").string(), "--format", "pdf"}).code, kExitUsage);
}

TEST(Cli, PartialWhenSomeModelsFail) {
  TempDir dir;
  unsetenv("REMOTE_API_KEY");
  WriteFile(dir / "run.ini", MockConfig() +
                                 "\n[model.remote]\n"
                                 "endpoint = http://127.0.0.1:1/v1/chat/completions\n");
  auto r = Invoke({"run", "--config", (dir / "run.ini").string()});
  EXPECT_EQ(r.code, kExitPartial);
  auto s = r.Summary();
  EXPECT_EQ(s.at("failed"), 50);
  EXPECT_EQ(s.at("completed"), 50);
}

TEST(Cli, MissingCredentialsOnlyIsUsage) {
  TempDir dir;
  unsetenv("REMOTE_API_KEY");
  WriteFile(dir / "run.ini", MockConfig() +
                                 "\n[model.remote]\n"
                                 "endpoint = http://127.0.0.1:1/v1/chat/completions\n");
  auto r = Invoke({"run", "--config", (dir / "run.ini").string(), "--model", "remote"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("\"error\""), std::string::npos);
}

TEST(Cli, SweepMatchesLibrary) {
  TempDir dir;
  auto r = Invoke({"sweep", "--labels", Fixture("sweep/labels_200.jsonl").string(), "--out",
                (dir / "curve.csv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto expected = SweepThreshold(ReadLabels(Fixture("sweep/labels_200.jsonl")));
  EXPECT_EQ(r.Summary().at("tau_star").get<double>(), expected.tau_star);
  std::string csv = ReadFile(dir / "curve.csv");
  EXPECT_EQ(csv.substr(0, csv.find_first_of("\r\n")), "threshold,model_id,false_rate,accuracy");
  EXPECT_TRUE(r.Summary().contains("config_hash"));
}

TEST(Cli, IngestTruncatedIsPartial) {
  TempDir dir;
  auto r = Invoke({"ingest", "--dataset", "kqapro", "--in",
                Fixture("datasets/kqapro_truncated.json").string(), "--out",
                (dir / "store.jsonl").string()});
  EXPECT_EQ(r.code, kExitPartial) << r.err;
  EXPECT_EQ(r.Summary().at("records"), 1);
  EXPECT_EQ(Invoke({"ingest", "--dataset", "nope", "--in", "x", "--out", "y"}).code, kExitUsage);
}

TEST(Cli, ChecklistManifestThenRun) {
  TempDir dir;
  WriteFile(dir / "run.ini", MockConfig());
  std::string cfg = (dir / "run.ini").string();
  auto c = Invoke({"checklist", "--config", cfg, "--battery", "inv", "--out",
                (dir / "inv.jsonl").string()});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(c.Summary().at("cases"), 150);
  auto r = Invoke({"run", "--config", cfg, "--manifest", (dir / "inv.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.Summary().at("cases"), 150);
}

TEST(Cli, ErrorLineIsJson) {
  auto line = json::parse(ErrorLine("io", "cannot open \"x\"", "x"));
  EXPECT_EQ(line.at("error"), "io");
  EXPECT_EQ(line.at("message"), "cannot open \"x\"");
  EXPECT_EQ(ExitCodeFor(ErrorCode::kConfiguration), kExitUsage);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kIo), kExitError);
}

}  // namespace
}  // namespace kbqa::cli
