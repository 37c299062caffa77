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

#include "kbqa/sweep.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "kbqa/error.h"
#include "test_support.h"

namespace kbqa {
namespace {

TEST(Grid, DefaultGridHasSixtyThreePoints) {
  auto grid = ThresholdGrid(0.38, 0.01);
  ASSERT_EQ(grid.size(), 63u);
  for (int k = 38; k <= 100; ++k) EXPECT_EQ(grid[k - 38], k / 100.0);
}

TEST(Grid, AlwaysEndsAtOne) {
  auto grid = ThresholdGrid(0.5, 0.3);
  EXPECT_EQ(grid, (std::vector<double>{0.5, 0.8, 1.0}));
  EXPECT_THROW(ThresholdGrid(0.5, 0.0), Error);
  EXPECT_THROW(ThresholdGrid(1.5, 0.1), Error);
}

TEST(Sweep, PerfectSamplesTieBreakToOne) {
  std::vector<LabeledSample> s(10, LabeledSample{1.0, true, "m"});
  auto r = SweepThreshold(s);
  EXPECT_EQ(r.tau_star, 1.0);
  EXPECT_EQ(r.mean_false_rate, 0.0);
  for (const auto& p : r.curve) EXPECT_EQ(p.false_rate, 0.0);
}

TEST(Sweep, EmptyIsError) { EXPECT_THROW(SweepThreshold({}), Error); }

TEST(Sweep, CountsAtBoundary) {
  // A similarity equal to the threshold counts as predicted correct.
  auto r = SweepThreshold({{0.78, false, "m"}, {0.5, true, "m"}}, 0.78, 0.22);
  ASSERT_EQ(r.curve.size(), 2u);
  EXPECT_EQ(r.curve[0].false_positives, 1u);
  EXPECT_EQ(r.curve[0].false_negatives, 1u);
  EXPECT_EQ(r.curve[1].false_positives, 0u);
}

// Brute force over integer grid indices with exact rational comparison.
struct Oracle {
  int best_k = -1;
  std::map<std::pair<int, std::string>, std::pair<std::size_t, std::size_t>> fp_fn;
};

Oracle BruteForce(const std::vector<LabeledSample>& samples) {
  std::map<std::string, std::vector<LabeledSample>> by;
  for (const auto& s : samples) by[s.model_id].push_back(s);
  long long common = 1;
  for (const auto& [m, v] : by) common *= static_cast<long long>(v.size());
  Oracle o;
  long long best = -1;
  for (int k = 38; k <= 100; ++k) {
    const double tau = k / 100.0;
    long long scaled = 0;
    for (const auto& [m, v] : by) {
      std::size_t fp = 0, fn = 0;
      for (const auto& s : v) {
        bool pred = s.similarity >= tau;
        fp += pred && !s.human_correct;
        fn += !pred && s.human_correct;
      }
      o.fp_fn[{k, m}] = {fp, fn};
      scaled += static_cast<long long>(fp + fn) * (common / static_cast<long long>(v.size()));
    }
    if (best < 0 || scaled <= best) {
      best = scaled;
      o.best_k = k;
    }
  }
  return o;
}

TEST(Sweep, MatchesBruteForceOnFixture) {
  auto samples = ReadLabels(testing::Fixture("sweep/labels_200.jsonl"));
  ASSERT_EQ(samples.size(), 200u);
  auto r = SweepThreshold(samples);
  Oracle o = BruteForce(samples);
  EXPECT_EQ(r.tau_star, o.best_k / 100.0);
  ASSERT_EQ(r.curve.size(), 63u * r.models.size());
  for (const auto& p : r.curve) {
    int k = static_cast<int>(std::lround(p.threshold * 100));
    EXPECT_EQ(p.threshold, k / 100.0);
    auto [fp, fn] = o.fp_fn.at({k, p.model_id});
    EXPECT_EQ(p.false_positives, fp);
    EXPECT_EQ(p.false_negatives, fn);
  }
}

TEST(Sweep, MonotoneInThreshold) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LabeledSample> s;
    int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      s.push_back({static_cast<double>(rng() % 1001) / 1000.0, rng() % 2 == 0,
                   "m" + std::to_string(rng() % 3)});
    }
    auto r = SweepThreshold(s);
    std::map<std::string, const CurvePoint*> prev;
    for (const auto& p : r.curve) {
      if (auto it = prev.find(p.model_id); it != prev.end()) {
        EXPECT_GE(p.false_negatives, it->second->false_negatives);
        EXPECT_LE(p.false_positives, it->second->false_positives);
      }
      prev[p.model_id] = &p;
    }
  }
}

TEST(CurveCsv, HeaderAndPercentages) {
  auto r = SweepThreshold({{0.9, true, "gpt,4"}, {0.4, false, "b"}}, 0.38, 0.31);
  std::ostringstream out;
  WriteCurveCsv(r, out);
  std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "threshold,model_id,false_rate,accuracy");
  EXPECT_NE(csv.find("0.38,\"gpt,4\",0.00,100.00"), std::string::npos) << csv;
  EXPECT_NE(csv.find("0.38,b,100.00,100.00"), std::string::npos) << csv;
}

TEST(Labels, RejectsOutOfRangeSimilarity) {
  testing::TempDir dir;
  testing::WriteFile(dir / "l.jsonl",
                     "{\"similarity\":0.5,\"human_correct\":true,\"model_id\":\"m\"}\n"
                     "{\"similarity\":1.5,\"human_correct\":true,\"model_id\":\"m\"}\n");
  try {
    ReadLabels(dir / "l.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.detail(), "2");
  }
}

}  // namespace
}  // namespace kbqa
