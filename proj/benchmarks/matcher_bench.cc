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

#include <benchmark/benchmark.h>

#include "kbqa/matcher.h"

namespace kbqa {
namespace {

QuestionRecord Record(AnswerType type, std::string gold) {
  QuestionRecord r;
  r.id = "wqsp:bench";
  r.dataset = "wqsp";
  r.text = "q";
  r.tags.answer_type = type;
  r.gold.push_back({std::move(gold), std::nullopt, {"USA", "United States", "the States"}});
  return r;
}

void BM_EvaluateExact(benchmark::State& state) {
  auto r = Record(AnswerType::kLoc, "United States of America");
  MatchConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EvaluateAnswer(r, "The answer is the United States.", cfg));
  }
}
BENCHMARK(BM_EvaluateExact);

void BM_EvaluateFuzzy(benchmark::State& state) {
  auto r = Record(AnswerType::kLoc, "United States of America");
  MatchConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EvaluateAnswer(r, "It is most likely the Unted Stats of Amerca, in my view.", cfg));
  }
}
BENCHMARK(BM_EvaluateFuzzy);

void BM_TrigramEmbed(benchmark::State& state) {
  TrigramEmbedder embedder;
  std::string text(static_cast<std::size_t>(state.range(0)), 'a');
  for (std::size_t i = 0; i < text.size(); i += 7) text[i] = ' ';
  for (auto _ : state) {
    benchmark::DoNotOptimize(embedder.EmbedOne(text));
  }
}
BENCHMARK(BM_TrigramEmbed)->Range(16, 1024);

}  // namespace
}  // namespace kbqa
