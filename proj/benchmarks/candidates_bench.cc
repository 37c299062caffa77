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

#include "kbqa/candidates.h"

namespace kbqa {
namespace {

const char* const kOutputs[] = {
    "Paris.",
    "The Nile flows through Cairo, Egypt and Sudan before reaching the Mediterranean Sea.",
    "I believe the answer is Leonardo da Vinci, although some sources mention Andrea del "
    "Verrocchio; his workshop in Florence trained several painters.\n1. Raphael\n2. Titian",
};

void BM_FallbackCandidates(benchmark::State& state) {
  const char* output = kOutputs[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExtractFallbackCandidates(output));
  }
}
BENCHMARK(BM_FallbackCandidates)->DenseRange(0, 2);

void BM_EnumerationSegments(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerationSegments(kOutputs[2]));
  }
}
BENCHMARK(BM_EnumerationSegments);

}  // namespace
}  // namespace kbqa
