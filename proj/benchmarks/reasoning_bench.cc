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

#include "kbqa/reasoning.h"

namespace kbqa {
namespace {

const char* const kQueries[] = {
    "SELECT ?x WHERE { wd:Q42 wdt:P800 ?x }",
    "SELECT (COUNT(DISTINCT ?x) AS ?n) WHERE { ?x wdt:P31 wd:Q5 ; wdt:P27 wd:Q30 . "
    "?x wdt:P569 ?born FILTER(YEAR(?born) > 1950) }",
    "SELECT ?x WHERE { { ?x wdt:P31 wd:Q515 } UNION { ?x wdt:P31 wd:Q1549591 } "
    "?x wdt:P1082 ?pop . ?x wdt:P17 ?c . ?c wdt:P30 wd:Q46 } ORDER BY DESC(?pop) LIMIT 1",
};

void BM_ClassifyReasoning(benchmark::State& state) {
  const char* query = kQueries[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(ClassifyReasoning(query));
  }
}
BENCHMARK(BM_ClassifyReasoning)->DenseRange(0, 2);

}  // namespace
}  // namespace kbqa
