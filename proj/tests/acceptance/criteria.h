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

#ifndef KBQA_TESTS_ACCEPTANCE_CRITERIA_H_
#define KBQA_TESTS_ACCEPTANCE_CRITERIA_H_

#include <functional>
#include <string>
#include <vector>

namespace kbqa::acceptance {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;    // printed under the verdict line
  std::vector<std::string> failures;

  void Check(bool ok, std::string what) {
    if (!ok) {
      pass = false;
      failures.push_back(std::move(what));
    }
  }
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& AllCriteria();

}  // namespace kbqa::acceptance

#endif  // KBQA_TESTS_ACCEPTANCE_CRITERIA_H_
