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

// Runs the acceptance criteria and prints one PASS/FAIL line for each.
//
//   kbqa_acceptance [--only <name>]... [--list]

#include <chrono>
#include <iostream>
#include <set>
#include <string>

#include <fmt/format.h>

#include "criteria.h"

int main(int argc, char** argv) {
  using kbqa::acceptance::AllCriteria;
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only.insert(argv[++i]);
    } else if (arg == "--list") {
      for (const auto& c : AllCriteria()) std::cout << c.name << "\n";
      return 0;
    } else {
      std::cerr << "usage: kbqa_acceptance [--only <name>]... [--list]\n";
      return 2;
    }
  }
  for (const auto& name : only) {
    bool known = false;
    for (const auto& c : AllCriteria()) known = known || c.name == name;
    if (!known) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : AllCriteria()) {
    if (!only.empty() && !only.count(c.name)) continue;
    auto start = std::chrono::steady_clock::now();
    kbqa::acceptance::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.Check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.Check(secs < c.budget_seconds,
                  fmt::format("runtime {:.2f}s over the {:.0f}s budget", secs, c.budget_seconds));
    std::cout << fmt::format("{} {} ({:.2f}s, budget {:.0f}s)\n", outcome.pass ? "PASS" : "FAIL",
                             c.name, secs, c.budget_seconds);
    for (const auto& n : outcome.notes) std::cout << "    " << n << "\n";
    for (const auto& f : outcome.failures) std::cout << "    failed: " << f << "\n";
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
