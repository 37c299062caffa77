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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {

std::vector<double> ThresholdGrid(double lower, double step) {
  if (!(step > 0.0) || !(lower >= 0.0) || !(lower <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bad sweep grid lower={} step={}", lower, step));
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    double t = std::round((lower + static_cast<double>(i) * step) * 1e9) / 1e9;
    if (t > 1.0) break;
    grid.push_back(t);
  }
  if (grid.empty() || grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

SweepResult SweepThreshold(const std::vector<LabeledSample>& samples, double lower,
                           double step) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs labeled samples");
  SweepResult result;
  result.grid = ThresholdGrid(lower, step);

  std::map<std::string, std::vector<const LabeledSample*>> by_model;
  for (const auto& s : samples) by_model[s.model_id].push_back(&s);
  for (const auto& [m, _] : by_model) result.models.push_back(m);

  double best = 0.0;
  bool have_best = false;
  for (double tau : result.grid) {
    double sum = 0.0;
    for (const auto& [model, rows] : by_model) {
      CurvePoint p;
      p.threshold = tau;
      p.model_id = model;
      p.n = rows.size();
      for (const auto* s : rows) {
        bool predicted = s->similarity >= tau;
        if (predicted) ++p.predicted_correct;
        if (predicted && !s->human_correct) ++p.false_positives;
        if (!predicted && s->human_correct) ++p.false_negatives;
      }
      p.false_rate = static_cast<double>(p.false_positives + p.false_negatives) /
                     static_cast<double>(p.n);
      p.accuracy = static_cast<double>(p.predicted_correct) / static_cast<double>(p.n);
      sum += p.false_rate;
      result.curve.push_back(std::move(p));
    }
    double mean = sum / static_cast<double>(by_model.size());
    // Grid ascends, so accepting ties moves tau* toward the larger value.
    if (!have_best || mean <= best + kSweepTieTolerance) {
      if (!have_best || mean < best - kSweepTieTolerance) best = mean;
      result.tau_star = tau;
      result.mean_false_rate = mean;
      have_best = true;
    }
  }
  return result;
}

std::vector<LabeledSample> ReadLabels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open labels " + path.string(), path.string());
  std::vector<LabeledSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::TrimSpace(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      LabeledSample s;
      s.similarity = j.at("similarity").get<double>();
      s.human_correct = j.at("human_correct").get<bool>();
      s.model_id = j.at("model_id").get<std::string>();
      if (!(s.similarity >= 0.0 && s.similarity <= 1.0)) {
        throw Error(ErrorCode::kParse, "similarity outside [0, 1]");
      }
      out.push_back(std::move(s));
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: {}", path.string(), line_no, ex.what()),
                  std::to_string(line_no));
    }
  }
  return out;
}

void WriteCurveCsv(const SweepResult& result, std::ostream& out) {
  int decimals = 2;
  if (result.grid.size() > 1) {
    double step = result.grid[1] - result.grid[0];
    decimals = std::clamp(static_cast<int>(std::ceil(-std::log10(step) - 1e-9)), 2, 9);
  }
  out << "threshold,model_id,false_rate,accuracy\n";
  for (const auto& p : result.curve) {
    std::string model = p.model_id;
    if (model.find_first_of(",\"\n\r") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : model) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      model = quoted + "\"";
    }
    out << fmt::format("{:.{}f},{},{:.2f},{:.2f}\n", p.threshold, decimals, model,
                       100.0 * p.false_rate, 100.0 * p.accuracy);
  }
}

}  // namespace kbqa
