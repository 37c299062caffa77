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

#ifndef KBQA_SWEEP_H_
#define KBQA_SWEEP_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace kbqa {

// One human-verified matcher decision: best similarity s* of a model
// answer against its references, and whether a person judged it correct.
struct LabeledSample {
  double similarity = 0.0;
  bool human_correct = false;
  std::string model_id;
};

struct CurvePoint {
  double threshold = 0.0;
  std::string model_id;
  std::size_t n = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t predicted_correct = 0;
  double false_rate = 0.0;  // (FP + FN) / n
  double accuracy = 0.0;    // predicted_correct / n

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct SweepResult {
  double tau_star = 1.0;
  double mean_false_rate = 0.0;  // at tau_star
  std::vector<double> grid;
  std::vector<std::string> models;  // sorted
  std::vector<CurvePoint> curve;    // grid-major, then model order
};

// Grid lower, lower + step, ... up to 1 inclusive. Points are rounded to
// 1e-9 so accumulated error cannot drop or duplicate the endpoint.
std::vector<double> ThresholdGrid(double lower, double step);

// Mean false rates within this distance are treated as ties.
inline constexpr double kSweepTieTolerance = 1e-12;

// Predicted correct iff s* >= tau. tau* minimizes the mean false rate over
// models; ties go to the larger tau. Throws Error(kInvalidArgument) on an
// empty sample list or a bad grid.
SweepResult SweepThreshold(const std::vector<LabeledSample>& samples, double lower = 0.38,
                           double step = 0.01);

// JSONL lines {"similarity": s, "human_correct": b, "model_id": m}.
std::vector<LabeledSample> ReadLabels(const std::filesystem::path& path);

// Header: threshold,model_id,false_rate,accuracy. Rates in percent.
void WriteCurveCsv(const SweepResult& result, std::ostream& out);

}  // namespace kbqa

#endif  // KBQA_SWEEP_H_
