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

#ifndef KBQA_METRICS_H_
#define KBQA_METRICS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kbqa/checklist.h"
#include "kbqa/matcher.h"
#include "kbqa/native_tags.h"
#include "kbqa/record.h"

namespace kbqa {

enum class Metric { kEmAccuracy, kF1 };
std::string_view ToString(Metric metric);

// Percentages are rendered with two decimals.
std::string FormatPercent(double value);
double RoundPercent(double value);

struct ScoreCell {
  Metric metric = Metric::kEmAccuracy;
  double value = 0.0;  // percent in [0, 100]
  std::size_t n = 0;

  std::string Render() const { return FormatPercent(value); }
};

// after - before on the rendered (two-decimal) values.
struct DeltaCell {
  double before = 0.0;
  double after = 0.0;

  double delta() const { return RoundPercent(after) - RoundPercent(before); }
  // "+7.15", "-3.20" or "0".
  std::string Render() const;
};

// 100 * correct / total. Throws Error(kInvalidArgument) when empty.
ScoreCell EmScore(const std::vector<bool>& verdicts);

struct F1Item {
  std::size_t matched_gold = 0;
  std::size_t gold = 0;
  std::size_t asserted = 0;
};
// Throws Error(kInvalidArgument) when gold is zero.
double QuestionF1(const F1Item& item);
// Mean question F1 times 100. Throws Error(kInvalidArgument) when empty.
ScoreCell F1Score(const std::vector<F1Item>& items);

// Output of one test-case execution, linking the case to its cached run.
struct RunResult {
  TestCase test;
  std::string model_id;
  std::string cache_key;
  std::string output;

  nlohmann::ordered_json ToJson() const;
  static RunResult FromJson(const nlohmann::json& j);
};

struct Verdict {
  std::string test_id;
  std::string base_id;
  TestKind kind = TestKind::kBase;
  std::string model_id;
  std::string run_ref;  // cache key
  std::string dataset;
  std::string lang;
  AnswerType answer_type = AnswerType::kMisc;
  ReasoningSet reasoning;
  bool scored = true;  // false for UNA questions
  bool correct = false;
  MatchMethod method = MatchMethod::kNone;
  std::optional<double> similarity;
  std::optional<bool> expectation_met;  // DIR_SWAP
  std::string rule_id;                  // DIR_SWAP
  F1Item f1;

  nlohmann::ordered_json ToJson() const;
  static Verdict FromJson(const nlohmann::json& j);
};

// Scores one run against its record. DIR_SWAP cases are judged by their
// SPARQL keyword expectation; everything else by EvaluateAnswer.
Verdict ScoreRun(const QuestionRecord& record, const RunResult& run, const MatchConfig& cfg);

// Throws Error(kInvalidArgument) when a run names an unknown record.
std::vector<Verdict> ScoreRuns(const std::vector<QuestionRecord>& records,
                               const std::vector<RunResult>& runs, const MatchConfig& cfg);

// A rendered table cell.
struct Cell {
  enum class Kind { kScore, kDelta, kCount, kMissing, kText };
  Kind kind = Kind::kMissing;
  double value = 0.0;
  std::size_t n = 0;
  std::string text;

  static Cell Score(const ScoreCell& s);
  static Cell Delta(const DeltaCell& d);
  static Cell Count(std::size_t n);
  static Cell Missing(std::size_t n = 0);  // "-" with the count kept
  static Cell Text(std::string t);

  std::string Render() const;
  nlohmann::ordered_json ToJson() const;
  static Cell FromJson(const nlohmann::json& j);
};

struct Table {
  std::string name;  // file stem
  std::string title;
  std::string row_header;
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<Cell>> cells;  // rows x columns
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();

  const Cell& at(std::string_view row, std::string_view column) const;
};

enum class GroupKey { kAnswerType, kReasoningType, kLanguage, kDataset };
std::optional<GroupKey> ParseGroupKey(std::string_view name);

// Rows are the groups in report order, columns the models (sorted), plus a
// trailing "n" column with the row's question count. Answer-type, language
// and dataset rows partition the verdicts; reasoning rows overlap. UNA
// verdicts appear as "-" with their count. Dataset rows use F1 for the
// F1 datasets and accuracy otherwise.
Table AggregateBy(const std::vector<Verdict>& verdicts, GroupKey key);

// One row per model: the eight class counts and
// "Stability Rate".
Table StabilityTable(const std::map<std::string, StabilityCounts>& counts_by_model);
// Per model: INV-evaluated base questions (BASE, INV_TYPO and INV_PARA all
// scored) classified into (original, typo, paraphrase) classes.
std::map<std::string, StabilityCounts> CountStability(const std::vector<Verdict>& verdicts);

// Percentage of DIR_SWAP outputs meeting their expectation, per swap rule.
Table DirSwapTable(const std::vector<Verdict>& verdicts);
// EM after minus EM before (BASE) for one DIR kind, per answer type and,
// when `with_reasoning`, per reasoning type.
Table DeltaTable(const std::vector<Verdict>& verdicts, TestKind kind, bool with_reasoning);
// EM per operation tag over single- and multiple-reasoning questions.
Table MftTable(const std::vector<Verdict>& verdicts);

struct Report {
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  // name -> CSV text (threshold,model_id,false_rate,accuracy)
  std::map<std::string, std::string> curves;
};

// Every table the verdicts support, in a fixed order.
Report BuildReport(const std::vector<Verdict>& verdicts, nlohmann::ordered_json metadata);

}  // namespace kbqa

#endif  // KBQA_METRICS_H_
