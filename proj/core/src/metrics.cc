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

#include "kbqa/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "kbqa/candidates.h"
#include "kbqa/error.h"

namespace kbqa {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::vector<std::string> ModelsOf(const std::vector<Verdict>& verdicts) {
  std::set<std::string> models;
  for (const auto& v : verdicts) models.insert(v.model_id);
  return {models.begin(), models.end()};
}

std::string_view CellKindName(Cell::Kind k) {
  switch (k) {
    case Cell::Kind::kScore: return "score";
    case Cell::Kind::kDelta: return "delta";
    case Cell::Kind::kCount: return "count";
    case Cell::Kind::kMissing: return "missing";
    case Cell::Kind::kText: return "text";
  }
  return "missing";
}

// Score over the scored verdicts of a cell; "-" when none is scored.
Cell ScoreOf(const std::vector<const Verdict*>& cell, Metric metric) {
  std::vector<bool> em;
  std::vector<F1Item> f1;
  for (const auto* v : cell) {
    if (!v->scored) continue;
    em.push_back(v->correct);
    f1.push_back(v->f1);
  }
  if (em.empty()) return Cell::Missing(cell.size());
  Cell c = Cell::Score(metric == Metric::kF1 ? F1Score(f1) : EmScore(em));
  c.n = cell.size();
  return c;
}

Metric MetricForDataset(std::string_view dataset) {
  auto id = ParseDatasetId(dataset);
  return id && Info(*id).metric == DatasetMetric::kF1 ? Metric::kF1 : Metric::kEmAccuracy;
}

std::vector<Verdict> OfKind(const std::vector<Verdict>& verdicts, TestKind kind) {
  std::vector<Verdict> out;
  for (const auto& v : verdicts) {
    if (v.kind == kind) out.push_back(v);
  }
  return out;
}

}  // namespace

std::string_view ToString(Metric metric) {
  return metric == Metric::kF1 ? "F1" : "EM_accuracy";
}

double RoundPercent(double value) { return std::round(value * 100.0) / 100.0; }

std::string FormatPercent(double value) { return fmt::format("{:.2f}", RoundPercent(value)); }

std::string DeltaCell::Render() const {
  double d = delta();
  if (std::fabs(d) < 0.005) return "0";
  return fmt::format("{}{:.2f}", d > 0 ? "+" : "-", std::fabs(d));
}

ScoreCell EmScore(const std::vector<bool>& verdicts) {
  if (verdicts.empty()) throw Error(ErrorCode::kInvalidArgument, "EM over no verdicts");
  auto correct = std::count(verdicts.begin(), verdicts.end(), true);
  return {Metric::kEmAccuracy,
          100.0 * static_cast<double>(correct) / static_cast<double>(verdicts.size()),
          verdicts.size()};
}

double QuestionF1(const F1Item& item) {
  if (item.gold == 0) throw Error(ErrorCode::kInvalidArgument, "F1 needs at least one gold answer");
  double r = static_cast<double>(item.matched_gold) / static_cast<double>(item.gold);
  double p = item.asserted > 0
                 ? static_cast<double>(item.matched_gold) / static_cast<double>(item.asserted)
                 : (item.matched_gold > 0 ? 1.0 : 0.0);
  p = std::min(p, 1.0);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

ScoreCell F1Score(const std::vector<F1Item>& items) {
  if (items.empty()) throw Error(ErrorCode::kInvalidArgument, "F1 over no questions");
  double sum = 0.0;
  for (const auto& it : items) sum += QuestionF1(it);
  return {Metric::kF1, 100.0 * sum / static_cast<double>(items.size()), items.size()};
}

ojson RunResult::ToJson() const {
  ojson j;
  j["test"] = test.ToJson();
  j["model_id"] = model_id;
  j["run_ref"] = cache_key;
  j["output"] = output;
  return j;
}

RunResult RunResult::FromJson(const json& j) {
  RunResult r;
  r.test = TestCase::FromJson(j.at("test"));
  r.model_id = j.at("model_id").get<std::string>();
  r.cache_key = j.value("run_ref", "");
  r.output = j.at("output").get<std::string>();
  return r;
}

ojson Verdict::ToJson() const {
  ojson j;
  j["test_id"] = test_id;
  j["base_id"] = base_id;
  j["kind"] = ToString(kind);
  j["model_id"] = model_id;
  j["run_ref"] = run_ref;
  j["dataset"] = dataset;
  j["lang"] = lang;
  j["answer_type"] = ToString(answer_type);
  j["reasoning"] = ToStrings(reasoning);
  j["scored"] = scored;
  j["correct"] = correct;
  j["method"] = ToString(method);
  j["similarity"] = similarity ? json(*similarity) : json(nullptr);
  j["expectation_met"] = expectation_met ? json(*expectation_met) : json(nullptr);
  j["rule_id"] = rule_id;
  j["f1"] = {{"matched_gold", f1.matched_gold}, {"gold", f1.gold}, {"asserted", f1.asserted}};
  return j;
}

Verdict Verdict::FromJson(const json& j) {
  Verdict v;
  v.test_id = j.at("test_id").get<std::string>();
  v.base_id = j.at("base_id").get<std::string>();
  v.kind = ParseTestKind(j.at("kind").get<std::string>()).value_or(TestKind::kBase);
  v.model_id = j.at("model_id").get<std::string>();
  v.run_ref = j.value("run_ref", "");
  v.dataset = j.value("dataset", "");
  v.lang = j.value("lang", "en");
  v.answer_type = ParseAnswerType(j.at("answer_type").get<std::string>()).value_or(AnswerType::kMisc);
  for (const auto& t : j.value("reasoning", std::vector<std::string>{})) {
    if (auto r = ParseReasoningType(t)) v.reasoning.insert(*r);
  }
  v.scored = j.value("scored", true);
  v.correct = j.value("correct", false);
  std::string method = j.value("method", "none");
  v.method = method == "exact" ? MatchMethod::kExact
             : method == "fuzzy" ? MatchMethod::kFuzzy
                                 : MatchMethod::kNone;
  if (j.contains("similarity") && j.at("similarity").is_number()) {
    v.similarity = j.at("similarity").get<double>();
  }
  if (j.contains("expectation_met") && j.at("expectation_met").is_boolean()) {
    v.expectation_met = j.at("expectation_met").get<bool>();
  }
  v.rule_id = j.value("rule_id", "");
  if (j.contains("f1")) {
    v.f1.matched_gold = j.at("f1").value("matched_gold", 0u);
    v.f1.gold = j.at("f1").value("gold", 0u);
    v.f1.asserted = j.at("f1").value("asserted", 0u);
  }
  return v;
}

Verdict ScoreRun(const QuestionRecord& record, const RunResult& run, const MatchConfig& cfg) {
  Verdict v;
  v.test_id = run.test.id;
  v.base_id = record.id;
  v.kind = run.test.kind;
  v.model_id = run.model_id;
  v.run_ref = run.cache_key;
  v.dataset = record.dataset;
  v.lang = record.language().code();
  v.answer_type = record.tags.answer_type;
  v.reasoning = record.tags.reasoning;

  if (run.test.kind == TestKind::kDirSwap) {
    v.rule_id = run.test.expectation.rule_id;
    bool met = CheckSparqlExpectation(run.output, run.test.expectation);
    v.expectation_met = met;
    v.correct = met;
    return v;
  }
  if (record.tags.answer_type == AnswerType::kUna || record.gold.empty()) {
    v.scored = false;
    return v;
  }
  MatchResult m = EvaluateAnswer(record, run.output, cfg);
  v.correct = m.correct;
  v.method = m.method;
  v.similarity = m.best_similarity;
  v.f1.gold = record.gold.size();
  if (MetricForDataset(record.dataset) == Metric::kF1) {
    v.f1.matched_gold = CountMatchedGold(record, run.output, cfg);
    v.f1.asserted = std::max(EnumerationSegments(run.output).size(), v.f1.matched_gold);
  } else {
    v.f1.matched_gold = m.correct ? 1 : 0;
    v.f1.asserted = 1;
  }
  return v;
}

std::vector<Verdict> ScoreRuns(const std::vector<QuestionRecord>& records,
                               const std::vector<RunResult>& runs, const MatchConfig& cfg) {
  std::unordered_map<std::string, const QuestionRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  std::vector<Verdict> out;
  out.reserve(runs.size());
  for (const auto& run : runs) {
    auto it = by_id.find(run.test.base_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kInvalidArgument, "run refers to unknown question",
                  run.test.base_id);
    }
    out.push_back(ScoreRun(*it->second, run, cfg));
  }
  return out;
}

Cell Cell::Score(const ScoreCell& s) {
  Cell c;
  c.kind = Kind::kScore;
  c.value = s.value;
  c.n = s.n;
  return c;
}

Cell Cell::Delta(const DeltaCell& d) {
  Cell c;
  c.kind = Kind::kDelta;
  c.value = d.delta();
  c.text = d.Render();
  return c;
}

Cell Cell::Count(std::size_t n) {
  Cell c;
  c.kind = Kind::kCount;
  c.n = n;
  return c;
}

Cell Cell::Missing(std::size_t n) {
  Cell c;
  c.kind = Kind::kMissing;
  c.n = n;
  return c;
}

Cell Cell::Text(std::string t) {
  Cell c;
  c.kind = Kind::kText;
  c.text = std::move(t);
  return c;
}

std::string Cell::Render() const {
  switch (kind) {
    case Kind::kScore: return FormatPercent(value);
    case Kind::kDelta: return text;
    case Kind::kCount: return std::to_string(n);
    case Kind::kMissing: return "-";
    case Kind::kText: return text;
  }
  return "-";
}

ojson Cell::ToJson() const {
  ojson j;
  j["kind"] = CellKindName(kind);
  if (kind == Kind::kScore || kind == Kind::kDelta) j["value"] = RoundPercent(value);
  if (kind != Kind::kText && kind != Kind::kDelta) j["n"] = n;
  j["display"] = Render();
  return j;
}

Cell Cell::FromJson(const json& j) {
  Cell c;
  std::string kind = j.at("kind").get<std::string>();
  c.value = j.value("value", 0.0);
  c.n = j.value("n", std::size_t{0});
  c.text = j.value("display", "");
  if (kind == "score") c.kind = Kind::kScore;
  else if (kind == "delta") c.kind = Kind::kDelta;
  else if (kind == "count") c.kind = Kind::kCount;
  else if (kind == "text") c.kind = Kind::kText;
  else c.kind = Kind::kMissing;
  return c;
}

const Cell& Table::at(std::string_view row, std::string_view column) const {
  auto r = std::find(rows.begin(), rows.end(), row);
  auto c = std::find(columns.begin(), columns.end(), column);
  if (r == rows.end() || c == columns.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("table {} has no cell ({}, {})", name, row, column));
  }
  return cells[static_cast<std::size_t>(r - rows.begin())]
              [static_cast<std::size_t>(c - columns.begin())];
}

std::optional<GroupKey> ParseGroupKey(std::string_view name) {
  if (name == "answer_type") return GroupKey::kAnswerType;
  if (name == "reasoning_type") return GroupKey::kReasoningType;
  if (name == "language") return GroupKey::kLanguage;
  if (name == "dataset") return GroupKey::kDataset;
  return std::nullopt;
}

Table AggregateBy(const std::vector<Verdict>& verdicts, GroupKey key) {
  Table t;
  const auto models = ModelsOf(verdicts);
  // Row label -> model -> verdicts.
  std::map<std::string, std::map<std::string, std::vector<const Verdict*>>> groups;
  std::vector<std::string> order;

  switch (key) {
    case GroupKey::kAnswerType:
      t.name = "answer_types";
      t.title = "Exact match by answer type";
      t.row_header = "Answer Type";
      for (auto a : kAnswerTypeReportOrder) order.emplace_back(ToString(a));
      for (const auto& v : verdicts) groups[std::string(ToString(v.answer_type))][v.model_id].push_back(&v);
      break;
    case GroupKey::kReasoningType:
      t.name = "reasoning_types";
      t.title = "Exact match by reasoning type";
      t.row_header = "Reasoning Type";
      for (auto r : kAllReasoningTypes) order.emplace_back(ToString(r));
      for (const auto& v : verdicts) {
        for (auto r : v.reasoning) groups[std::string(ToString(r))][v.model_id].push_back(&v);
      }
      t.notes["overlap"] =
          "a question with several reasoning tags is counted in each of its rows";
      break;
    case GroupKey::kLanguage: {
      t.name = "languages";
      t.title = "Exact match by language";
      t.row_header = "Language";
      for (auto l : kLanguageInventory) order.emplace_back(l);
      std::set<std::string> extra;
      for (const auto& v : verdicts) {
        groups[v.lang][v.model_id].push_back(&v);
        if (std::find(order.begin(), order.end(), v.lang) == order.end()) extra.insert(v.lang);
      }
      order.insert(order.end(), extra.begin(), extra.end());
      break;
    }
    case GroupKey::kDataset: {
      t.name = "datasets";
      t.title = "Overall score by dataset (F1 for LC-quad2, GraphQ and QALD-9; accuracy otherwise)";
      t.row_header = "Dataset";
      std::map<std::string, std::string> display;
      for (const auto& info : SupportedDatasets()) {
        order.emplace_back(info.display_name);
        display[std::string(info.key)] = std::string(info.display_name);
      }
      std::set<std::string> extra;
      for (const auto& v : verdicts) {
        auto it = display.find(v.dataset);
        std::string row = it == display.end() ? v.dataset : it->second;
        groups[row][v.model_id].push_back(&v);
        if (it == display.end()) extra.insert(row);
      }
      order.insert(order.end(), extra.begin(), extra.end());
      t.notes["f1"] =
          "F1 asserted answers are the enumeration segments of the output "
          "(harness-defined metric)";
      break;
    }
  }

  t.columns = models;
  t.columns.push_back("n");
  for (const auto& row : order) {
    auto g = groups.find(row);
    if (g == groups.end()) continue;
    t.rows.push_back(row);
    std::vector<Cell> cells;
    std::size_t row_n = 0;
    for (const auto& m : models) {
      auto it = g->second.find(m);
      if (it == g->second.end()) {
        cells.push_back(Cell::Missing(0));
        continue;
      }
      Metric metric = Metric::kEmAccuracy;
      if (key == GroupKey::kDataset && !it->second.empty()) {
        metric = MetricForDataset(it->second.front()->dataset);
      }
      cells.push_back(ScoreOf(it->second, metric));
      row_n = std::max(row_n, it->second.size());
    }
    cells.push_back(Cell::Count(row_n));
    t.cells.push_back(std::move(cells));
  }
  return t;
}

std::map<std::string, StabilityCounts> CountStability(const std::vector<Verdict>& verdicts) {
  // model -> base id -> outcomes by kind
  std::map<std::string, std::map<std::string, std::map<TestKind, bool>>> outcomes;
  for (const auto& v : verdicts) {
    if (!v.scored) continue;
    if (v.kind != TestKind::kBase && v.kind != TestKind::kInvTypo && v.kind != TestKind::kInvPara) {
      continue;
    }
    outcomes[v.model_id][v.base_id][v.kind] = v.correct;
  }
  std::map<std::string, StabilityCounts> out;
  for (const auto& [model, by_base] : outcomes) {
    auto& counts = out[model];
    for (auto c : kAllStabilityClasses) counts[c] = 0;
    for (const auto& [base, kinds] : by_base) {
      if (kinds.size() != 3) continue;
      ++counts[ClassifyStability(std::array<bool, 3>{kinds.at(TestKind::kBase),
                                                     kinds.at(TestKind::kInvTypo),
                                                     kinds.at(TestKind::kInvPara)})];
    }
  }
  return out;
}

Table StabilityTable(const std::map<std::string, StabilityCounts>& counts_by_model) {
  Table t;
  t.name = "stability";
  t.title = "INV stability over (original, typo, paraphrase)";
  t.row_header = "Model";
  for (auto c : kAllStabilityClasses) t.columns.emplace_back(ToString(c));
  t.columns.push_back("Stability Rate");
  for (const auto& [model, counts] : counts_by_model) {
    std::size_t total = 0;
    std::vector<Cell> row;
    for (auto c : kAllStabilityClasses) {
      auto it = counts.find(c);
      std::size_t n = it == counts.end() ? 0 : it->second;
      total += n;
      row.push_back(Cell::Count(n));
    }
    if (total == 0) {
      row.push_back(Cell::Missing(0));
    } else {
      row.push_back(Cell::Score({Metric::kEmAccuracy, StabilityRate(counts), total}));
    }
    t.rows.push_back(model);
    t.cells.push_back(std::move(row));
  }
  return t;
}

Table DirSwapTable(const std::vector<Verdict>& verdicts) {
  Table t;
  t.name = "dir_swap";
  t.title = "DIR swap: percentage of outputs with the expected SPARQL keywords";
  t.row_header = "Swap Rule";
  auto swaps = OfKind(verdicts, TestKind::kDirSwap);
  const auto models = ModelsOf(swaps);
  t.columns = models;
  std::set<std::string> rules;
  for (const auto& v : swaps) rules.insert(v.rule_id);
  std::vector<std::string> rows(rules.begin(), rules.end());
  rows.push_back("All");
  for (const auto& rule : rows) {
    std::vector<Cell> cells;
    for (const auto& m : models) {
      std::vector<bool> met;
      for (const auto& v : swaps) {
        if (v.model_id == m && (rule == "All" || v.rule_id == rule)) {
          met.push_back(v.expectation_met.value_or(false));
        }
      }
      cells.push_back(met.empty() ? Cell::Missing(0) : Cell::Score(EmScore(met)));
    }
    t.rows.push_back(rule);
    t.cells.push_back(std::move(cells));
  }
  return t;
}

Table DeltaTable(const std::vector<Verdict>& verdicts, TestKind kind, bool with_reasoning) {
  Table t;
  t.name = kind == TestKind::kDirHint ? "dir_hint" : "dir_cot";
  t.title = fmt::format("{}: EM after the change and its difference from the original",
                        ToString(kind));
  t.row_header = with_reasoning ? "Answer / Reasoning Type" : "Answer Type";
  const auto after_all = OfKind(verdicts, kind);
  const auto models = ModelsOf(after_all);
  for (const auto& m : models) {
    t.columns.push_back(m);
    t.columns.push_back(m + " delta");
  }
  // model -> base id -> verdict, for BASE and the DIR kind.
  std::map<std::string, std::map<std::string, const Verdict*>> before;
  std::map<std::string, std::map<std::string, const Verdict*>> after;
  for (const auto& v : verdicts) {
    if (!v.scored) continue;
    if (v.kind == TestKind::kBase) before[v.model_id][v.base_id] = &v;
    if (v.kind == kind) after[v.model_id][v.base_id] = &v;
  }
  std::vector<std::pair<std::string, std::function<bool(const Verdict&)>>> groups;
  for (auto a : kAnswerTypeReportOrder) {
    if (a == AnswerType::kUna) continue;
    groups.emplace_back(std::string(ToString(a)),
                        [a](const Verdict& v) { return v.answer_type == a; });
  }
  if (with_reasoning) {
    for (auto r : kAllReasoningTypes) {
      groups.emplace_back(std::string(ToString(r)),
                          [r](const Verdict& v) { return v.reasoning.count(r) > 0; });
    }
  }
  for (const auto& [label, pred] : groups) {
    std::vector<Cell> cells;
    bool any = false;
    for (const auto& m : models) {
      std::vector<bool> b;
      std::vector<bool> a;
      for (const auto& [base, va] : after[m]) {
        auto vb = before[m].find(base);
        if (vb == before[m].end() || !pred(*va)) continue;
        b.push_back(vb->second->correct);
        a.push_back(va->correct);
      }
      if (a.empty()) {
        cells.push_back(Cell::Missing(0));
        cells.push_back(Cell::Missing(0));
        continue;
      }
      any = true;
      ScoreCell sa = EmScore(a);
      cells.push_back(Cell::Score(sa));
      cells.push_back(Cell::Delta({EmScore(b).value, sa.value}));
    }
    if (!any) continue;
    t.rows.push_back(label);
    t.cells.push_back(std::move(cells));
  }
  return t;
}

Table MftTable(const std::vector<Verdict>& verdicts) {
  Table t;
  t.name = "mft";
  t.title = "MFT: EM on single versus multiple reasoning questions";
  t.row_header = "Reasoning Type";
  auto base = OfKind(verdicts, TestKind::kBase);
  const auto models = ModelsOf(base);
  for (const auto& m : models) {
    t.columns.push_back(m + " single");
    t.columns.push_back(m + " multiple");
  }
  for (auto r : kOperationTags) {
    std::vector<Cell> cells;
    bool any = false;
    for (const auto& m : models) {
      std::vector<bool> single;
      std::vector<bool> multiple;
      for (const auto& v : base) {
        if (v.model_id != m || !v.scored || !v.reasoning.count(r)) continue;
        (CountOperationTags(v.reasoning) <= 1 ? single : multiple).push_back(v.correct);
      }
      any = any || !single.empty() || !multiple.empty();
      cells.push_back(single.empty() ? Cell::Missing(0) : Cell::Score(EmScore(single)));
      cells.push_back(multiple.empty() ? Cell::Missing(0) : Cell::Score(EmScore(multiple)));
    }
    if (!any) continue;
    t.rows.emplace_back(ToString(r));
    t.cells.push_back(std::move(cells));
  }
  return t;
}

Report BuildReport(const std::vector<Verdict>& verdicts, ojson metadata) {
  Report report;
  report.metadata = std::move(metadata);
  auto base = OfKind(verdicts, TestKind::kBase);
  std::size_t scored = 0;
  for (const auto& v : base) scored += v.scored ? 1 : 0;
  report.metadata["verdicts"] = verdicts.size();
  report.metadata["base_questions_scored"] = scored;
  if (!base.empty()) {
    report.tables.push_back(AggregateBy(base, GroupKey::kDataset));
    report.tables.push_back(AggregateBy(base, GroupKey::kAnswerType));
    report.tables.push_back(AggregateBy(base, GroupKey::kReasoningType));
    report.tables.push_back(AggregateBy(base, GroupKey::kLanguage));
    Table mft = MftTable(verdicts);
    if (!mft.rows.empty()) report.tables.push_back(std::move(mft));
  }
  auto stability = CountStability(verdicts);
  bool any_inv = false;
  for (const auto& [m, counts] : stability) {
    for (const auto& [c, n] : counts) any_inv = any_inv || n > 0;
  }
  if (any_inv) report.tables.push_back(StabilityTable(stability));
  if (!OfKind(verdicts, TestKind::kDirSwap).empty()) {
    report.tables.push_back(DirSwapTable(verdicts));
  }
  if (!OfKind(verdicts, TestKind::kDirHint).empty()) {
    report.tables.push_back(DeltaTable(verdicts, TestKind::kDirHint, false));
  }
  if (!OfKind(verdicts, TestKind::kDirCot).empty()) {
    report.tables.push_back(DeltaTable(verdicts, TestKind::kDirCot, true));
  }
  return report;
}

}  // namespace kbqa
