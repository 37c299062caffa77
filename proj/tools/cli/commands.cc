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

#include "cli/commands.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli/config.h"
#include "kbqa/aliases.h"
#include "kbqa/datasets.h"
#include "kbqa/gateway.h"
#include "kbqa/hashing.h"
#include "kbqa/matcher.h"
#include "kbqa/reasoning.h"
#include "kbqa/report.h"
#include "kbqa/sidecar_client.h"
#include "kbqa/store.h"
#include "kbqa/sweep.h"

namespace kbqa::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::string_view kSidecarEnv = "KBQA_SIDECAR_URL";
constexpr std::array<std::string_view, 6> kBatteries = {"base",    "inv",     "dir-swap",
                                                         "dir-hint", "dir-cot", "mft"};

[[noreturn]] void Usage(const std::string& message, const std::string& detail = {}) {
  throw Error(ErrorCode::kConfiguration, message, detail);
}

void RequireFile(const fs::path& path, std::string_view what) {
  if (path.empty()) Usage(std::string(what) + " path is required");
  if (!fs::exists(path)) Usage(std::string(what) + " not found: " + path.string(), path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string(), path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string FileDigest(const fs::path& path) { return Sha256Hex(ReadFile(path)); }

void WriteFileAtomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string(), tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string(), tmp.string());
  }
  fs::rename(tmp, path);
}

// Reads JSONL, calling `parse` per non-blank line; errors name the line.
template <typename T, typename F>
std::vector<T> ReadJsonl(const fs::path& path, F parse) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string(), path.string());
  std::vector<T> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: {}", path.string(), line_no, e.what()),
                  std::to_string(line_no));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}:{}: {}", path.string(), line_no, e.what()),
                  std::to_string(line_no));
    }
  }
  return out;
}

void SetupLogging(const std::string& level) {
  auto logger = spdlog::get("kbqa");
  if (!logger) {
    logger = spdlog::stderr_color_mt("kbqa");
    spdlog::set_default_logger(logger);
  }
  spdlog::set_level(spdlog::level::from_str(level));
}

// The NLP backends in use: the sidecar when reachable, otherwise the
// built-in fallbacks.
struct NlpBackends {
  std::unique_ptr<SidecarClient> client;
  std::unique_ptr<SidecarParser> parser;
  std::unique_ptr<SidecarEmbedder> embedder;
  std::unique_ptr<SidecarNer> sidecar_ner;
  RuleNer rule_ner;

  const NerProvider* ner() const {
    return sidecar_ner ? static_cast<const NerProvider*>(sidecar_ner.get()) : &rule_ner;
  }
  std::string description() const { return client ? "sidecar" : "builtin"; }
};

std::unique_ptr<NlpBackends> ConnectNlp(std::string url) {
  auto nlp = std::make_unique<NlpBackends>();
  if (url.empty()) {
    if (const char* env = std::getenv(std::string(kSidecarEnv).c_str())) url = env;
  }
  if (url.empty()) return nlp;
  SidecarOptions options;
  options.base_url = url;
  auto client = std::make_unique<SidecarClient>(options);
  if (!client->Ready()) {
    spdlog::warn("sidecar at {} is not ready; using built-in fallbacks", url);
    return nlp;
  }
  nlp->parser = std::make_unique<SidecarParser>(*client);
  nlp->embedder = std::make_unique<SidecarEmbedder>(*client);
  nlp->sidecar_ner = std::make_unique<SidecarNer>(*client);
  nlp->client = std::move(client);
  return nlp;
}

ordered_json Stamp(const ordered_json& settings, std::uint64_t seed) {
  ordered_json j;
  j["config_hash"] = Sha256Hex(settings.dump());
  j["seed"] = seed;
  return j;
}

void PrintSummary(std::ostream& out, ordered_json summary, const ordered_json& stamp) {
  for (const auto& [k, v] : stamp.items()) summary[k] = v;
  out << summary.dump() << "\n";
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string dataset;
  fs::path in;
  fs::path out;
  std::string split;
  std::string ner = "rule";
  std::string sidecar;
};

int CmdIngest(const IngestArgs& a, std::ostream& out) {
  const DatasetId id = RequireDatasetId(a.dataset);
  RequireFile(a.in, "input");
  std::unique_ptr<NlpBackends> nlp;
  RuleNer rule_ner;
  LoadOptions options;
  if (a.ner == "rule") {
    options.ner = &rule_ner;
  } else if (a.ner == "sidecar") {
    nlp = ConnectNlp(a.sidecar);
    if (!nlp->sidecar_ner) Usage("--ner sidecar needs a reachable sidecar");
    options.ner = nlp->ner();
  } else if (a.ner != "none") {
    Usage("--ner must be rule, sidecar or none", a.ner);
  }
  if (!a.split.empty()) options.split = a.split;

  IngestReport report = LoadDataset(a.dataset, a.in, options);
  WriteStore(a.out, report.records);

  const DatasetInfo& info = Info(id);
  ordered_json settings = {{"command", "ingest"},
                           {"dataset", info.key},
                           {"source_sha256", FileDigest(a.in)},
                           {"split", a.split},
                           {"ner", a.ner}};
  ordered_json summary;
  summary["command"] = "ingest";
  summary["dataset"] = info.key;
  summary["records"] = report.records.size();
  summary["skipped"] = report.skipped;
  summary["filtered"] = report.filtered;
  summary["collected_size"] = info.collected_size;
  summary["matches_collected_size"] = report.records.size() == info.collected_size;
  summary["first_error"] = report.first_error ? ordered_json(*report.first_error) : ordered_json();
  summary["warnings"] = report.warnings;
  summary["violations"] = ValidateRecords(report.records).size();
  summary["out"] = a.out.string();
  PrintSummary(out, summary, Stamp(settings, 0));
  return report.partial() ? kExitPartial : kExitOk;
}

// ----------------------------------------------------------------- label

struct LabelArgs {
  fs::path store;
  fs::path out;
  fs::path aliases;
  std::vector<std::string> languages;
  std::string sample_by;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string sparql;
};

int CmdLabel(const LabelArgs& a, std::ostream& out) {
  if (!a.sparql.empty()) {
    ReasoningSet tags = ClassifyReasoning(a.sparql);
    ordered_json summary = {{"command", "label"}, {"reasoning", ToStrings(tags)}};
    PrintSummary(out, summary, Stamp({{"command", "label"}, {"sparql", a.sparql}}, 0));
    return kExitOk;
  }
  RequireFile(a.store, "store");
  std::vector<QuestionRecord> records = ReadStore(a.store);
  ordered_json settings = {{"command", "label"},
                           {"store_sha256", FileDigest(a.store)},
                           {"sample_by", a.sample_by},
                           {"n", a.n}};
  std::size_t unexpanded = 0;
  if (!a.aliases.empty()) {
    RequireFile(a.aliases, "alias file");
    OfflineAliasFile source(a.aliases, a.languages);
    for (auto& r : records) {
      ExpandRecord(r, &source);
      if (r.HasFlag(kFlagUnexpanded)) ++unexpanded;
    }
    settings["aliases_sha256"] = FileDigest(a.aliases);
  }
  if (!a.sample_by.empty()) {
    auto key = ParseSampleKey(a.sample_by);
    if (!key) Usage("unknown --sample-by key", a.sample_by);
    records = SampleStore(records, *key, a.n, a.seed);
  }
  std::vector<std::string> violations = ValidateRecords(records);

  std::map<std::string, std::size_t> by_type;
  std::map<std::string, std::size_t> by_reasoning;
  for (const auto& r : records) {
    ++by_type[std::string(ToString(r.tags.answer_type))];
    for (auto t : r.tags.reasoning) ++by_reasoning[std::string(ToString(t))];
  }
  if (!a.out.empty()) WriteStore(a.out, records);

  ordered_json summary;
  summary["command"] = "label";
  summary["records"] = records.size();
  summary["answer_types"] = by_type;
  summary["reasoning"] = by_reasoning;
  summary["unexpanded"] = unexpanded;
  summary["violations"] = violations;
  PrintSummary(out, summary, Stamp(settings, a.seed));
  return violations.empty() ? kExitOk : kExitPartial;
}

// ------------------------------------------------------------- checklist

struct ChecklistArgs {
  fs::path config;
  fs::path store;
  std::string battery = "inv";
  fs::path out;
  fs::path paraphrases;
  std::optional<std::uint64_t> seed;
};

std::unique_ptr<ParaphraseProvider> MakeParaphraser(const fs::path& fixture,
                                                    const std::string& model_id,
                                                    const RunConfig* cfg, Gateway* gateway) {
  if (!fixture.empty()) {
    RequireFile(fixture, "paraphrase fixture");
    return std::make_unique<FixtureParaphraser>(FixtureParaphraser::FromFile(fixture));
  }
  if (!model_id.empty() && cfg && gateway) {
    const ModelSpec* spec = cfg->FindModel(model_id);
    if (!spec) Usage("paraphrase_model is not a configured model", model_id);
    return std::make_unique<ModelParaphraser>(*gateway, *spec);
  }
  return nullptr;
}

int CmdChecklist(const ChecklistArgs& a, std::ostream& out) {
  if (!IsBattery(a.battery)) Usage("unknown battery", a.battery);
  std::optional<RunConfig> cfg;
  if (!a.config.empty()) cfg = LoadRunConfig(a.config);
  fs::path store = !a.store.empty() ? a.store : (cfg ? cfg->store_path : fs::path());
  RequireFile(store, "store");
  const std::uint64_t seed = a.seed.value_or(cfg ? cfg->seed : 0);
  fs::path para_path = !a.paraphrases.empty() ? a.paraphrases
                                               : (cfg ? cfg->paraphrase_path : fs::path());

  std::unique_ptr<Gateway> gateway;
  if (cfg && para_path.empty() && !cfg->paraphrase_model.empty()) {
    GatewayOptions options;
    options.cache_path = cfg->cache_path;
    options.parallelism = cfg->parallelism;
    gateway = std::make_unique<Gateway>(options);
  }
  auto paraphraser = MakeParaphraser(para_path, cfg ? cfg->paraphrase_model : "",
                                     cfg ? &*cfg : nullptr, gateway.get());
  if (a.battery == "inv" && !paraphraser) {
    Usage("the inv battery needs --paraphrases or a paraphrase_model");
  }
  auto nlp = ConnectNlp(cfg ? cfg->sidecar_url : "");
  std::vector<QuestionRecord> records = ReadStore(store);
  Battery battery = BuildBattery(records, a.battery, seed, paraphraser.get(), nlp->ner());
  fs::path manifest = a.out.empty() ? fs::path(a.battery + ".manifest.jsonl") : a.out;
  WriteManifest(manifest, battery.cases);

  ordered_json settings = {{"command", "checklist"},
                           {"battery", a.battery},
                           {"store_sha256", FileDigest(store)},
                           {"config_hash", cfg ? cfg->Hash() : ""},
                           {"paraphraser", paraphraser ? paraphraser->id() : ""}};
  ordered_json skipped = ordered_json::array();
  for (const auto& [id, reason] : battery.skipped) skipped.push_back({{"id", id}, {"reason", reason}});
  std::map<std::string, std::size_t> kinds;
  for (const auto& c : battery.cases) ++kinds[std::string(ToString(c.kind))];
  ordered_json summary;
  summary["command"] = "checklist";
  summary["battery"] = a.battery;
  summary["cases"] = battery.cases.size();
  summary["kinds"] = kinds;
  summary["skipped"] = skipped;
  summary["manifest"] = manifest.string();
  PrintSummary(out, summary, Stamp(settings, seed));
  return kExitOk;
}

// ------------------------------------------------------------------- run

struct RunArgs {
  fs::path config;
  std::vector<std::string> models;
  std::vector<std::string> batteries;
  fs::path manifest;
  fs::path runs;
  fs::path store;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallelism;
};

int CmdRun(const RunArgs& a, std::ostream& out) {
  RunConfig cfg = LoadRunConfig(a.config);
  if (!a.store.empty()) cfg.store_path = a.store;
  if (!a.runs.empty()) cfg.runs_path = a.runs;
  if (a.seed) cfg.seed = *a.seed;
  if (a.parallelism) cfg.parallelism = *a.parallelism;
  if (!a.batteries.empty()) cfg.batteries = a.batteries;
  for (const auto& b : cfg.batteries) {
    if (!IsBattery(b)) Usage("unknown battery", b);
  }
  RequireFile(cfg.store_path, "store");

  std::vector<const ModelSpec*> models;
  if (a.models.empty()) {
    for (const auto& m : cfg.models) models.push_back(&m);
  } else {
    for (const auto& id : a.models) {
      const ModelSpec* spec = cfg.FindModel(id);
      if (!spec) Usage("model not in config: " + id, id);
      models.push_back(spec);
    }
  }
  if (models.empty()) Usage("no models configured");

  GatewayOptions options;
  options.cache_path = cfg.cache_path;
  options.parallelism = cfg.parallelism;
  if (cfg.rate_per_second > 0.0) {
    options.rate_limiter = std::make_shared<RateLimiter>(cfg.rate_per_second, cfg.rate_per_second);
  }
  Gateway gateway(options);

  std::vector<QuestionRecord> records = ReadStore(cfg.store_path);
  std::vector<TestCase> cases;
  std::vector<std::pair<std::string, std::string>> skipped;
  if (!a.manifest.empty()) {
    RequireFile(a.manifest, "manifest");
    cases = ReadManifest(a.manifest);
  } else {
    std::unique_ptr<ParaphraseProvider> paraphraser;
    bool needs_paraphrase = std::find(cfg.batteries.begin(), cfg.batteries.end(), "inv") !=
                            cfg.batteries.end();
    if (needs_paraphrase) {
      paraphraser = MakeParaphraser(cfg.paraphrase_path, cfg.paraphrase_model, &cfg, &gateway);
      if (!paraphraser) Usage("the inv battery needs paraphrases or paraphrase_model in the config");
    }
    auto nlp = ConnectNlp(cfg.sidecar_url);
    std::set<std::string> seen;
    for (const auto& b : cfg.batteries) {
      Battery battery = BuildBattery(records, b, cfg.seed, paraphraser.get(), nlp->ner());
      for (auto& c : battery.cases) {
        if (seen.insert(c.id).second) cases.push_back(std::move(c));
      }
      skipped.insert(skipped.end(), battery.skipped.begin(), battery.skipped.end());
    }
  }

  std::vector<std::vector<std::string>> conversations;
  conversations.reserve(cases.size());
  for (const auto& c : cases) conversations.push_back(c.turns);

  std::vector<RunResult> fresh;
  std::size_t failed = 0;
  bool config_failure = false;
  ordered_json failures = ordered_json::array();
  for (const ModelSpec* spec : models) {
    auto outcomes = gateway.AskMany(*spec, conversations);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      if (!o.record) {
        ++failed;
        if (o.error_code == static_cast<int>(ErrorCode::kConfiguration)) config_failure = true;
        if (failures.size() < 20) {
          failures.push_back({{"model_id", spec->model_id},
                              {"test", cases[i].id},
                              {"error", o.error.value_or("")}});
        }
        continue;
      }
      fresh.push_back(RunResult{cases[i], spec->model_id, o.record->cache_key, o.record->output});
    }
  }

  std::vector<RunResult> existing;
  if (fs::exists(cfg.runs_path)) existing = ReadRuns(cfg.runs_path);
  std::vector<RunResult> merged = MergeRuns(std::move(existing), fresh);
  WriteRuns(cfg.runs_path, merged);

  ordered_json model_ids = ordered_json::array();
  for (const ModelSpec* m : models) model_ids.push_back(m->model_id);
  ordered_json summary;
  summary["command"] = "run";
  summary["batteries"] = a.manifest.empty() ? ordered_json(cfg.batteries) : ordered_json("manifest");
  summary["models"] = model_ids;
  summary["cases"] = cases.size();
  summary["completed"] = fresh.size();
  summary["failed"] = failed;
  summary["skipped"] = skipped.size();
  summary["network_calls"] = gateway.network_calls();
  summary["cache_hits"] = gateway.cache_hits();
  summary["runs"] = cfg.runs_path.string();
  if (!failures.empty()) summary["failures"] = failures;
  ordered_json stamp;
  stamp["config_hash"] = cfg.Hash();
  stamp["seed"] = cfg.seed;
  PrintSummary(out, summary, stamp);
  if (failed > 0 && fresh.empty() && config_failure) {
    throw Error(ErrorCode::kConfiguration, "model credentials missing",
                failures.empty() ? "" : failures[0]["error"].get<std::string>());
  }
  return failed > 0 ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  fs::path config;
  fs::path store;
  fs::path runs;
  std::optional<double> tau;
  fs::path out = "report";
  fs::path aliases;
  std::optional<std::uint64_t> seed;
};

int CmdEval(const EvalArgs& a, std::ostream& out) {
  std::optional<RunConfig> cfg;
  if (!a.config.empty()) cfg = LoadRunConfig(a.config);
  fs::path store = !a.store.empty() ? a.store : (cfg ? cfg->store_path : fs::path());
  fs::path runs_path = !a.runs.empty() ? a.runs : (cfg ? cfg->runs_path : fs::path());
  fs::path alias_path = !a.aliases.empty() ? a.aliases : (cfg ? cfg->alias_path : fs::path());
  RequireFile(store, "store");
  RequireFile(runs_path, "runs");
  const std::uint64_t seed = a.seed.value_or(cfg ? cfg->seed : 0);

  MatchConfig match;
  match.tau = a.tau.value_or(cfg ? cfg->tau : 0.78);
  match.Validate();
  auto nlp = ConnectNlp(cfg ? cfg->sidecar_url : "");
  match.parser = nlp->parser.get();
  match.embedder = nlp->embedder.get();

  std::vector<QuestionRecord> records = ReadStore(store);
  if (!alias_path.empty()) {
    RequireFile(alias_path, "alias file");
    OfflineAliasFile source(alias_path);
    for (auto& r : records) ExpandRecord(r, &source);
  }
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.id);

  std::vector<RunResult> runs = ReadRuns(runs_path);
  std::vector<RunResult> known;
  std::size_t orphaned = 0;
  for (auto& r : runs) {
    if (ids.count(r.test.base_id)) {
      known.push_back(std::move(r));
    } else {
      ++orphaned;
    }
  }
  std::vector<Verdict> verdicts = ScoreRuns(records, known, match);

  ordered_json settings;
  settings["command"] = "eval";
  settings["tau"] = match.tau;
  settings["store_sha256"] = FileDigest(store);
  settings["runs_sha256"] = FileDigest(runs_path);
  settings["aliases_sha256"] = alias_path.empty() ? "" : FileDigest(alias_path);
  settings["run_config_hash"] = cfg ? cfg->Hash() : "";
  settings["nlp"] = nlp->description();
  const ordered_json stamp = Stamp(settings, seed);

  ordered_json metadata;
  metadata["config_hash"] = stamp["config_hash"];
  metadata["seed"] = seed;
  metadata["tau"] = match.tau;
  metadata["store_sha256"] = settings["store_sha256"];
  metadata["runs_sha256"] = settings["runs_sha256"];
  metadata["nlp"] = nlp->description();
  metadata["verdicts"] = verdicts.size();
  metadata["orphaned_runs"] = orphaned;
  Report report = BuildReport(verdicts, metadata);

  fs::create_directories(a.out);
  std::string lines;
  for (const auto& v : verdicts) lines += v.ToJson().dump() + "\n";
  WriteFileAtomic(a.out / "verdicts.jsonl", lines);
  RenderReport(report, ReportFormat::kJson, a.out);

  std::map<std::string, std::pair<std::size_t, std::size_t>> by_model;  // BASE correct, scored
  for (const auto& v : verdicts) {
    if (v.kind != TestKind::kBase || !v.scored) continue;
    auto& [c, n] = by_model[v.model_id];
    c += v.correct ? 1 : 0;
    ++n;
  }
  ordered_json em = ordered_json::object();
  for (const auto& [model, cn] : by_model) {
    em[model] = FormatPercent(100.0 * static_cast<double>(cn.first) / static_cast<double>(cn.second));
  }
  ordered_json summary;
  summary["command"] = "eval";
  summary["verdicts"] = verdicts.size();
  summary["orphaned_runs"] = orphaned;
  summary["base_em"] = em;
  summary["out"] = a.out.string();
  PrintSummary(out, summary, stamp);
  return orphaned > 0 ? kExitPartial : kExitOk;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  fs::path labels;
  double lower = 0.38;
  double step = 0.01;
  fs::path out;
};

int CmdSweep(const SweepArgs& a, std::ostream& out) {
  RequireFile(a.labels, "labels");
  SweepResult result = SweepThreshold(ReadLabels(a.labels), a.lower, a.step);
  if (!a.out.empty()) {
    std::ostringstream csv;
    WriteCurveCsv(result, csv);
    WriteFileAtomic(a.out, csv.str());
  }
  ordered_json settings = {{"command", "sweep"},
                           {"labels_sha256", FileDigest(a.labels)},
                           {"lower", a.lower},
                           {"step", a.step}};
  ordered_json summary;
  summary["command"] = "sweep";
  summary["tau_star"] = result.tau_star;
  summary["mean_false_rate"] = result.mean_false_rate;
  summary["models"] = result.models;
  summary["grid_points"] = result.grid.size();
  if (!a.out.empty()) summary["curve"] = a.out.string();
  PrintSummary(out, summary, Stamp(settings, 0));
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  fs::path in;
  std::string format;
  fs::path out;
};

int CmdReport(const ReportArgs& a, std::ostream& out) {
  const ReportFormat format = ParseReportFormat(a.format);
  RequireFile(a.in / "report.json", "report.json");
  Report report = ReadReport(a.in / "report.json");
  if (fs::is_directory(a.in / "curves")) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.in / "curves")) {
      if (e.path().extension() == ".csv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      report.curves.emplace(f.stem().string(), ReadFile(f));
    }
  }
  const fs::path dir = a.out.empty() ? a.in : a.out;
  std::vector<fs::path> written = RenderReport(report, format, dir);
  ordered_json files = ordered_json::array();
  for (const auto& p : written) files.push_back(p.lexically_relative(dir).generic_string());
  ordered_json settings = {{"command", "report"},
                           {"format", a.format},
                           {"report_sha256", FileDigest(a.in / "report.json")}};
  ordered_json summary = {{"command", "report"}, {"format", a.format}, {"files", files}};
  ordered_json stamp = Stamp(settings, report.metadata.value("seed", std::uint64_t{0}));
  PrintSummary(out, summary, stamp);
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfiguration:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnsupportedDataset:
      return kExitUsage;
    default:
      return kExitError;
  }
}

std::string ErrorLine(std::string_view code, std::string_view message, std::string_view detail) {
  ordered_json j;
  j["error"] = code;
  j["message"] = message;
  j["detail"] = detail;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

bool IsBattery(std::string_view name) {
  return std::find(kBatteries.begin(), kBatteries.end(), name) != kBatteries.end();
}

Battery BuildBattery(const std::vector<QuestionRecord>& records, std::string_view battery,
                     std::uint64_t seed, ParaphraseProvider* paraphraser,
                     const NerProvider* ner) {
  if (!IsBattery(battery)) throw Error(ErrorCode::kInvalidArgument, "unknown battery", std::string(battery));
  Battery out;
  const bool with_base = battery != "dir-swap";
  for (const auto& r : records) {
    if (with_base) out.cases.push_back(MakeBaseCase(r));
    if (battery == "inv") {
      out.cases.push_back(GenInvTypo(r, seed));
      if (!paraphraser) throw Error(ErrorCode::kConfiguration, "inv battery needs a paraphraser");
      Generated g = GenInvPara(r, *paraphraser);
      if (g.test) {
        out.cases.push_back(std::move(*g.test));
      } else {
        out.skipped.emplace_back(r.id, g.skip_reason);
      }
    } else if (battery == "dir-swap") {
      Generated g = GenDirSwap(r);
      if (g.test) {
        out.cases.push_back(std::move(*g.test));
      } else {
        out.skipped.emplace_back(r.id, g.skip_reason);
      }
    } else if (battery == "dir-hint") {
      if (r.tags.answer_type == AnswerType::kUna) {
        out.skipped.emplace_back(r.id, "no hint for UNA questions");
      } else {
        out.cases.push_back(GenDirHint(r));
      }
    } else if (battery == "dir-cot") {
      out.cases.push_back(GenDirCot(r, ner));
    }
  }
  return out;
}

std::vector<TestCase> ReadManifest(const fs::path& path) {
  return ReadJsonl<TestCase>(path, [](const nlohmann::json& j) { return TestCase::FromJson(j); });
}

void WriteManifest(const fs::path& path, const std::vector<TestCase>& cases) {
  std::string lines;
  for (const auto& c : cases) lines += c.ToJson().dump() + "\n";
  WriteFileAtomic(path, lines);
}

std::vector<RunResult> ReadRuns(const fs::path& path) {
  return ReadJsonl<RunResult>(path, [](const nlohmann::json& j) { return RunResult::FromJson(j); });
}

std::vector<RunResult> MergeRuns(std::vector<RunResult> existing,
                                 const std::vector<RunResult>& fresh) {
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t i = 0; i < existing.size(); ++i) {
    index[{existing[i].model_id, existing[i].test.id}] = i;
  }
  for (const auto& r : fresh) {
    auto key = std::make_pair(r.model_id, r.test.id);
    auto it = index.find(key);
    if (it != index.end()) {
      existing[it->second] = r;
    } else {
      index[key] = existing.size();
      existing.push_back(r);
    }
  }
  return existing;
}

void WriteRuns(const fs::path& path, const std::vector<RunResult>& runs) {
  std::string lines;
  for (const auto& r : runs) lines += r.ToJson().dump() + "\n";
  WriteFileAtomic(path, lines);
}

std::vector<Verdict> ReadVerdicts(const fs::path& path) {
  return ReadJsonl<Verdict>(path, [](const nlohmann::json& j) { return Verdict::FromJson(j); });
}

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluation harness for knowledge-based complex question answering", "kbqa-eval"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Read a source dataset into a unified store");
  c_ingest->add_option("--dataset", ingest.dataset, "Dataset id")->required();
  c_ingest->add_option("--in", ingest.in, "Source dump")->required();
  c_ingest->add_option("--out", ingest.out, "Store to write (JSONL)")->required();
  c_ingest->add_option("--split", ingest.split, "Split selector (GrailQA)");
  c_ingest->add_option("--ner", ingest.ner, "Answer-type NER: rule, sidecar or none");
  c_ingest->add_option("--sidecar", ingest.sidecar, "NLP sidecar URL");

  LabelArgs label;
  auto* c_label = app.add_subcommand("label", "Validate, expand and sample a store");
  c_label->add_option("--store", label.store, "Store to read");
  c_label->add_option("--out", label.out, "Store to write");
  c_label->add_option("--aliases", label.aliases, "Offline alias file (JSONL)");
  c_label->add_option("--alias-lang", label.languages, "Alias languages to keep");
  c_label->add_option("--sample-by", label.sample_by, "none, answer_type, language or dataset");
  c_label->add_option("--n", label.n, "Sample size (per stratum)");
  c_label->add_option("--seed", label.seed, "Sampling seed");
  c_label->add_option("--sparql", label.sparql, "Classify one SPARQL query");

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Ask the configured models a test battery");
  c_run->add_option("--config", run.config, "Run configuration")->required();
  c_run->add_option("--model", run.models, "Model ids (default: all configured)");
  c_run->add_option("--battery", run.batteries, "base, inv, dir-swap, dir-hint, dir-cot or mft");
  c_run->add_option("--manifest", run.manifest, "Run a pre-generated test manifest");
  c_run->add_option("--runs", run.runs, "Run results file (JSONL)");
  c_run->add_option("--store", run.store, "Override the configured store");
  c_run->add_option("--seed", run.seed, "Override the configured seed");
  c_run->add_option("--parallelism", run.parallelism, "Maximum in-flight requests");

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Score run results and build report.json");
  c_eval->add_option("--config", eval.config, "Run configuration");
  c_eval->add_option("--store", eval.store, "Question store");
  c_eval->add_option("--runs", eval.runs, "Run results file");
  c_eval->add_option("--tau", eval.tau, "Fuzzy-match threshold");
  c_eval->add_option("--out", eval.out, "Output directory");
  c_eval->add_option("--aliases", eval.aliases, "Offline alias file (JSONL)");
  c_eval->add_option("--seed", eval.seed, "Seed recorded in the report");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Select the fuzzy-match threshold from labels");
  c_sweep->add_option("--labels", sweep.labels, "Labeled samples (JSONL)")->required();
  c_sweep->add_option("--lower", sweep.lower, "Lowest threshold");
  c_sweep->add_option("--step", sweep.step, "Grid step");
  c_sweep->add_option("--out", sweep.out, "Curve CSV to write");

  ChecklistArgs checklist;
  auto* c_check = app.add_subcommand("checklist", "Generate a test battery manifest");
  c_check->add_option("--config", checklist.config, "Run configuration");
  c_check->add_option("--store", checklist.store, "Question store");
  c_check->add_option("--battery", checklist.battery, "Battery to generate");
  c_check->add_option("--out", checklist.out, "Manifest to write (JSONL)");
  c_check->add_option("--paraphrases", checklist.paraphrases, "Paraphrase fixture");
  c_check->add_option("--seed", checklist.seed, "Battery seed");

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Render report.json as md, csv or json");
  c_report->add_option("--in", report.in, "Directory holding report.json")->required();
  c_report->add_option("--format", report.format, "md, csv or json")->required();
  c_report->add_option("--out", report.out, "Output directory (default: --in)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << ErrorLine("usage", e.what(), "") << "\n";
    return kExitUsage;
  }

  try {
    SetupLogging(log_level);
    if (c_ingest->parsed()) return CmdIngest(ingest, out);
    if (c_label->parsed()) return CmdLabel(label, out);
    if (c_run->parsed()) return CmdRun(run, out);
    if (c_eval->parsed()) return CmdEval(eval, out);
    if (c_sweep->parsed()) return CmdSweep(sweep, out);
    if (c_check->parsed()) return CmdChecklist(checklist, out);
    if (c_report->parsed()) return CmdReport(report, out);
  } catch (const Error& e) {
    err << ErrorLine(ToString(e.code()), e.what(), e.detail()) << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << ErrorLine("internal", e.what(), "") << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace kbqa::cli
