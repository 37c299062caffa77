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

#include "kbqa/report.h"

#include <fstream>
#include <sstream>

#include "kbqa/error.h"

namespace kbqa {
namespace {

using ojson = nlohmann::ordered_json;

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string(), path.string());
  out << content;
}

std::string MarkdownEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

ojson TableToJson(const Table& t) {
  ojson j;
  j["name"] = t.name;
  j["title"] = t.title;
  j["row_header"] = t.row_header;
  j["columns"] = t.columns;
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    ojson row;
    row["label"] = t.rows[r];
    ojson cells = ojson::array();
    for (const auto& c : t.cells[r]) cells.push_back(c.ToJson());
    row["cells"] = cells;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["notes"] = t.notes;
  return j;
}

Table TableFromJson(const ojson& j) {
  Table t;
  t.name = j.at("name").get<std::string>();
  t.title = j.value("title", "");
  t.row_header = j.value("row_header", "");
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    t.rows.push_back(row.at("label").get<std::string>());
    std::vector<Cell> cells;
    for (const auto& c : row.at("cells")) {
      cells.push_back(Cell::FromJson(nlohmann::json::parse(c.dump())));
    }
    t.cells.push_back(std::move(cells));
  }
  if (j.contains("notes")) t.notes = j.at("notes");
  return t;
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kInvalidArgument, "unknown report format", std::string(name));
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string RenderTableMarkdown(const Table& t) {
  std::ostringstream out;
  out << "### " << MarkdownEscape(t.title) << "\n\n";
  out << "| " << MarkdownEscape(t.row_header);
  for (const auto& c : t.columns) out << " | " << MarkdownEscape(c);
  out << " |\n|---";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << "|---:";
  out << "|\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "| " << MarkdownEscape(t.rows[r]);
    for (const auto& c : t.cells[r]) out << " | " << c.Render();
    out << " |\n";
  }
  for (const auto& [k, v] : t.notes.items()) {
    out << "\n_" << k << ": " << MarkdownEscape(v.is_string() ? v.get<std::string>() : v.dump())
        << "_\n";
  }
  return out.str();
}

std::string RenderTableCsv(const Table& t) {
  std::ostringstream out;
  out << CsvField(t.row_header);
  for (const auto& c : t.columns) out << ',' << CsvField(c);
  out << "\r\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << CsvField(t.rows[r]);
    for (const auto& c : t.cells[r]) out << ',' << CsvField(c.Render());
    out << "\r\n";
  }
  return out.str();
}

std::string RenderMarkdown(const Report& report) {
  std::ostringstream out;
  out << "# Evaluation report\n\n";
  for (const auto& [k, v] : report.metadata.items()) {
    out << "- " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const auto& t : report.tables) out << "\n" << RenderTableMarkdown(t);
  if (!report.curves.empty()) {
    out << "\n### Threshold curves\n\n";
    for (const auto& [name, csv] : report.curves) out << "- curves/" << name << ".csv\n";
  }
  return out.str();
}

std::string RenderJson(const Report& report) {
  ojson j;
  j["metadata"] = report.metadata;
  ojson tables = ojson::array();
  for (const auto& t : report.tables) tables.push_back(TableToJson(t));
  j["tables"] = tables;
  ojson curves = ojson::object();
  for (const auto& [name, csv] : report.curves) curves[name] = csv;
  j["curves"] = curves;
  return j.dump(2) + "\n";
}

Report ReportFromJson(const ojson& j) {
  Report r;
  if (j.contains("metadata")) r.metadata = j.at("metadata");
  for (const auto& t : j.value("tables", ojson::array())) {
    r.tables.push_back(TableFromJson(t));
  }
  const ojson curves = j.value("curves", ojson::object());
  for (const auto& [name, csv] : curves.items()) {
    r.curves[name] = csv.get<std::string>();
  }
  return r;
}

Report ReadReport(const std::filesystem::path& report_json) {
  std::ifstream in(report_json);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + report_json.string(), report_json.string());
  auto j = ojson::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::kParse, report_json.string() + " is not JSON", report_json.string());
  }
  return ReportFromJson(j);
}

std::vector<std::filesystem::path> RenderReport(const Report& report, ReportFormat format,
                                                const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  switch (format) {
    case ReportFormat::kMarkdown:
      written.push_back(dir / "report.md");
      WriteFile(written.back(), RenderMarkdown(report));
      break;
    case ReportFormat::kCsv:
      for (const auto& t : report.tables) {
        written.push_back(dir / "tables" / (t.name + ".csv"));
        WriteFile(written.back(), RenderTableCsv(t));
      }
      for (const auto& [name, csv] : report.curves) {
        written.push_back(dir / "curves" / (name + ".csv"));
        WriteFile(written.back(), csv);
      }
      break;
    case ReportFormat::kJson:
      written.push_back(dir / "report.json");
      WriteFile(written.back(), RenderJson(report));
      break;
  }
  return written;
}

}  // namespace kbqa
