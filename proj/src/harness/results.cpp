// Copyright 2026 The GSC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "harness/results.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "common/error.hpp"
#include "common/format.hpp"
#include "common/image.hpp"

namespace gsc::harness {

namespace {

const char* const kResultsHeader =
    "scenario,method,budget_bytes,semantic_nmse,piqe,nrqm,kl,cer,flops,seed";

std::string Cell(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Opt(const std::optional<double>& v) { return v ? FormatDouble(*v) : ""; }
std::string Opt(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string Opt(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }

// RFC 4180 records; a trailing newline does not open a new record.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      if (!field.empty()) Fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": stray quote");
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
      ++line;
    } else {
      field += c;
    }
  }
  if (quoted) Fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": unterminated quote");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::optional<double> ParseOptDouble(const std::string& s, std::size_t line, const char* col) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    Fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": bad " + col + " '" + s + "'");
  }
  return v;
}

std::uint64_t ParseU64(const std::string& s, std::size_t line, const char* col) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    Fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": bad " + col + " '" + s + "'");
  }
  return v;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Series {
  std::string method;
  std::map<std::uint64_t, std::pair<double, int>> points;  // budget -> (sum, n)
};

// Mean over seeds of `metric` per (method, budget), methods in row order.
std::vector<Series> SeedMeans(const std::vector<AggregateRow>& rows, std::string_view metric) {
  std::vector<Series> out;
  for (const AggregateRow& r : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Series& s) { return s.method == r.method; });
    if (it == out.end()) {
      out.push_back({r.method, {}});
      it = out.end() - 1;
    }
    const std::optional<double>& v = metric == "piqe" ? r.piqe : r.semantic_nmse;
    if (!v || !r.budget_bytes) continue;
    auto& p = it->points[*r.budget_bytes];
    p.first += *v;
    p.second += 1;
  }
  return out;
}

}  // namespace

std::size_t ResultSet::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(raw.begin(), raw.end(), [](const RawRow& r) { return r.failed(); }));
}

std::vector<AggregateRow> Aggregate(const std::vector<RawRow>& raw) {
  struct Acc {
    AggregateRow row;
    std::vector<const RawRow*> members;
  };
  std::vector<Acc> groups;
  for (const RawRow& r : raw) {
    const auto& rep = r.report;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
      return a.row.method == rep.method && a.row.budget_bytes == rep.budget_bytes &&
             a.row.seed == rep.seed;
    });
    if (it == groups.end()) {
      Acc a;
      a.row.scenario = rep.scenario;
      a.row.method = rep.method;
      a.row.budget_bytes = rep.budget_bytes;
      a.row.seed = rep.seed;
      groups.push_back(std::move(a));
      it = groups.end() - 1;
    }
    it->members.push_back(&r);
  }
  std::vector<AggregateRow> out;
  for (Acc& g : groups) {
    auto mean = [&](auto get) -> std::optional<double> {
      double sum = 0;
      std::size_t n = 0;
      for (const RawRow* r : g.members) {
        if (r->failed()) continue;
        if (auto v = get(r->report)) {
          sum += static_cast<double>(*v);
          ++n;
        }
      }
      if (!n) return std::nullopt;
      return sum / static_cast<double>(n);
    };
    using R = metrics::MetricReport;
    g.row.semantic_nmse = mean([](const R& r) { return r.semantic_nmse; });
    g.row.piqe = mean([](const R& r) { return r.piqe; });
    g.row.nrqm = mean([](const R& r) { return r.nrqm; });
    g.row.kl = mean([](const R& r) { return r.kl_divergence; });
    g.row.cer = mean([](const R& r) { return r.cer; });
    g.row.flops = mean([](const R& r) { return r.flops_estimate; });
    out.push_back(std::move(g.row));
  }
  return out;
}

std::string ResultsCsv(const std::vector<AggregateRow>& rows) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const AggregateRow& r : rows) {
    out += Cell(r.scenario) + "," + Cell(r.method) + "," + Opt(r.budget_bytes) + "," +
           Opt(r.semantic_nmse) + "," + Opt(r.piqe) + "," + Opt(r.nrqm) + "," + Opt(r.kl) +
           "," + Opt(r.cer) + "," + Opt(r.flops) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<AggregateRow> ParseResultsCsv(std::string_view text) {
  auto records = ParseCsv(text);
  if (records.empty()) Fail(ErrorCode::kParse, "csv: empty file");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kResultsHeader) Fail(ErrorCode::kParse, "csv line 1: unexpected header '" + header + "'");
  std::vector<AggregateRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    const std::size_t line = i + 1;
    if (f.size() != 10) {
      Fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": expected 10 fields, found " +
                                  std::to_string(f.size()));
    }
    AggregateRow r;
    r.scenario = f[0];
    r.method = f[1];
    if (!f[2].empty()) r.budget_bytes = ParseU64(f[2], line, "budget_bytes");
    r.semantic_nmse = ParseOptDouble(f[3], line, "semantic_nmse");
    r.piqe = ParseOptDouble(f[4], line, "piqe");
    r.nrqm = ParseOptDouble(f[5], line, "nrqm");
    r.kl = ParseOptDouble(f[6], line, "kl");
    r.cer = ParseOptDouble(f[7], line, "cer");
    r.flops = ParseOptDouble(f[8], line, "flops");
    r.seed = ParseU64(f[9], line, "seed");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string RawCsv(const std::vector<RawRow>& raw) {
  std::string out =
      "scenario,method,budget_bytes,seed,item,status,semantic_nmse,piqe,nrqm,kl,cer,flops,"
      "bytes_transmitted,coded_bits,failed_codewords,basis_mode,task_constraint_met,"
      "perceptual_constraint_met\n";
  for (const RawRow& row : raw) {
    const auto& r = row.report;
    out += Cell(r.scenario) + "," + Cell(r.method) + "," + Opt(r.budget_bytes) + "," +
           std::to_string(r.seed) + "," + Cell(row.item) + "," + Cell(row.status) + "," +
           Opt(r.semantic_nmse) + "," + Opt(r.piqe) + "," + Opt(r.nrqm) + "," +
           Opt(r.kl_divergence) + "," + Opt(r.cer) + "," + Opt(r.flops_estimate) + "," +
           std::to_string(r.bytes_transmitted) + "," + std::to_string(r.coded_bits) + "," +
           std::to_string(r.failed_codewords) + "," + Cell(r.basis_mode) + "," +
           Opt(r.task_constraint_met) + "," + Opt(r.perceptual_constraint_met) + "\n";
  }
  return out;
}

std::string PlotSvg(const std::vector<AggregateRow>& rows, std::string_view metric) {
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                        "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  const double W = 640, H = 400, L = 80, R = 170, T = 40, B = 60;
  const auto series = SeedMeans(rows, metric);
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [b, p] : s.points) {
      const double x = static_cast<double>(b), y = p.first / p.second;
      if (!any) {
        x0 = x1 = x;
        y0 = y1 = y;
        any = true;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 == x0) {
    x0 -= 1;
    x1 += 1;
  }
  if (y1 == y0) {
    const double pad = y0 == 0 ? 1 : std::abs(y0) * 0.1;
    y0 -= pad;
    y1 += pad;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  const std::string ylabel = metric == "piqe" ? "PIQE" : "semantic-NMSE";

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                    "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"" + Fixed(L, 0) + "\" y=\"24\" font-size=\"14\">" + ylabel +
         " vs. bytes transmitted</text>\n";
  svg += "<line x1=\"" + Fixed(L, 2) + "\" y1=\"" + Fixed(H - B, 2) + "\" x2=\"" +
         Fixed(W - R, 2) + "\" y2=\"" + Fixed(H - B, 2) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + Fixed(L, 2) + "\" y1=\"" + Fixed(T, 2) + "\" x2=\"" + Fixed(L, 2) +
         "\" y2=\"" + Fixed(H - B, 2) + "\" stroke=\"black\"/>\n";
  if (!any) {
    svg += "<text x=\"240\" y=\"200\">no data</text>\n</svg>\n";
    return svg;
  }
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    svg += "<text x=\"" + Fixed(px(xv), 2) + "\" y=\"" + Fixed(H - B + 18, 2) +
           "\" text-anchor=\"middle\">" + Short(xv) + "</text>\n";
    svg += "<text x=\"" + Fixed(L - 6, 2) + "\" y=\"" + Fixed(py(yv) + 4, 2) +
           "\" text-anchor=\"end\">" + Short(yv) + "</text>\n";
  }
  svg += "<text x=\"" + Fixed((L + W - R) / 2, 2) + "\" y=\"" + Fixed(H - 16, 2) +
         "\" text-anchor=\"middle\">bytes transmitted (budget)</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    std::string pts;
    for (const auto& [b, p] : s.points) {
      if (!pts.empty()) pts += ' ';
      pts += Fixed(px(static_cast<double>(b)), 2) + "," + Fixed(py(p.first / p.second), 2);
    }
    if (!pts.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    }
    for (const auto& [b, p] : s.points) {
      svg += "<circle cx=\"" + Fixed(px(static_cast<double>(b)), 2) + "\" cy=\"" +
             Fixed(py(p.first / p.second), 2) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    const double ly = T + 10 + 18.0 * static_cast<double>(i);
    svg += "<rect x=\"" + Fixed(W - R + 16, 2) + "\" y=\"" + Fixed(ly - 8, 2) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    std::string label;
    for (char c : s.method) {
      if (c == '<') label += "&lt;";
      else if (c == '>') label += "&gt;";
      else if (c == '&') label += "&amp;";
      else label += c;
    }
    svg += "<text x=\"" + Fixed(W - R + 34, 2) + "\" y=\"" + Fixed(ly + 2, 2) + "\">" + label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string ReportTable(const std::vector<AggregateRow>& rows, bool csv) {
  const auto series = SeedMeans(rows, "semantic_nmse");
  std::vector<std::uint64_t> budgets;
  for (const AggregateRow& r : rows) {
    if (r.budget_bytes &&
        std::find(budgets.begin(), budgets.end(), *r.budget_bytes) == budgets.end()) {
      budgets.push_back(*r.budget_bytes);
    }
  }
  std::sort(budgets.begin(), budgets.end());
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> head{"method"};
  for (auto b : budgets) head.push_back(std::to_string(b));
  table.push_back(head);
  for (const auto& s : series) {
    std::vector<std::string> line{s.method};
    for (auto b : budgets) {
      auto it = s.points.find(b);
      line.push_back(it == s.points.end() ? (csv ? "" : "-")
                     : csv ? FormatDouble(it->second.first / it->second.second)
                           : Short(it->second.first / it->second.second));
    }
    table.push_back(line);
  }
  std::string out;
  if (csv) {
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) out += (i ? "," : "") + Cell(line[i]);
      out += "\n";
    }
    return out;
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  out = "semantic-NMSE by byte budget (mean over seeds)\n";
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      std::string cell = line[i];
      cell.resize(width[i], ' ');
      out += (i ? "  " : "") + cell;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

void WriteResultDir(const ResultSet& results, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "raw", ec);
  std::filesystem::create_directories(dir / "plots", ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    WriteFileBytes(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  };
  write(dir / "results.csv", ResultsCsv(results.rows));
  write(dir / "raw" / "items.csv", RawCsv(results.raw));
  nlohmann::ordered_json prov;
  prov["tool_version"] = results.provenance.tool_version;
  prov["config_hash"] = results.provenance.config_hash;
  prov["started_at"] = results.provenance.started_at;
  prov["finished_at"] = results.provenance.finished_at;
  prov["raw_rows"] = results.raw.size();
  prov["aggregate_rows"] = results.rows.size();
  prov["failed_cells"] = results.failed_cells();
  write(dir / "provenance.json", prov.dump(2) + "\n");
  write(dir / "plots" / "semantic_nmse.svg", PlotSvg(results.rows, "semantic_nmse"));
  write(dir / "plots" / "piqe.svg", PlotSvg(results.rows, "piqe"));
}

std::vector<AggregateRow> ReadResultsCsv(const std::filesystem::path& path) {
  Bytes bytes = ReadFileBytes(path);
  return ParseResultsCsv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace gsc::harness
