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


// Result rows, their CSV form and rate-vs-metric plots.

#ifndef GSC_HARNESS_RESULTS_HPP
#define GSC_HARNESS_RESULTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metrics/metrics.hpp"

namespace gsc::harness {

// One (method, budget, seed, item) cell.
struct RawRow {
  std::string item;
  metrics::MetricReport report;  // report.method holds the method label
  std::string status = "ok";     // "ok", a warning, or "failed: ..."

  bool failed() const { return status.starts_with("failed"); }
  bool operator==(const RawRow&) const = default;
};

// Mean over the items of one (method, budget, seed). A metric is averaged
// over the successful rows that carry it and left empty when none does.
struct AggregateRow {
  std::string scenario;
  std::string method;
  std::optional<std::uint64_t> budget_bytes;
  std::optional<double> semantic_nmse;
  std::optional<double> piqe;
  std::optional<double> nrqm;
  std::optional<double> kl;
  std::optional<double> cer;
  std::optional<double> flops;
  std::uint64_t seed = 0;

  bool operator==(const AggregateRow&) const = default;
};

struct Provenance {
  std::string tool_version;
  std::string config_hash;
  std::string started_at;
  std::string finished_at;
};

struct ResultSet {
  std::vector<RawRow> raw;
  std::vector<AggregateRow> rows;
  Provenance provenance;

  std::size_t failed_cells() const;
};

// Groups `raw` (already in emission order) by (method, budget, seed),
// keeping first-appearance order.
std::vector<AggregateRow> Aggregate(const std::vector<RawRow>& raw);

// results.csv: scenario,method,budget_bytes,semantic_nmse,piqe,nrqm,kl,cer,flops,seed
std::string ResultsCsv(const std::vector<AggregateRow>& rows);
// Throws kParse naming the line.
std::vector<AggregateRow> ParseResultsCsv(std::string_view text);
std::string RawCsv(const std::vector<RawRow>& raw);

// Rate on the x axis, one series per method (mean over seeds).
// `metric` is "semantic_nmse" or "piqe".
std::string PlotSvg(const std::vector<AggregateRow>& rows, std::string_view metric);

// Methods as rows, budgets as columns, semantic-NMSE (mean over seeds) in
// the cells. Plain text or CSV.
std::string ReportTable(const std::vector<AggregateRow>& rows, bool csv);

// results.csv, raw/items.csv, provenance.json, plots/*.svg. The config echo
// is written by the caller. Throws kIo.
void WriteResultDir(const ResultSet& results, const std::filesystem::path& dir);
std::vector<AggregateRow> ReadResultsCsv(const std::filesystem::path& path);

}  // namespace gsc::harness

#endif  // GSC_HARNESS_RESULTS_HPP
