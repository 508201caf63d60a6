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


#include "harness/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <memory>

#include "common/error.hpp"
#include "common/image.hpp"
#include "common/parallel.hpp"
#include "pipeline/item.hpp"

namespace gsc::harness {

namespace {

std::string UtcNow() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string Describe(const std::exception& e) {
  if (const auto* g = dynamic_cast<const Error*>(&e)) {
    return std::string("failed: ") + ErrorCodeName(g->code()) + ": " + e.what();
  }
  return std::string("failed: ") + e.what();
}

struct CellKey {
  std::size_t method;
  std::uint64_t budget;
  std::uint64_t seed;
};

}  // namespace

std::string ConfigHash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : EchoConfig(config).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultSet RunExperiment(const ExperimentConfig& config, const RunOptions& options) {
  ResultSet out;
  out.provenance.tool_version = kToolVersion;
  out.provenance.config_hash = ConfigHash(config);
  out.provenance.started_at = UtcNow();

  const std::vector<pipeline::Item> items = pipeline::LoadDataset(config.dataset);
  const std::vector<pipeline::Item> calibration =
      config.calibration ? pipeline::LoadDataset(*config.calibration) : std::vector<pipeline::Item>{};
  const auto& fit_set = config.calibration ? calibration : items;

  // Codebooks are fitted once per GSC method and shared read-only by its cells.
  std::vector<std::shared_ptr<const pipeline::Codebook>> codebooks(config.methods.size());
  std::vector<std::string> method_error(config.methods.size());
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    const MethodConfig& mc = config.methods[m];
    if (mc.kind != MethodKind::kGsc) continue;
    try {
      pipeline::AdapterSpec spec = mc.gsc.extractor;
      spec.required.insert(pipeline::kCapExtract);
      auto extractor = pipeline::ConnectAdapter(spec);
      codebooks[m] = std::make_shared<const pipeline::Codebook>(
          pipeline::FitCodebook(fit_set, *extractor));
    } catch (const std::exception& e) {
      method_error[m] = Describe(e);
    }
  }

  std::vector<CellKey> cells;
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    for (std::size_t b = 0; b < config.budgets.size(); ++b) {
      for (std::size_t s = 0; s < config.seeds.size(); ++s) {
        if (options.first_cell_only && (b > 0 || s > 0)) continue;
        cells.push_back({m, config.budgets[b], config.seeds[s]});
      }
    }
  }

  std::vector<std::vector<RawRow>> cell_rows(cells.size());
  ParallelFor(cells.size(), config.threads, [&](std::size_t c) {
    const CellKey& key = cells[c];
    const MethodConfig& mc = config.methods[key.method];
    std::vector<RawRow>& rows = cell_rows[c];
    for (const auto& item : items) {
      RawRow row;
      row.item = item.name;
      rows.push_back(std::move(row));
    }
    auto fail_all = [&](const std::string& status) {
      for (RawRow& r : rows) r.status = status;
    };
    std::unique_ptr<pipeline::Method> method;
    if (!method_error[key.method].empty()) {
      fail_all(method_error[key.method]);
    } else {
      try {
        if (mc.kind == MethodKind::kGsc) {
          method = std::make_unique<pipeline::GscPipeline>(mc.gsc, codebooks[key.method]);
        } else {
          method = std::make_unique<pipeline::DctBaseline>(mc.baseline);
        }
      } catch (const std::exception& e) {
        fail_all(Describe(e));
      }
    }
    for (std::size_t i = 0; method && i < items.size(); ++i) {
      try {
        pipeline::ItemOutcome o = method->Run(items[i], i, key.seed, key.budget);
        rows[i].report = std::move(o.report);
        rows[i].status = std::move(o.status);
      } catch (const std::exception& e) {
        rows[i].status = Describe(e);
      }
    }
    for (RawRow& r : rows) {
      r.report.scenario = config.scenario;
      r.report.method = mc.label;
      r.report.budget_bytes = key.budget;
      r.report.budget_label = std::to_string(key.budget);
      r.report.seed = key.seed;
      if (!r.failed()) {
        try {
          metrics::ValidateReport(r.report);
        } catch (const std::exception& e) {
          r.status = Describe(e);
        }
      }
    }
    if (options.progress) {
      options.progress(mc.label + " budget=" + std::to_string(key.budget) +
                       " seed=" + std::to_string(key.seed));
    }
  });

  for (auto& rows : cell_rows) {
    for (auto& r : rows) out.raw.push_back(std::move(r));
  }
  out.rows = Aggregate(out.raw);
  out.provenance.finished_at = UtcNow();
  return out;
}

void WriteExperiment(const ExperimentConfig& config, const ResultSet& results) {
  WriteResultDir(results, config.output);
  const std::string echo = EchoConfig(config).dump(2) + "\n";
  WriteFileBytes(config.output / "config.echo.json",
                 std::span(reinterpret_cast<const std::uint8_t*>(echo.data()), echo.size()));
}

}  // namespace gsc::harness
