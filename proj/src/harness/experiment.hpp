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


// Sweep execution: methods x budgets x seeds x items.

#ifndef GSC_HARNESS_EXPERIMENT_HPP
#define GSC_HARNESS_EXPERIMENT_HPP

#include <functional>
#include <string>

#include "harness/config.hpp"
#include "harness/results.hpp"

namespace gsc::harness {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  // Only the first budget and first seed of every method (`gsc run`).
  bool first_cell_only = false;
  // Called once per finished (method, budget, seed) cell, from worker threads.
  std::function<void(const std::string&)> progress;
};

// Cells run in parallel (config.threads) and are emitted in config order:
// method, budget, seed, then items by file name. A failing item becomes a
// failed raw row; the sweep continues.
ResultSet RunExperiment(const ExperimentConfig& config, const RunOptions& options = {});

// FNV-1a 64 of the compact config echo, as 16 hex digits.
std::string ConfigHash(const ExperimentConfig& config);

// WriteResultDir plus config.echo.json, into config.output.
void WriteExperiment(const ExperimentConfig& config, const ResultSet& results);

}  // namespace gsc::harness

#endif  // GSC_HARNESS_EXPERIMENT_HPP
