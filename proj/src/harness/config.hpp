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


// Experiment configuration: a strict-schema JSON document.
//
//   {
//     "name": "meeting",                      required
//     "dataset": "data/meeting",              required; relative to the config file
//     "calibration": "data/train",            codebook fitting set; default = dataset
//     "output": "results/meeting",            default "results/<name>"
//     "scenario": "online_meeting",           online_meeting | road_monitoring | custom
//     "budgets": [78600, 236000, 393000],     required, bytes, each > 0
//     "seeds": [1],                           default [1]
//     "thresholds": {"semantic_nmse_max": 0.01, "piqe_max": 50},
//     "code": "default",                      LDPC code id or alist path
//     "channel": {"snr_db": 10, "modulation": "bpsk"},   snr_db null = noiseless
//     "max_iterations": 25,
//     "threads": 0,                           0 = one per hardware thread
//     "methods": [                            required, labels unique
//       {"label": "gsc", "kind": "gsc",
//        "extractor": "depth-proxy", "generator": "upsample",
//        "task_extractor": "depth-proxy",     default = extractor
//        "basis_mode": "shared",              shared | self-contained
//        "task": {"rank": null, "bits": 8},   rank null = full
//        "perceptual": {"rank": null, "bits": 8, "enabled": true}},
//       {"label": "traditional", "kind": "dct", "task_extractor": "depth-proxy",
//        "quality": 75}
//     ]
//   }
//
// Methods may override "code", "channel" and "max_iterations". Unknown keys,
// missing required keys and bad values raise kValidation naming the JSON path
// (e.g. "$.methods[0].channel.snr").

#ifndef GSC_HARNESS_CONFIG_HPP
#define GSC_HARNESS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pipeline/pipeline.hpp"

namespace gsc::harness {

enum class MethodKind { kGsc, kDct };

struct MethodConfig {
  std::string label;
  MethodKind kind = MethodKind::kGsc;
  pipeline::PipelineConfig gsc;       // kind == kGsc
  pipeline::BaselineConfig baseline;  // kind == kDct
};

struct ExperimentConfig {
  std::string name;
  std::filesystem::path dataset;
  std::optional<std::filesystem::path> calibration;
  std::filesystem::path output;
  std::string scenario = "custom";
  std::vector<std::uint64_t> budgets;
  std::vector<std::uint64_t> seeds{1};
  pipeline::Thresholds thresholds;
  unsigned threads = 0;
  std::vector<MethodConfig> methods;
};

// Relative paths resolve against `base_dir`. Throws kParse for malformed
// JSON and kValidation for schema violations.
ExperimentConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// The validated config with every default spelled out; parses back to an
// equivalent config.
nlohmann::ordered_json EchoConfig(const ExperimentConfig& config);

}  // namespace gsc::harness

#endif  // GSC_HARNESS_CONFIG_HPP
