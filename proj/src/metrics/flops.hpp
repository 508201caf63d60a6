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


// Floating-point operation accounting for a pipeline description.
//
// Per-stage formulas:
//   pca_project / pca_reconstruct  2 * d * k per vector
//   quantize / dequantize          2 per scalar
//   ldpc_decode                    6 * edges per iteration
//   dct                            2 * 8 * 8 per 8-point 1-D transform
//   adapter                        the adapter's self-declared count

#ifndef GSC_METRICS_FLOPS_HPP
#define GSC_METRICS_FLOPS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsc::metrics {

enum class StageKind {
  kPcaProject,
  kPcaReconstruct,
  kQuantize,
  kDequantize,
  kLdpcDecode,
  kDct,
  kAdapter,
};

struct Stage {
  StageKind kind = StageKind::kAdapter;
  std::string name;
  std::uint64_t dim = 0;
  std::uint64_t rank = 0;
  std::uint64_t vectors = 0;
  std::uint64_t scalars = 0;
  std::uint64_t iterations = 0;
  std::uint64_t edges = 0;
  std::uint64_t transforms = 0;
  std::optional<std::uint64_t> declared_flops;  // adapter stages only
};

Stage PcaProjectStage(std::uint64_t d, std::uint64_t k, std::uint64_t vectors);
Stage PcaReconstructStage(std::uint64_t d, std::uint64_t k, std::uint64_t vectors);
Stage QuantizeStage(std::uint64_t scalars);
Stage DequantizeStage(std::uint64_t scalars);
Stage LdpcDecodeStage(std::uint64_t iterations, std::uint64_t edges);
Stage DctStage(std::uint64_t transforms);
Stage AdapterStage(std::string name, std::optional<std::uint64_t> declared);

// Throws kCapability for an adapter stage without a declared count.
std::uint64_t StageFlops(const Stage& stage);
std::uint64_t FlopsEstimate(std::span<const Stage> pipeline);

}  // namespace gsc::metrics

#endif  // GSC_METRICS_FLOPS_HPP
