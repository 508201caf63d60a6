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


#include "metrics/flops.hpp"

#include "common/error.hpp"

namespace gsc::metrics {

namespace {

Stage Named(StageKind kind, std::string name) {
  Stage s;
  s.kind = kind;
  s.name = std::move(name);
  return s;
}

}  // namespace

Stage PcaProjectStage(std::uint64_t d, std::uint64_t k, std::uint64_t vectors) {
  Stage s = Named(StageKind::kPcaProject, "pca_project");
  s.dim = d;
  s.rank = k;
  s.vectors = vectors;
  return s;
}

Stage PcaReconstructStage(std::uint64_t d, std::uint64_t k, std::uint64_t vectors) {
  Stage s = PcaProjectStage(d, k, vectors);
  s.kind = StageKind::kPcaReconstruct;
  s.name = "pca_reconstruct";
  return s;
}

Stage QuantizeStage(std::uint64_t scalars) {
  Stage s = Named(StageKind::kQuantize, "quantize");
  s.scalars = scalars;
  return s;
}

Stage DequantizeStage(std::uint64_t scalars) {
  Stage s = Named(StageKind::kDequantize, "dequantize");
  s.scalars = scalars;
  return s;
}

Stage LdpcDecodeStage(std::uint64_t iterations, std::uint64_t edges) {
  Stage s = Named(StageKind::kLdpcDecode, "ldpc_decode");
  s.iterations = iterations;
  s.edges = edges;
  return s;
}

Stage DctStage(std::uint64_t transforms) {
  Stage s = Named(StageKind::kDct, "dct");
  s.transforms = transforms;
  return s;
}

Stage AdapterStage(std::string name, std::optional<std::uint64_t> declared) {
  Stage s = Named(StageKind::kAdapter, std::move(name));
  s.declared_flops = declared;
  return s;
}

std::uint64_t StageFlops(const Stage& s) {
  switch (s.kind) {
    case StageKind::kPcaProject:
    case StageKind::kPcaReconstruct:
      return 2 * s.dim * s.rank * s.vectors;
    case StageKind::kQuantize:
    case StageKind::kDequantize:
      return 2 * s.scalars;
    case StageKind::kLdpcDecode:
      return 6 * s.edges * s.iterations;
    case StageKind::kDct:
      return 2 * 8 * 8 * s.transforms;
    case StageKind::kAdapter:
      if (!s.declared_flops) {
        Fail(ErrorCode::kCapability, "stage '" + s.name + "' declares no FLOPs count");
      }
      return *s.declared_flops;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown stage kind");
}

std::uint64_t FlopsEstimate(std::span<const Stage> pipeline) {
  std::uint64_t total = 0;
  for (const auto& s : pipeline) total += StageFlops(s);
  return total;
}

}  // namespace gsc::metrics
