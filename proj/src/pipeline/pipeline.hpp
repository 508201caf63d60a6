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


// The GSC transmit / receive chain and its traditional baseline.
//
// Transmit: extractor -> per-slot PCA projection -> quantization -> GSCP
// payload -> LDPC framing. Receive: LDPC decoding -> partial payload parse ->
// dequantization -> reconstruction -> generator. Every tensor slot of the
// extractor becomes one vector stream holding the rows of that slot across
// all frames of the item.

#ifndef GSC_PIPELINE_PIPELINE_HPP
#define GSC_PIPELINE_PIPELINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codec/payload.hpp"
#include "codec/pca.hpp"
#include "metrics/flops.hpp"
#include "metrics/metrics.hpp"
#include "phy/channel.hpp"
#include "phy/frame.hpp"
#include "phy/ldpc.hpp"
#include "pipeline/adapter.hpp"
#include "pipeline/item.hpp"

namespace gsc::pipeline {

enum class BasisMode { kShared, kSelfContained };
const char* BasisModeName(BasisMode mode);  // "shared" / "self-contained"

struct StreamSettings {
  std::optional<int> rank;  // empty = full rank of the basis
  int bits = 8;
};

struct Thresholds {
  std::optional<double> semantic_nmse_max;
  std::optional<double> piqe_max;
};

struct PipelineConfig {
  std::string scenario = "custom";
  AdapterSpec extractor;
  AdapterSpec generator;
  // q() for semantic-NMSE; defaults to the extractor.
  std::optional<AdapterSpec> task_extractor;
  BasisMode basis_mode = BasisMode::kShared;
  StreamSettings task;
  StreamSettings perceptual;
  bool perceptual_enabled = true;  // false degenerates GSC to TOSC
  std::string code_id = "default";
  phy::ChannelConfig channel{10.0, phy::Modulation::kBpsk, 1};
  std::optional<std::uint64_t> byte_budget;
  Thresholds thresholds;
  int max_iterations = phy::kDefaultMaxIterations;
};

// Traditional chain: block-DCT source coding, then the same LDPC + channel.
struct BaselineConfig {
  std::string scenario = "custom";
  std::optional<AdapterSpec> task_extractor;
  std::string code_id = "default";
  phy::ChannelConfig channel{10.0, phy::Modulation::kBpsk, 1};
  std::optional<std::uint64_t> byte_budget;
  int quality = 75;  // used when no budget is set
  Thresholds thresholds;
  int max_iterations = phy::kDefaultMaxIterations;
};

// Shared knowledge: one basis per extractor tensor slot, fitted offline.
struct Codebook {
  std::vector<codec::PcaBasis> task;
  std::vector<codec::PcaBasis> perceptual;
};

// Fits full-rank bases (rank = min(d, rows)) on the extractor's output
// for every frame of `calibration`.
Codebook FitCodebook(const std::vector<Item>& calibration, AdapterClient& extractor);

// Per-frame tensor geometry of an item. It is session-level signalling known
// to both ends (like a negotiated video format) and is not part of the
// byte-budgeted payload.
struct ItemLayout {
  std::size_t frames = 0;
  std::vector<std::vector<std::uint32_t>> task_dims;
  std::vector<std::vector<std::uint32_t>> perceptual_dims;
  std::size_t text_streams = 0;
};

struct StreamPlan {
  codec::StreamKind kind = codec::StreamKind::kTask;
  std::size_t slot = 0;
  int rank = 0;
  int bits = 0;
};

struct Accounting {
  std::uint64_t payload_bytes = 0;
  std::uint64_t coded_bits = 0;
  std::uint64_t codewords = 0;
  std::vector<StreamPlan> plan;  // vector streams after budget enforcement
};

struct Transmission {
  codec::SemanticPayload payload;
  Bytes payload_bytes;
  ItemLayout layout;
  phy::CodedFrame frame;
  Accounting accounting;
  std::vector<std::string> source_texts;
  std::vector<metrics::Stage> stages;
};

struct Reception {
  Item destination;
  codec::SemanticPayload payload;  // streams that parsed
  std::vector<bool> stream_valid;  // per announced stream
  std::size_t failed_codewords = 0;
  std::uint64_t decode_iterations = 0;
  std::vector<metrics::Stage> stages;
};

// Greedy budget policy: lower perceptual ranks one step at a time (largest
// first, down to 1), then perceptual bits, then task bits. Throws
// kBudgetInfeasible when nothing fits. `fixed_bytes` covers text streams and
// the payload header; `basis_dims` (self-contained mode) adds a basis stream
// per vector stream.
struct PlanInput {
  StreamPlan plan;
  std::size_t id_length = 0;
  std::size_t vector_count = 0;
  std::size_t basis_dim = 0;  // 0 unless the basis travels in the payload
};
std::vector<StreamPlan> PlanBudget(std::vector<PlanInput> streams, std::size_t fixed_bytes,
                                   std::optional<std::uint64_t> budget);

struct ItemOutcome {
  metrics::MetricReport report;
  std::string status = "ok";
};

// One method of an experiment. Run() is not thread-safe (one adapter
// connection per instance).
class Method {
 public:
  virtual ~Method() = default;
  virtual ItemOutcome Run(const Item& item, std::size_t item_index, std::uint64_t seed,
                          std::optional<std::uint64_t> budget) = 0;
};

class GscPipeline : public Method {
 public:
  // Connects adapters. A null codebook is fitted from `calibration`.
  GscPipeline(PipelineConfig config, std::shared_ptr<const Codebook> codebook,
              const std::vector<Item>* calibration = nullptr);

  const PipelineConfig& config() const { return config_; }
  std::shared_ptr<const Codebook> codebook() const { return codebook_; }
  const phy::LdpcCode& code() const { return *code_; }

  Transmission Transmit(const Item& item, std::uint64_t seed,
                        std::optional<std::uint64_t> budget);
  // Channel realisation of a transmission for item `stream`.
  std::vector<double> Channel(const Transmission& tx, std::uint64_t seed,
                              std::uint64_t stream) const;
  Reception Receive(const phy::CodedFrame& frame, std::span<const double> llrs,
                    const ItemLayout& layout, std::uint64_t seed);

  ItemOutcome Run(const Item& item, std::size_t item_index, std::uint64_t seed,
                  std::optional<std::uint64_t> budget) override;

 private:
  PipelineConfig config_;
  std::shared_ptr<const Codebook> codebook_;
  std::shared_ptr<const phy::LdpcCode> code_;
  std::unique_ptr<AdapterClient> extractor_;
  std::unique_ptr<AdapterClient> generator_;
  std::unique_ptr<AdapterClient> task_extractor_;  // null = extractor_
};

class DctBaseline : public Method {
 public:
  explicit DctBaseline(BaselineConfig config);
  ItemOutcome Run(const Item& item, std::size_t item_index, std::uint64_t seed,
                  std::optional<std::uint64_t> budget) override;

  // Largest quality whose encoded frames total at most `budget` bytes.
  // Throws kBudgetInfeasible.
  static int ChooseQuality(const std::vector<Image>& frames, std::uint64_t budget);

 private:
  BaselineConfig config_;
  std::shared_ptr<const phy::LdpcCode> code_;
  std::unique_ptr<AdapterClient> task_extractor_;
};

// Mean over frames of nmse(q(source), q(destination)), where q() is the
// concatenation (stream order) of the task tensors of `q`, or its embedding
// when it has no extract capability.
double SemanticNmse(const Item& source, const Item& destination, AdapterClient& q,
                    std::uint64_t seed);

// Shared metric tail: PIQE / KL over destination frames, CER over texts,
// threshold flags.
void FillPerceptualMetrics(const Item& source, const Item& destination,
                           const std::vector<std::string>& source_texts,
                           const Thresholds& thresholds, metrics::MetricReport& report);

}  // namespace gsc::pipeline

#endif  // GSC_PIPELINE_PIPELINE_HPP
