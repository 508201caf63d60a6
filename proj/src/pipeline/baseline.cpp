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


// Traditional separate source/channel coding: each frame is block-DCT coded
// at one quality shared by the whole item, then LDPC framed on its own.

#include "codec/dct_codec.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "pipeline/pipeline.hpp"

namespace gsc::pipeline {

namespace {

std::uint64_t EncodedBytes(const std::vector<Image>& frames, int quality) {
  std::uint64_t total = 0;
  for (const Image& f : frames) total += codec::DctEncode(f, quality).size();
  return total;
}

std::uint64_t BlockCount(const Image& img) {
  return static_cast<std::uint64_t>((img.width + 7) / 8) * ((img.height + 7) / 8);
}

}  // namespace

DctBaseline::DctBaseline(BaselineConfig config) : config_(std::move(config)) {
  phy::ValidateChannel(config_.channel);
  if (config_.quality < 1 || config_.quality > 100) {
    Fail(ErrorCode::kInvalidArgument, "quality must be in [1, 100]");
  }
  if (config_.max_iterations < 1) {
    Fail(ErrorCode::kInvalidArgument, "max_iterations must be positive");
  }
  code_ = phy::CodeById(config_.code_id);
  if (config_.task_extractor) task_extractor_ = ConnectAdapter(*config_.task_extractor);
}

int DctBaseline::ChooseQuality(const std::vector<Image>& frames, std::uint64_t budget) {
  const std::uint64_t smallest = EncodedBytes(frames, 1);
  if (smallest > budget) {
    Fail(ErrorCode::kBudgetInfeasible, "DCT coding needs at least " + std::to_string(smallest) +
                                           " bytes, budget is " + std::to_string(budget));
  }
  // Size grows with quality, so bisect on the largest quality that fits.
  int lo = 1, hi = 100;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (EncodedBytes(frames, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

ItemOutcome DctBaseline::Run(const Item& item, std::size_t item_index, std::uint64_t seed,
                             std::optional<std::uint64_t> budget) {
  if (item.frames.empty()) Fail(ErrorCode::kInvalidArgument, "item '" + item.name + "' has no frames");
  const int quality = budget ? ChooseQuality(item.frames, *budget) : config_.quality;
  phy::ChannelConfig ch = config_.channel;
  ch.seed = seed;

  ItemOutcome out;
  metrics::MetricReport& r = out.report;
  Item dest;
  dest.name = item.name;
  dest.meta = item.meta;
  std::vector<metrics::Stage> stages;
  std::uint64_t iterations = 0;
  std::size_t corrupt_frames = 0;
  for (std::size_t f = 0; f < item.frames.size(); ++f) {
    const Image& src = item.frames[f];
    Bytes bytes = codec::DctEncode(src, quality);
    phy::CodedFrame frame = phy::EncodeFrame(*code_, bytes);
    auto llrs = phy::ChannelLlrs(frame, *code_, ch, DeriveSeed(item_index, f));
    phy::FrameDecode dec = phy::DecodeFrame(*code_, frame, llrs, config_.max_iterations);
    r.bytes_transmitted += bytes.size();
    r.coded_bits += frame.bits.size();
    r.failed_codewords += dec.failed_codewords;
    iterations += static_cast<std::uint64_t>(dec.iterations);
    Image img;
    try {
      img = codec::DctDecode(dec.payload);
      if (img.width != src.width || img.height != src.height) img = Image();
    } catch (const Error&) {
      img = Image();
    }
    if (img.empty()) {
      // An unreadable frame is shown as flat mid-gray.
      img = Image(src.width, src.height, 1, 128.0);
      ++corrupt_frames;
    }
    dest.frames.push_back(std::move(img));
    // Forward and inverse 2-D DCT: 16 one-dimensional transforms per block each way.
    stages.push_back(metrics::DctStage(32 * BlockCount(src)));
  }
  stages.push_back(metrics::LdpcDecodeStage(iterations, code_->edge_count()));

  r.scenario = config_.scenario;
  r.budget_bytes = budget;
  r.seed = seed;
  if (task_extractor_) {
    r.semantic_nmse = SemanticNmse(item, dest, *task_extractor_, seed);
  }
  FillPerceptualMetrics(item, dest, {}, config_.thresholds, r);
  r.flops_estimate = metrics::FlopsEstimate(stages);
  if (corrupt_frames) {
    out.status = std::to_string(corrupt_frames) + " frames undecodable";
  }
  return out;
}

}  // namespace gsc::pipeline
