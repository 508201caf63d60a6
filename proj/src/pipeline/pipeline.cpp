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


#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "codec/quantizer.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "metrics/piqe.hpp"

namespace gsc::pipeline {

namespace {

using codec::StreamKind;

// Generator calls draw from a different seed family than extractor calls.
constexpr std::uint64_t kGeneratorSalt = 0x67656e;

std::string BasisId(StreamKind kind, std::size_t slot) {
  return (kind == StreamKind::kTask ? "t" : "p") + std::to_string(slot);
}

std::vector<std::vector<double>> Rows(const Tensor& t) {
  const std::size_t rows = t.rows();
  const std::size_t cols = t.cols();
  std::vector<std::vector<double>> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    out[r].assign(t.values.begin() + r * cols, t.values.begin() + (r + 1) * cols);
  }
  return out;
}

std::string DimsString(const std::vector<std::uint32_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

// Checks that frame `f` produced the same tensor geometry as frame 0.
void CheckDims(std::vector<std::vector<std::uint32_t>>& expected,
               const std::vector<Tensor>& got, std::size_t f, const char* role) {
  if (f == 0) {
    for (const Tensor& t : got) {
      if (t.dims.empty()) Fail(ErrorCode::kDimensionMismatch, std::string(role) + " tensor is a scalar");
      expected.push_back(t.dims);
    }
    return;
  }
  if (got.size() != expected.size()) {
    Fail(ErrorCode::kDimensionMismatch, "frame " + std::to_string(f) + ": " +
                                            std::to_string(got.size()) + " " + role +
                                            " tensors, frame 0 had " +
                                            std::to_string(expected.size()));
  }
  for (std::size_t s = 0; s < got.size(); ++s) {
    if (got[s].dims != expected[s]) {
      Fail(ErrorCode::kDimensionMismatch, "frame " + std::to_string(f) + ": " + role +
                                              " tensor " + std::to_string(s) + " has dims " +
                                              DimsString(got[s].dims) + ", frame 0 had " +
                                              DimsString(expected[s]));
    }
  }
}

std::size_t RowsOf(const std::vector<std::uint32_t>& dims) {
  std::size_t rows = 1;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) rows *= dims[i];
  return rows;
}

std::optional<std::uint64_t> AddFlops(std::optional<std::uint64_t> total,
                                      std::optional<std::uint64_t> more, bool first) {
  if (first) return more;
  if (!total || !more) return std::nullopt;
  return *total + *more;
}

std::size_t PlanStreamBytes(const PlanInput& in) {
  std::size_t bytes = codec::VectorStreamByteSize(in.id_length, in.plan.rank,
                                                  in.vector_count, in.plan.bits);
  if (in.basis_dim) bytes += codec::BasisStreamByteSize(in.id_length, in.plan.rank, in.basis_dim);
  return bytes;
}

std::optional<std::uint64_t> TotalFlops(const std::vector<metrics::Stage>& a,
                                        const std::vector<metrics::Stage>& b) {
  std::vector<metrics::Stage> all = a;
  all.insert(all.end(), b.begin(), b.end());
  for (const auto& s : all) {
    if (s.kind == metrics::StageKind::kAdapter && !s.declared_flops) return std::nullopt;
  }
  return metrics::FlopsEstimate(all);
}

// Feature vector q(frame) used by semantic-NMSE.
std::vector<double> Features(AdapterClient& q, const Image& frame, const Meta& meta,
                             std::uint64_t seed) {
  std::vector<double> out;
  if (q.Has(kCapExtract)) {
    Extraction ex = q.Extract(frame, meta, seed);
    if (ex.task.empty()) {
      Fail(ErrorCode::kCapability,
           q.spec().ToString() + " yields no task tensors to compare");
    }
    for (const Tensor& t : ex.task) out.insert(out.end(), t.values.begin(), t.values.end());
  } else if (q.Has(kCapEmbed)) {
    out = q.Embed(frame, meta, seed).vector;
  } else {
    Fail(ErrorCode::kCapability, q.spec().ToString() + " can neither extract nor embed");
  }
  return out;
}

}  // namespace

const char* BasisModeName(BasisMode mode) {
  return mode == BasisMode::kShared ? "shared" : "self-contained";
}

Codebook FitCodebook(const std::vector<Item>& calibration, AdapterClient& extractor) {
  std::vector<std::vector<std::uint32_t>> task_dims, perc_dims;
  std::vector<std::vector<std::vector<double>>> task_rows, perc_rows;
  std::size_t f = 0;
  for (const Item& item : calibration) {
    for (std::size_t i = 0; i < item.frames.size(); ++i, ++f) {
      Extraction ex = extractor.Extract(item.frames[i], item.meta, DeriveSeed(0, f));
      // Slots must agree in width across items; the number of rows may vary.
      if (f == 0) {
        task_rows.resize(ex.task.size());
        perc_rows.resize(ex.perceptual.size());
      }
      if (ex.task.size() != task_rows.size() || ex.perceptual.size() != perc_rows.size()) {
        Fail(ErrorCode::kDimensionMismatch, "calibration item '" + item.name +
                                                "' changes the extractor's tensor count");
      }
      auto append = [&](std::vector<std::vector<std::vector<double>>>& rows,
                        const std::vector<Tensor>& ts) {
        for (std::size_t s = 0; s < ts.size(); ++s) {
          auto r = Rows(ts[s]);
          if (!rows[s].empty() && !r.empty() && rows[s][0].size() != r[0].size()) {
            Fail(ErrorCode::kDimensionMismatch,
                 "calibration item '" + item.name + "' changes tensor width of slot " +
                     std::to_string(s));
          }
          rows[s].insert(rows[s].end(), std::make_move_iterator(r.begin()),
                         std::make_move_iterator(r.end()));
        }
      };
      append(task_rows, ex.task);
      append(perc_rows, ex.perceptual);
    }
  }
  if (f == 0) Fail(ErrorCode::kInvalidArgument, "codebook calibration set has no frames");
  auto fit = [](StreamKind kind, const std::vector<std::vector<std::vector<double>>>& rows) {
    std::vector<codec::PcaBasis> out;
    for (std::size_t s = 0; s < rows.size(); ++s) {
      const int d = static_cast<int>(rows[s][0].size());
      const int rank = std::min(d, static_cast<int>(rows[s].size()));
      out.push_back(codec::FitBasis(rows[s], rank, BasisId(kind, s)));
    }
    return out;
  };
  return Codebook{fit(StreamKind::kTask, task_rows), fit(StreamKind::kPerceptual, perc_rows)};
}

std::vector<StreamPlan> PlanBudget(std::vector<PlanInput> streams, std::size_t fixed_bytes,
                                   std::optional<std::uint64_t> budget) {
  std::vector<StreamPlan> out;
  auto total = [&] {
    std::uint64_t t = fixed_bytes;
    for (const auto& s : streams) t += PlanStreamBytes(s);
    return t;
  };
  // Largest stream of `kind` that `can_shrink` allows, or null.
  auto largest = [&](StreamKind kind, auto can_shrink) -> PlanInput* {
    PlanInput* best = nullptr;
    std::size_t best_bytes = 0;
    for (auto& s : streams) {
      if (s.plan.kind != kind || !can_shrink(s.plan)) continue;
      std::size_t b = PlanStreamBytes(s);
      if (!best || b > best_bytes) {
        best = &s;
        best_bytes = b;
      }
    }
    return best;
  };
  if (budget) {
    const std::uint64_t initial = total();
    std::uint64_t current = initial;
    while (current > *budget) {
      if (auto* s = largest(StreamKind::kPerceptual, [](const StreamPlan& p) { return p.rank > 1; })) {
        --s->plan.rank;
      } else if (auto* s = largest(StreamKind::kPerceptual,
                                   [](const StreamPlan& p) { return p.bits > codec::kMinQuantBits; })) {
        --s->plan.bits;
      } else if (auto* s = largest(StreamKind::kTask,
                                   [](const StreamPlan& p) { return p.bits > codec::kMinQuantBits; })) {
        --s->plan.bits;
      } else {
        Fail(ErrorCode::kBudgetInfeasible,
             "payload needs at least " + std::to_string(current) + " bytes (" +
                 std::to_string(initial) + " at the configured rank/bits), budget is " +
                 std::to_string(*budget));
      }
      current = total();
    }
  }
  for (const auto& s : streams) out.push_back(s.plan);
  return out;
}

GscPipeline::GscPipeline(PipelineConfig config, std::shared_ptr<const Codebook> codebook,
                         const std::vector<Item>* calibration)
    : config_(std::move(config)), codebook_(std::move(codebook)) {
  phy::ValidateChannel(config_.channel);
  for (const StreamSettings* s : {&config_.task, &config_.perceptual}) {
    if (s->bits < codec::kMinQuantBits || s->bits > codec::kMaxQuantBits) {
      Fail(ErrorCode::kInvalidArgument, "quantizer bits must be in [1, 16], got " +
                                            std::to_string(s->bits));
    }
    if (s->rank && *s->rank < 1) {
      Fail(ErrorCode::kInvalidArgument, "stream rank must be positive");
    }
  }
  if (config_.max_iterations < 1) {
    Fail(ErrorCode::kInvalidArgument, "max_iterations must be positive");
  }
  code_ = phy::CodeById(config_.code_id);
  config_.extractor.required.insert(kCapExtract);
  config_.generator.required.insert(kCapGenerate);
  extractor_ = ConnectAdapter(config_.extractor);
  generator_ = ConnectAdapter(config_.generator);
  if (config_.task_extractor) task_extractor_ = ConnectAdapter(*config_.task_extractor);
  if (!codebook_) {
    if (!calibration) Fail(ErrorCode::kInvalidArgument, "no codebook and no calibration set");
    codebook_ = std::make_shared<const Codebook>(FitCodebook(*calibration, *extractor_));
  }
}

Transmission GscPipeline::Transmit(const Item& item, std::uint64_t seed,
                                   std::optional<std::uint64_t> budget) {
  if (item.frames.empty()) Fail(ErrorCode::kInvalidArgument, "item '" + item.name + "' has no frames");
  Transmission tx;
  ItemLayout& layout = tx.layout;
  layout.frames = item.frames.size();
  const Codebook& cb = *codebook_;

  std::vector<std::vector<std::vector<double>>> task_rows, perc_rows;
  std::vector<std::optional<std::string>> texts;
  std::optional<std::uint64_t> extract_flops;
  for (std::size_t f = 0; f < item.frames.size(); ++f) {
    Extraction ex = extractor_->Extract(item.frames[f], item.meta, DeriveSeed(seed, f));
    if (!config_.perceptual_enabled) ex.perceptual.clear();
    CheckDims(layout.task_dims, ex.task, f, "task");
    CheckDims(layout.perceptual_dims, ex.perceptual, f, "perceptual");
    extract_flops = AddFlops(extract_flops, ex.flops, f == 0);
    task_rows.resize(ex.task.size());
    perc_rows.resize(ex.perceptual.size());
    for (std::size_t s = 0; s < ex.task.size(); ++s) {
      auto r = Rows(ex.task[s]);
      task_rows[s].insert(task_rows[s].end(), r.begin(), r.end());
    }
    for (std::size_t s = 0; s < ex.perceptual.size(); ++s) {
      auto r = Rows(ex.perceptual[s]);
      perc_rows[s].insert(perc_rows[s].end(), r.begin(), r.end());
    }
    texts.push_back(std::move(ex.text));
  }
  tx.stages.push_back(metrics::AdapterStage("extractor", extract_flops));

  auto check_slots = [&](const std::vector<codec::PcaBasis>& bases,
                         const std::vector<std::vector<std::uint32_t>>& dims, const char* role) {
    if (dims.size() != bases.size()) {
      Fail(ErrorCode::kDimensionMismatch,
           std::string("extractor produced ") + std::to_string(dims.size()) + " " + role +
               " tensors, codebook has " + std::to_string(bases.size()));
    }
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (dims[s].back() != static_cast<std::uint32_t>(bases[s].dim())) {
        Fail(ErrorCode::kDimensionMismatch,
             std::string(role) + " tensor " + std::to_string(s) + " rows have width " +
                 std::to_string(dims[s].back()) + ", basis dimension is " +
                 std::to_string(bases[s].dim()));
      }
    }
  };
  check_slots(cb.task, layout.task_dims, "task");
  if (config_.perceptual_enabled) {
    check_slots(cb.perceptual, layout.perceptual_dims, "perceptual");
  }

  const bool any_text = std::any_of(texts.begin(), texts.end(),
                                    [](const auto& t) { return t.has_value(); });
  std::size_t fixed = codec::kPayloadHeaderBytes;
  if (any_text) {
    for (const auto& t : texts) {
      tx.source_texts.push_back(t.value_or(""));
      fixed += codec::StreamByteSize(codec::MakeTextStream(tx.source_texts.back()));
    }
    layout.text_streams = tx.source_texts.size();
  }

  const bool self_contained = config_.basis_mode == BasisMode::kSelfContained;
  std::vector<PlanInput> inputs;
  auto add_inputs = [&](StreamKind kind, const std::vector<codec::PcaBasis>& bases,
                        const std::vector<std::vector<std::vector<double>>>& rows,
                        const StreamSettings& settings) {
    for (std::size_t s = 0; s < bases.size(); ++s) {
      PlanInput in;
      in.plan.kind = kind;
      in.plan.slot = s;
      in.plan.rank = std::min(settings.rank.value_or(bases[s].rank()), bases[s].rank());
      in.plan.bits = settings.bits;
      in.id_length = bases[s].basis_id().size();
      in.vector_count = rows[s].size();
      in.basis_dim = self_contained ? bases[s].dim() : 0;
      inputs.push_back(in);
    }
  };
  add_inputs(StreamKind::kTask, cb.task, task_rows, config_.task);
  if (config_.perceptual_enabled) {
    add_inputs(StreamKind::kPerceptual, cb.perceptual, perc_rows, config_.perceptual);
  }
  tx.accounting.plan = PlanBudget(std::move(inputs), fixed, budget);

  std::uint64_t projected = 0;
  for (const StreamPlan& p : tx.accounting.plan) {
    const bool task = p.kind == StreamKind::kTask;
    const codec::PcaBasis basis = (task ? cb.task : cb.perceptual)[p.slot].Truncated(p.rank);
    const auto& rows = (task ? task_rows : perc_rows)[p.slot];
    std::vector<std::vector<double>> coeffs;
    coeffs.reserve(rows.size());
    for (const auto& r : rows) coeffs.push_back(basis.Project(r));
    if (self_contained) tx.payload.streams.push_back(codec::MakeBasisStream(basis));
    tx.payload.streams.push_back(codec::MakeVectorStream(
        p.kind, basis.basis_id(), coeffs, codec::FitQuantSpec(p.bits, coeffs)));
    tx.stages.push_back(metrics::PcaProjectStage(basis.dim(), p.rank, rows.size()));
    projected += static_cast<std::uint64_t>(rows.size()) * p.rank;
  }
  tx.stages.push_back(metrics::QuantizeStage(projected));
  for (const auto& t : tx.source_texts) tx.payload.streams.push_back(codec::MakeTextStream(t));

  tx.payload_bytes = codec::SerializePayload(tx.payload);
  tx.frame = phy::EncodeFrame(*code_, tx.payload_bytes);
  tx.accounting.payload_bytes = tx.payload_bytes.size();
  tx.accounting.coded_bits = tx.frame.bits.size();
  tx.accounting.codewords = tx.frame.codeword_count(*code_);
  return tx;
}

std::vector<double> GscPipeline::Channel(const Transmission& tx, std::uint64_t seed,
                                         std::uint64_t stream) const {
  phy::ChannelConfig ch = config_.channel;
  ch.seed = seed;
  return phy::ChannelLlrs(tx.frame, *code_, ch, stream);
}

Reception GscPipeline::Receive(const phy::CodedFrame& frame, std::span<const double> llrs,
                               const ItemLayout& layout, std::uint64_t seed) {
  Reception rx;
  phy::FrameDecode dec = phy::DecodeFrame(*code_, frame, llrs, config_.max_iterations);
  rx.failed_codewords = dec.failed_codewords;
  rx.decode_iterations = static_cast<std::uint64_t>(dec.iterations);
  rx.stages.push_back(
      metrics::LdpcDecodeStage(rx.decode_iterations, code_->edge_count()));

  codec::PartialPayload partial = codec::DeserializePartial(dec.payload);
  // A stream is trusted only if it parsed and every codeword carrying its
  // bytes (and the payload header) satisfied its checks.
  const std::size_t k = static_cast<std::size_t>(code_->k());
  auto bytes_ok = [&](std::size_t begin, std::size_t end) {
    if (end <= begin) return true;
    for (std::size_t c = begin * 8 / k; c <= (end * 8 - 1) / k; ++c) {
      if (c >= dec.codeword_ok.size() || !dec.codeword_ok[c]) return false;
    }
    return true;
  };
  const bool header_ok = bytes_ok(0, codec::kPayloadHeaderBytes);
  rx.stream_valid.resize(partial.parsed.size());
  for (std::size_t i = 0; i < partial.parsed.size(); ++i) {
    rx.stream_valid[i] = header_ok && partial.parsed[i] &&
                         bytes_ok(partial.byte_ranges[i].first, partial.byte_ranges[i].second);
  }
  rx.payload = partial.payload;

  // Parsed streams form a prefix of the announced ones; sort them by kind.
  std::vector<std::pair<const codec::Stream*, bool>> task_s, perc_s, text_s;
  std::vector<std::pair<const codec::Stream*, bool>> basis_s;
  for (std::size_t i = 0; i < partial.payload.streams.size(); ++i) {
    const codec::Stream& s = partial.payload.streams[i];
    const bool ok = rx.stream_valid[i];
    switch (s.kind) {
      case StreamKind::kTask: task_s.push_back({&s, ok}); break;
      case StreamKind::kPerceptual: perc_s.push_back({&s, ok}); break;
      case StreamKind::kText: text_s.push_back({&s, ok}); break;
      case StreamKind::kBasis: basis_s.push_back({&s, ok}); break;
    }
  }

  const Codebook& cb = *codebook_;
  const bool self_contained = config_.basis_mode == BasisMode::kSelfContained;
  std::uint64_t dequantized = 0;
  // Rebuilds the per-frame tensors of one slot. Anything inconsistent with
  // the layout falls back to the basis mean (shared) or zeros.
  auto rebuild = [&](StreamKind kind, std::size_t slot,
                     const std::vector<std::uint32_t>& dims,
                     const std::vector<std::pair<const codec::Stream*, bool>>& streams) {
    const std::size_t rows_per_frame = RowsOf(dims);
    const std::size_t d = dims.back();
    const std::size_t want = rows_per_frame * layout.frames;
    const codec::PcaBasis* shared =
        kind == StreamKind::kTask
            ? (slot < cb.task.size() ? &cb.task[slot] : nullptr)
            : (slot < cb.perceptual.size() ? &cb.perceptual[slot] : nullptr);
    std::vector<double> flat(want * d, 0.0);
    if (!self_contained && shared && static_cast<std::size_t>(shared->dim()) == d) {
      for (std::size_t r = 0; r < want; ++r) {
        for (std::size_t j = 0; j < d; ++j) flat[r * d + j] = shared->mean()(j);
      }
    }
    std::optional<codec::PcaBasis> basis;
    const codec::Stream* s = slot < streams.size() ? streams[slot].first : nullptr;
    if (s && streams[slot].second && s->vector_count == want &&
        s->basis_id == BasisId(kind, slot)) {
      if (self_contained) {
        for (const auto& [b, ok] : basis_s) {
          if (ok && b->basis_id == s->basis_id) {
            try {
              basis = codec::StreamBasis(*b);
            } catch (const Error&) {
              basis.reset();
            }
          }
        }
      } else if (shared && s->rank <= shared->rank()) {
        basis = shared->Truncated(s->rank);
      }
    }
    if (basis && static_cast<std::size_t>(basis->dim()) == d && basis->rank() == s->rank) {
      auto coeffs = codec::StreamVectors(*s);
      for (std::size_t r = 0; r < want; ++r) {
        auto x = basis->Reconstruct(coeffs[r]);
        std::copy(x.begin(), x.end(), flat.begin() + r * d);
      }
      dequantized += static_cast<std::uint64_t>(want) * s->rank;
      rx.stages.push_back(metrics::PcaReconstructStage(d, s->rank, want));
    }
    std::vector<Tensor> per_frame;
    const std::size_t frame_values = rows_per_frame * d;
    for (std::size_t f = 0; f < layout.frames; ++f) {
      per_frame.push_back(MakeTensor(
          DType::kF64, dims,
          std::vector<double>(flat.begin() + f * frame_values,
                              flat.begin() + (f + 1) * frame_values)));
    }
    return per_frame;
  };

  std::vector<std::vector<Tensor>> task(layout.frames), perc(layout.frames);
  for (std::size_t slot = 0; slot < layout.task_dims.size(); ++slot) {
    auto t = rebuild(StreamKind::kTask, slot, layout.task_dims[slot], task_s);
    for (std::size_t f = 0; f < layout.frames; ++f) task[f].push_back(std::move(t[f]));
  }
  for (std::size_t slot = 0; slot < layout.perceptual_dims.size(); ++slot) {
    auto t = rebuild(StreamKind::kPerceptual, slot, layout.perceptual_dims[slot], perc_s);
    for (std::size_t f = 0; f < layout.frames; ++f) perc[f].push_back(std::move(t[f]));
  }
  rx.stages.push_back(metrics::DequantizeStage(dequantized));

  std::optional<std::uint64_t> gen_flops;
  for (std::size_t f = 0; f < layout.frames; ++f) {
    std::optional<std::string> text;
    if (f < layout.text_streams) {
      text = (f < text_s.size() && text_s[f].second) ? text_s[f].first->data : std::string();
    }
    Generation g = generator_->Generate(task[f], perc[f], text,
                                        DeriveSeed(seed ^ kGeneratorSalt, f));
    gen_flops = AddFlops(gen_flops, g.flops, f == 0);
    if (g.image) rx.destination.frames.push_back(std::move(*g.image));
    if (text || g.text) rx.destination.texts.push_back(g.text.value_or(""));
  }
  rx.stages.push_back(metrics::AdapterStage("generator", gen_flops));
  if (!rx.destination.frames.empty() && rx.destination.frames.size() != layout.frames) {
    Fail(ErrorCode::kAdapter, "generator returned images for only some frames");
  }
  return rx;
}

ItemOutcome GscPipeline::Run(const Item& item, std::size_t item_index, std::uint64_t seed,
                             std::optional<std::uint64_t> budget) {
  Transmission tx = Transmit(item, seed, budget);
  std::vector<double> llrs = Channel(tx, seed, item_index);
  Reception rx = Receive(tx.frame, llrs, tx.layout, seed);
  rx.destination.name = item.name;
  rx.destination.meta = item.meta;

  ItemOutcome out;
  metrics::MetricReport& r = out.report;
  r.scenario = config_.scenario;
  r.budget_bytes = budget;
  r.bytes_transmitted = tx.accounting.payload_bytes;
  r.coded_bits = tx.accounting.coded_bits;
  r.seed = seed;
  r.basis_mode = BasisModeName(config_.basis_mode);
  r.failed_codewords = rx.failed_codewords;
  if (!rx.destination.frames.empty()) {
    AdapterClient& q = task_extractor_ ? *task_extractor_ : *extractor_;
    r.semantic_nmse = SemanticNmse(item, rx.destination, q, seed);
  }
  FillPerceptualMetrics(item, rx.destination, tx.source_texts, config_.thresholds, r);
  r.flops_estimate = TotalFlops(tx.stages, rx.stages);
  if (rx.failed_codewords) {
    out.status = std::to_string(rx.failed_codewords) + " codewords failed to decode";
  }
  return out;
}

double SemanticNmse(const Item& source, const Item& destination, AdapterClient& q,
                    std::uint64_t seed) {
  if (source.frames.size() != destination.frames.size() || source.frames.empty()) {
    Fail(ErrorCode::kDimensionMismatch,
         "semantic-NMSE needs matching frame counts, got " +
             std::to_string(source.frames.size()) + " and " +
             std::to_string(destination.frames.size()));
  }
  double sum = 0.0;
  for (std::size_t f = 0; f < source.frames.size(); ++f) {
    // Both sides use the same seed so a stochastic q() sees identical draws.
    const std::uint64_t s = DeriveSeed(seed, f);
    auto a = Features(q, source.frames[f], source.meta, s);
    auto b = Features(q, destination.frames[f], destination.meta, s);
    sum += metrics::Nmse(a, b);
  }
  return sum / static_cast<double>(source.frames.size());
}

void FillPerceptualMetrics(const Item& source, const Item& destination,
                           const std::vector<std::string>& source_texts,
                           const Thresholds& thresholds, metrics::MetricReport& report) {
  if (!destination.frames.empty()) {
    double sum = 0.0;
    std::size_t scored = 0;
    for (const Image& img : destination.frames) {
      if (img.width < 32 || img.height < 32) continue;
      sum += metrics::Piqe(img);
      ++scored;
    }
    if (scored) report.piqe = sum / static_cast<double>(scored);
    if (!source.frames.empty()) {
      std::vector<double> p, q;
      for (const Image& img : source.frames) p.insert(p.end(), img.pixels.begin(), img.pixels.end());
      for (const Image& img : destination.frames) {
        q.insert(q.end(), img.pixels.begin(), img.pixels.end());
      }
      report.kl_divergence = metrics::KlDivergenceHist(p, q);
    }
  }
  if (!source_texts.empty()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < source_texts.size(); ++i) {
      const std::string hyp = i < destination.texts.size() ? destination.texts[i] : "";
      sum += metrics::CharacterErrorRate(source_texts[i], hyp);
    }
    report.cer = sum / static_cast<double>(source_texts.size());
  }
  if (thresholds.semantic_nmse_max && report.semantic_nmse) {
    report.task_constraint_met = *report.semantic_nmse <= *thresholds.semantic_nmse_max;
  }
  if (thresholds.piqe_max && report.piqe) {
    report.perceptual_constraint_met = *report.piqe <= *thresholds.piqe_max;
  }
}

}  // namespace gsc::pipeline
