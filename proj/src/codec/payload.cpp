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

#include "codec/payload.hpp"

#include <algorithm>
#include <limits>
#include <string_view>
#include <string>

#include "common/error.hpp"
#include "common/tensor.hpp"

namespace gsc::codec {

const char* StreamKindName(StreamKind kind) {
  switch (kind) {
    case StreamKind::kTask: return "task";
    case StreamKind::kPerceptual: return "perceptual";
    case StreamKind::kText: return "text";
    case StreamKind::kBasis: return "basis";
  }
  return "unknown";
}

Stream MakeVectorStream(StreamKind kind, std::string basis_id,
                        std::span<const std::vector<double>> vectors,
                        const QuantSpec& quant) {
  if (kind != StreamKind::kTask && kind != StreamKind::kPerceptual) {
    Fail(ErrorCode::kInvalidArgument, "vector stream must be task or perceptual");
  }
  ValidateQuantSpec(quant);
  Stream s;
  s.kind = kind;
  s.basis_id = std::move(basis_id);
  s.rank = static_cast<std::uint16_t>(quant.components());
  s.vector_count = static_cast<std::uint32_t>(vectors.size());
  s.quant = quant;
  s.codes.reserve(vectors.size() * s.rank);
  for (const auto& v : vectors) {
    auto c = Quantize(quant, v);
    s.codes.insert(s.codes.end(), c.begin(), c.end());
  }
  return s;
}

Stream MakeTextStream(std::string utf8) {
  Stream s;
  s.kind = StreamKind::kText;
  s.data = std::move(utf8);
  return s;
}

Stream MakeBasisStream(const PcaBasis& basis) {
  const int d = basis.dim();
  const int k = basis.rank();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(k + 1) * d);
  for (int j = 0; j < d; ++j) values.push_back(basis.mean()(j));
  for (int r = 0; r < k; ++r) {
    for (int j = 0; j < d; ++j) values.push_back(basis.components()(r, j));
  }
  Bytes blob = EncodeGsct(MakeTensor(
      DType::kF64,
      {static_cast<std::uint32_t>(k + 1), static_cast<std::uint32_t>(d)},
      std::move(values)));
  Stream s;
  s.kind = StreamKind::kBasis;
  s.basis_id = basis.basis_id();
  s.data.assign(blob.begin(), blob.end());
  return s;
}

std::vector<std::vector<double>> StreamVectors(const Stream& s) {
  if (!s.is_vector()) Fail(ErrorCode::kInvalidArgument, "not a vector stream");
  std::vector<std::vector<double>> out;
  out.reserve(s.vector_count);
  for (std::uint32_t i = 0; i < s.vector_count; ++i) {
    std::span<const std::uint32_t> codes(s.codes.data() + std::size_t{i} * s.rank, s.rank);
    out.push_back(Dequantize(s.quant, codes));
  }
  return out;
}

PcaBasis StreamBasis(const Stream& s) {
  if (s.kind != StreamKind::kBasis) Fail(ErrorCode::kInvalidArgument, "not a basis stream");
  Tensor t = DecodeGsct(std::span(reinterpret_cast<const std::uint8_t*>(s.data.data()),
                                  s.data.size()));
  if (t.dims.size() != 2 || t.dims[0] < 2) {
    Fail(ErrorCode::kCorruptStream, "basis blob must be [rank+1, d]");
  }
  const int k = static_cast<int>(t.dims[0]) - 1;
  const int d = static_cast<int>(t.dims[1]);
  Eigen::VectorXd mean(d);
  Eigen::MatrixXd comps(k, d);
  for (int j = 0; j < d; ++j) mean(j) = t.values[j];
  for (int r = 0; r < k; ++r) {
    for (int j = 0; j < d; ++j) comps(r, j) = t.values[(r + 1) * d + j];
  }
  return PcaBasis(s.basis_id, std::move(mean), std::move(comps),
                  Eigen::VectorXd::Zero(k));
}

void ValidatePayload(const SemanticPayload& p) {
  if (p.streams.size() > 255) {
    Fail(ErrorCode::kInvalidArgument, "payload has more than 255 streams");
  }
  for (std::size_t i = 0; i < p.streams.size(); ++i) {
    const Stream& s = p.streams[i];
    const std::string where = "stream " + std::to_string(i) + ": ";
    if (s.basis_id.size() > 255) {
      Fail(ErrorCode::kInvalidArgument, where + "basis_id longer than 255 bytes");
    }
    if (s.is_vector()) {
      ValidateQuantSpec(s.quant);
      if (s.rank == 0 || s.quant.components() != s.rank) {
        Fail(ErrorCode::kInvalidArgument, where + "rank/quantizer mismatch");
      }
      if (s.codes.size() != std::size_t{s.vector_count} * s.rank) {
        Fail(ErrorCode::kInvalidArgument, where + "code count != vector_count*rank");
      }
      for (auto c : s.codes) {
        if (c >= s.quant.levels()) Fail(ErrorCode::kInvalidArgument, where + "code out of range");
      }
    } else if (s.data.size() > std::numeric_limits<std::uint32_t>::max()) {
      Fail(ErrorCode::kInvalidArgument, where + "data exceeds 4 GiB");
    }
  }
}

std::size_t VectorStreamByteSize(std::size_t id_len, std::size_t rank,
                                 std::size_t vector_count, int bits) {
  const std::size_t header = 1 + 1 + id_len + 2 + 4 + 1 + 8 * rank;
  return header + (vector_count * rank * static_cast<std::size_t>(bits) + 7) / 8;
}

std::size_t StreamByteSize(const Stream& s) {
  switch (s.kind) {
    case StreamKind::kTask:
    case StreamKind::kPerceptual:
      return VectorStreamByteSize(s.basis_id.size(), s.rank, s.vector_count,
                                  s.quant.bits);
    case StreamKind::kText:
      return 1 + 4 + s.data.size();
    case StreamKind::kBasis:
      return 1 + 1 + s.basis_id.size() + 4 + s.data.size();
  }
  return 0;
}

std::size_t BasisStreamByteSize(std::size_t id_len, std::size_t rank, std::size_t dim) {
  // GSCT header for a 2-D f64 tensor is 15 bytes.
  return 1 + 1 + id_len + 4 + 15 + 8 * (rank + 1) * dim;
}

std::size_t PayloadByteSize(const SemanticPayload& p) {
  std::size_t total = kPayloadHeaderBytes;
  for (const auto& s : p.streams) total += StreamByteSize(s);
  return total;
}

Bytes SerializePayload(const SemanticPayload& p) {
  ValidatePayload(p);
  ByteWriter w;
  w.raw(std::string_view("GSCP"));
  w.u8(kPayloadVersion);
  w.u8(static_cast<std::uint8_t>(p.streams.size()));
  for (const Stream& s : p.streams) {
    w.u8(static_cast<std::uint8_t>(s.kind));
    switch (s.kind) {
      case StreamKind::kTask:
      case StreamKind::kPerceptual: {
        w.u8(static_cast<std::uint8_t>(s.basis_id.size()));
        w.raw(s.basis_id);
        w.u16(s.rank);
        w.u32(s.vector_count);
        w.u8(static_cast<std::uint8_t>(s.quant.bits));
        for (std::size_t i = 0; i < s.rank; ++i) {
          w.f32(s.quant.lo[i]);
          w.f32(s.quant.hi[i]);
        }
        BitWriter bw;
        for (auto c : s.codes) bw.Put(c, s.quant.bits);
        w.raw(bw.Finish());
        break;
      }
      case StreamKind::kText:
        w.u32(static_cast<std::uint32_t>(s.data.size()));
        w.raw(s.data);
        break;
      case StreamKind::kBasis:
        w.u8(static_cast<std::uint8_t>(s.basis_id.size()));
        w.raw(s.basis_id);
        w.u32(static_cast<std::uint32_t>(s.data.size()));
        w.raw(s.data);
        break;
    }
  }
  return w.take();
}

namespace {

std::uint8_t ReadHeader(ByteReader& r) {
  constexpr std::string_view kMagic = "GSCP";
  const std::size_t have = std::min(r.remaining(), kMagic.size());
  std::string head = r.str(have);
  if (head != kMagic.substr(0, have)) {
    Fail(ErrorCode::kBadMagic, "bad payload magic at offset 0");
  }
  if (have < kMagic.size()) {
    Fail(ErrorCode::kTruncated, "payload shorter than its magic");
  }
  std::uint8_t version = r.u8();
  if (version != kPayloadVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "payload version " + std::to_string(version) + " unsupported");
  }
  return r.u8();
}

Stream ReadStream(ByteReader& r) {
  Stream s;
  std::size_t at = r.pos();
  std::uint8_t type = r.u8();
  if (type > 3) {
    Fail(ErrorCode::kParse, "unknown stream type " + std::to_string(type) +
                                " at offset " + std::to_string(at));
  }
  s.kind = static_cast<StreamKind>(type);
  switch (s.kind) {
    case StreamKind::kTask:
    case StreamKind::kPerceptual: {
      s.basis_id = r.str(r.u8());
      s.rank = r.u16();
      s.vector_count = r.u32();
      s.quant.bits = r.u8();
      if (s.rank == 0 || s.quant.bits < kMinQuantBits || s.quant.bits > kMaxQuantBits) {
        Fail(ErrorCode::kCorruptStream,
             "stream at offset " + std::to_string(at) + " has rank " +
                 std::to_string(s.rank) + ", bits " + std::to_string(s.quant.bits));
      }
      s.quant.lo.resize(s.rank);
      s.quant.hi.resize(s.rank);
      for (std::size_t i = 0; i < s.rank; ++i) {
        s.quant.lo[i] = r.f32();
        s.quant.hi[i] = r.f32();
        if (!(s.quant.hi[i] > s.quant.lo[i])) {
          Fail(ErrorCode::kCorruptStream, "empty quantizer range in stream at offset " +
                                              std::to_string(at));
        }
      }
      const std::size_t count = std::size_t{s.vector_count} * s.rank;
      const std::size_t nbits = count * static_cast<std::size_t>(s.quant.bits);
      auto packed = r.raw((nbits + 7) / 8);
      BitReader br(packed);
      s.codes.resize(count);
      for (auto& c : s.codes) c = br.Get(s.quant.bits);
      if (nbits % 8 != 0 && br.Get(static_cast<int>(8 - nbits % 8)) != 0) {
        Fail(ErrorCode::kCorruptStream, "nonzero padding bits in stream at offset " +
                                            std::to_string(at));
      }
      break;
    }
    case StreamKind::kText:
      s.data = r.str(r.u32());
      break;
    case StreamKind::kBasis:
      s.basis_id = r.str(r.u8());
      s.data = r.str(r.u32());
      break;
  }
  return s;
}

}  // namespace

SemanticPayload DeserializePayload(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  std::uint8_t count = ReadHeader(r);
  SemanticPayload p;
  for (std::uint8_t i = 0; i < count; ++i) p.streams.push_back(ReadStream(r));
  if (!r.done()) {
    Fail(ErrorCode::kParse,
         "trailing bytes after payload at offset " + std::to_string(r.pos()));
  }
  return p;
}

PartialPayload DeserializePartial(std::span<const std::uint8_t> bytes) {
  PartialPayload out;
  ByteReader r(bytes);
  std::uint8_t count = 0;
  try {
    count = ReadHeader(r);
  } catch (const Error& e) {
    out.error = e.what();
    return out;
  }
  out.parsed.assign(count, false);
  out.byte_ranges.assign(count, {0, 0});
  for (std::uint8_t i = 0; i < count; ++i) {
    std::size_t start = r.pos();
    try {
      out.payload.streams.push_back(ReadStream(r));
    } catch (const Error& e) {
      out.error = "stream " + std::to_string(i) + ": " + e.what();
      break;
    }
    out.parsed[i] = true;
    out.byte_ranges[i] = {start, r.pos()};
  }
  return out;
}

}  // namespace gsc::codec
