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

// SemanticPayload and its "GSCP" wire format.
//
// All integers little-endian:
//
//   magic "GSCP" | version u8 = 1 | stream_count u8 | streams...
//
//   task (0) / perceptual (1) stream:
//     type u8 | id_len u8 | basis_id | rank u16 | vector_count u32 | bits u8 |
//     (lo f32, hi f32) per component | codes, `bits` each, MSB-first,
//     zero-padded to a byte boundary
//   text (2) stream:
//     type u8 | byte_length u32 | raw bytes
//   basis (3) stream (self-contained basis mode only):
//     type u8 | id_len u8 | basis_id | byte_length u32 | GSCT f64 [rank+1, d]
//     (row 0 = mean, rows 1.. = components)

#ifndef GSC_CODEC_PAYLOAD_HPP
#define GSC_CODEC_PAYLOAD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codec/pca.hpp"
#include "codec/quantizer.hpp"
#include "common/byte_io.hpp"

namespace gsc::codec {

inline constexpr std::uint8_t kPayloadVersion = 1;
inline constexpr std::size_t kPayloadHeaderBytes = 6;

enum class StreamKind : std::uint8_t {
  kTask = 0,
  kPerceptual = 1,
  kText = 2,
  kBasis = 3,
};

const char* StreamKindName(StreamKind kind);

struct Stream {
  StreamKind kind = StreamKind::kTask;
  // Vector and basis streams.
  std::string basis_id;
  // Vector streams: vector_count * rank codes, row-major.
  std::uint16_t rank = 0;
  std::uint32_t vector_count = 0;
  QuantSpec quant;
  std::vector<std::uint32_t> codes;
  // Text streams: UTF-8 bytes. Basis streams: the GSCT blob.
  std::string data;

  bool is_vector() const {
    return kind == StreamKind::kTask || kind == StreamKind::kPerceptual;
  }
  bool operator==(const Stream&) const = default;
};

struct SemanticPayload {
  std::vector<Stream> streams;

  bool operator==(const SemanticPayload&) const = default;
};

// Quantizes the k-vectors and packs them as one task or perceptual stream.
Stream MakeVectorStream(StreamKind kind, std::string basis_id,
                        std::span<const std::vector<double>> vectors,
                        const QuantSpec& quant);
Stream MakeTextStream(std::string utf8);
Stream MakeBasisStream(const PcaBasis& basis);

// Dequantized vectors of a vector stream.
std::vector<std::vector<double>> StreamVectors(const Stream& s);
PcaBasis StreamBasis(const Stream& s);

// Throws kInvalidArgument when a stream breaks its invariants.
void ValidatePayload(const SemanticPayload& p);

Bytes SerializePayload(const SemanticPayload& p);
// Throws kTruncated, kBadMagic, kVersionMismatch (distinct codes), or kParse /
// kCorruptStream for structurally invalid content.
SemanticPayload DeserializePayload(std::span<const std::uint8_t> bytes);

std::size_t StreamByteSize(const Stream& s);
std::size_t VectorStreamByteSize(std::size_t id_len, std::size_t rank,
                                 std::size_t vector_count, int bits);
// Size of the basis stream MakeBasisStream() builds for a rank-k, d-dim basis.
std::size_t BasisStreamByteSize(std::size_t id_len, std::size_t rank, std::size_t dim);
std::size_t PayloadByteSize(const SemanticPayload& p);

// Parses streams in order and stops at the first malformed one. `parsed`
// holds one flag per stream announced in the header; streams from the first
// failure on are flagged false and omitted from `payload`.
struct PartialPayload {
  SemanticPayload payload;
  std::vector<bool> parsed;
  std::vector<std::pair<std::size_t, std::size_t>> byte_ranges;
  std::optional<std::string> error;
};
PartialPayload DeserializePartial(std::span<const std::uint8_t> bytes);

}  // namespace gsc::codec

#endif  // GSC_CODEC_PAYLOAD_HPP
