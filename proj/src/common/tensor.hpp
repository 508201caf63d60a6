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

#ifndef GSC_COMMON_TENSOR_HPP
#define GSC_COMMON_TENSOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "common/byte_io.hpp"

namespace gsc {

enum class DType : std::uint8_t { kU8 = 0, kF32 = 1, kF64 = 2 };

// Dense row-major tensor. Values are held as doubles regardless of dtype; the
// dtype governs the on-wire representation (u8 and f32 values round-trip
// exactly through double).
struct Tensor {
  DType dtype = DType::kF32;
  std::vector<std::uint32_t> dims;
  std::vector<double> values;

  std::size_t element_count() const;
  // Rows/cols of the 2-D view used for vector streams: cols = last dim, rows =
  // product of the leading dims.
  std::size_t rows() const;
  std::size_t cols() const;

  bool operator==(const Tensor&) const = default;
};

Tensor MakeTensor(DType dtype, std::vector<std::uint32_t> dims,
                  std::vector<double> values);

// "GSCT" blob: magic, version u8=1, dtype u8, ndim u8, dims u32 each,
// row-major little-endian data.
inline constexpr std::uint8_t kGsctVersion = 1;

void AppendGsct(const Tensor& t, ByteWriter& w);
Bytes EncodeGsct(const Tensor& t);
Tensor ReadGsct(ByteReader& r);
Tensor DecodeGsct(std::span<const std::uint8_t> bytes);

}  // namespace gsc

#endif  // GSC_COMMON_TENSOR_HPP
