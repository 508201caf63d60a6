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

// Baseline "traditional" image codec: 8x8 block DCT, quality-scaled JPEG
// luminance quantization, zigzag scan, and run-length symbols packed with
// fixed Exp-Golomb codes.
//
// Stream layout: magic "GSCD" | version u8 = 1 | width u32 | height u32 |
// channels u8 | quality u8 | bit-packed planes. Per 8x8 block (raster order
// over the edge-replicated, 8-aligned plane): se(DC - previous DC), then
// (ue(run + 1), se(level)) pairs for nonzero AC coefficients, then ue(0) as
// end-of-block.

#ifndef GSC_CODEC_DCT_CODEC_HPP
#define GSC_CODEC_DCT_CODEC_HPP

#include <array>
#include <span>

#include "common/byte_io.hpp"
#include "common/image.hpp"

namespace gsc::codec {

inline constexpr std::uint8_t kDctCodecVersion = 1;

// Quantization step per natural-order coefficient for `quality` in [1, 100].
std::array<int, 64> DctQuantTable(int quality);

// Zigzag scan position -> natural (row-major) index.
const std::array<int, 64>& ZigzagOrder();

// Orthonormal 2-D DCT-II of one 8x8 block (row-major).
std::array<double, 64> ForwardDct8x8(const std::array<double, 64>& block);
std::array<double, 64> InverseDct8x8(const std::array<double, 64>& coefs);

Bytes DctEncode(const Image& img, int quality);
// Throws kBadMagic / kVersionMismatch / kTruncated / kCorruptStream.
Image DctDecode(std::span<const std::uint8_t> bytes);

}  // namespace gsc::codec

#endif  // GSC_CODEC_DCT_CODEC_HPP
