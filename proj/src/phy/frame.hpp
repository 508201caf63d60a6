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


// Framing of payload bytes onto LDPC codewords and their passage through the
// channel. Bytes become bits MSB-first; the bit stream is zero-padded to a
// whole number of k-bit messages and the padding length travels here, not
// in-band.

#ifndef GSC_PHY_FRAME_HPP
#define GSC_PHY_FRAME_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "common/byte_io.hpp"
#include "phy/channel.hpp"
#include "phy/ldpc.hpp"

namespace gsc::phy {

struct CodedFrame {
  std::string code_id;
  std::size_t payload_bits = 0;
  std::size_t padding_bits = 0;
  Bits bits;  // concatenated codewords

  std::size_t codeword_count(const LdpcCode& code) const {
    return bits.size() / static_cast<std::size_t>(code.n());
  }
};

Bits BytesToBits(std::span<const std::uint8_t> bytes);
// Throws kInvalidArgument unless bits.size() is a multiple of 8.
Bytes BitsToBytes(std::span<const std::uint8_t> bits);

CodedFrame EncodeFrame(const LdpcCode& code, std::span<const std::uint8_t> payload);

// Modulates, adds noise and demaps every codeword of `frame`. Codeword i
// draws its noise from MakeRng(DeriveSeed(config.seed, stream), i).
std::vector<double> ChannelLlrs(const CodedFrame& frame, const LdpcCode& code,
                                const ChannelConfig& config, std::uint64_t stream);

struct FrameDecode {
  Bytes payload;
  std::vector<bool> codeword_ok;  // syndrome satisfied after decoding
  std::size_t failed_codewords = 0;
  long long iterations = 0;  // summed over codewords
};

// Throws kDimensionMismatch when the LLR count or frame metadata disagree
// with the code.
FrameDecode DecodeFrame(const LdpcCode& code, const CodedFrame& frame,
                        std::span<const double> llrs,
                        int max_iters = kDefaultMaxIterations);

}  // namespace gsc::phy

#endif  // GSC_PHY_FRAME_HPP
