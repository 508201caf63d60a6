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


#include "phy/frame.hpp"

#include "common/error.hpp"
#include "common/rng.hpp"

namespace gsc::phy {

Bits BytesToBits(std::span<const std::uint8_t> bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (auto b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
  }
  return bits;
}

Bytes BitsToBytes(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8 != 0) {
    Fail(ErrorCode::kInvalidArgument, "bit count " + std::to_string(bits.size()) +
                                          " is not a whole number of bytes");
  }
  Bytes out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out[i / 8] = static_cast<std::uint8_t>(out[i / 8] | ((bits[i] & 1) << (7 - i % 8)));
  }
  return out;
}

CodedFrame EncodeFrame(const LdpcCode& code, std::span<const std::uint8_t> payload) {
  CodedFrame frame;
  frame.code_id = code.code_id();
  Bits msg = BytesToBits(payload);
  frame.payload_bits = msg.size();
  const std::size_t k = static_cast<std::size_t>(code.k());
  const std::size_t blocks = (msg.size() + k - 1) / k;
  frame.padding_bits = blocks * k - msg.size();
  msg.resize(blocks * k, 0);
  frame.bits.reserve(blocks * code.n());
  for (std::size_t b = 0; b < blocks; ++b) {
    Bits cw = code.Encode(std::span<const std::uint8_t>(msg).subspan(b * k, k));
    frame.bits.insert(frame.bits.end(), cw.begin(), cw.end());
  }
  return frame;
}

std::vector<double> ChannelLlrs(const CodedFrame& frame, const LdpcCode& code,
                                const ChannelConfig& config, std::uint64_t stream) {
  const std::size_t n = static_cast<std::size_t>(code.n());
  if (frame.bits.size() % n != 0) {
    Fail(ErrorCode::kDimensionMismatch, "frame is not a whole number of codewords");
  }
  const std::uint64_t master = DeriveSeed(config.seed, stream);
  std::vector<double> llrs;
  llrs.reserve(frame.bits.size());
  for (std::size_t i = 0; i * n < frame.bits.size(); ++i) {
    auto cw = std::span<const std::uint8_t>(frame.bits).subspan(i * n, n);
    Rng rng = MakeRng(master, i);
    auto rx = Awgn(Modulate(cw, config.modulation), config, rng);
    auto l = LlrFromSymbols(rx, config.snr_db, config.modulation);
    llrs.insert(llrs.end(), l.begin(), l.end());
  }
  return llrs;
}

FrameDecode DecodeFrame(const LdpcCode& code, const CodedFrame& frame,
                        std::span<const double> llrs, int max_iters) {
  const std::size_t n = static_cast<std::size_t>(code.n());
  const std::size_t k = static_cast<std::size_t>(code.k());
  if (llrs.size() != frame.bits.size() || llrs.size() % n != 0) {
    Fail(ErrorCode::kDimensionMismatch, "LLR count does not match the coded frame");
  }
  const std::size_t blocks = llrs.size() / n;
  if (frame.payload_bits + frame.padding_bits != blocks * k || frame.payload_bits % 8 != 0) {
    Fail(ErrorCode::kDimensionMismatch, "frame metadata disagrees with code " + code.code_id());
  }
  FrameDecode out;
  Bits msg;
  msg.reserve(blocks * k);
  for (std::size_t b = 0; b < blocks; ++b) {
    auto res = LdpcDecode(code, llrs.subspan(b * n, n), max_iters);
    out.codeword_ok.push_back(res.converged);
    if (!res.converged) ++out.failed_codewords;
    out.iterations += res.iterations;
    msg.insert(msg.end(), res.message.begin(), res.message.end());
  }
  msg.resize(frame.payload_bits);
  out.payload = BitsToBytes(msg);
  return out;
}

}  // namespace gsc::phy
