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


// Adapter wire protocol.
//
//   magic "GSCF" | u32 LE total frame length (all bytes, magic included) |
//   u32 LE header length | UTF-8 JSON header | tensor_count GSCT blobs
//
// The header always carries `op`, `request_id` and `tensor_count`; ops are
// hello, extract, generate, embed, shutdown, and `error` for failed requests.
// Decoding is prefix-safe: a frame cut anywhere is rejected, never misread.

#ifndef GSC_PIPELINE_PROTOCOL_HPP
#define GSC_PIPELINE_PROTOCOL_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "common/byte_io.hpp"
#include "common/tensor.hpp"
#include "json.hpp"

namespace gsc::pipeline {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::size_t kFramePrefixBytes = 12;
inline constexpr std::uint32_t kMaxFrameBytes = 1u << 30;

struct Message {
  nlohmann::json header = nlohmann::json::object();
  std::vector<Tensor> tensors;
};

// Fills in tensor_count from `msg.tensors`.
Bytes EncodeMessage(const Message& msg);

// Throws kProtocol naming the byte offset of the first problem.
Message DecodeMessage(std::span<const std::uint8_t> frame);

// Reads one frame using `read_exact(buf, n)`, which must fill n bytes or
// throw. Returns the raw frame; validates magic and length only.
Bytes ReadFrame(const std::function<void(std::uint8_t*, std::size_t)>& read_exact);

}  // namespace gsc::pipeline

#endif  // GSC_PIPELINE_PROTOCOL_HPP
