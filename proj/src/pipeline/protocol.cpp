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


#include "pipeline/protocol.hpp"

#include <cstring>
#include <string>

#include "common/error.hpp"

namespace gsc::pipeline {

namespace {

constexpr char kMagic[4] = {'G', 'S', 'C', 'F'};

[[noreturn]] void ProtocolError(std::size_t offset, const std::string& what) {
  Fail(ErrorCode::kProtocol,
       "adapter protocol: " + what + " at offset " + std::to_string(offset));
}

std::uint32_t LoadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void CheckPrefix(std::span<const std::uint8_t> bytes) {
  const std::size_t n = std::min<std::size_t>(bytes.size(), 4);
  if (std::memcmp(bytes.data(), kMagic, n) != 0) ProtocolError(0, "bad frame magic");
  if (bytes.size() < 8) ProtocolError(bytes.size(), "truncated frame prefix");
  const std::uint32_t total = LoadU32(bytes.data() + 4);
  if (total < kFramePrefixBytes || total > kMaxFrameBytes) {
    ProtocolError(4, "frame length " + std::to_string(total) + " out of range");
  }
}

}  // namespace

Bytes EncodeMessage(const Message& msg) {
  nlohmann::json header = msg.header;
  header["tensor_count"] = msg.tensors.size();
  const std::string text = header.dump();
  ByteWriter body;
  for (const auto& t : msg.tensors) AppendGsct(t, body);
  const std::size_t total = kFramePrefixBytes + text.size() + body.size();
  if (total > kMaxFrameBytes) Fail(ErrorCode::kProtocol, "adapter protocol: frame too large");
  ByteWriter w;
  w.raw(std::string_view(kMagic, 4));
  w.u32(static_cast<std::uint32_t>(total));
  w.u32(static_cast<std::uint32_t>(text.size()));
  w.raw(text);
  w.raw(body.bytes());
  return w.take();
}

Message DecodeMessage(std::span<const std::uint8_t> frame) {
  if (frame.empty()) ProtocolError(0, "empty frame");
  CheckPrefix(frame);
  const std::uint32_t total = LoadU32(frame.data() + 4);
  if (frame.size() < total) {
    ProtocolError(frame.size(), "frame truncated (declared " + std::to_string(total) + " bytes)");
  }
  if (frame.size() > total) ProtocolError(total, "trailing bytes after frame");
  if (frame.size() < kFramePrefixBytes) ProtocolError(8, "truncated header length");
  const std::uint32_t header_len = LoadU32(frame.data() + 8);
  if (header_len > total - kFramePrefixBytes) {
    ProtocolError(8, "header length " + std::to_string(header_len) + " exceeds frame");
  }
  auto header_bytes = frame.subspan(kFramePrefixBytes, header_len);
  Message msg;
  msg.header = nlohmann::json::parse(header_bytes.begin(), header_bytes.end(), nullptr, false);
  if (msg.header.is_discarded() || !msg.header.is_object()) {
    ProtocolError(kFramePrefixBytes, "header is not a JSON object");
  }
  const auto& h = msg.header;
  if (!h.contains("op") || !h["op"].is_string()) {
    ProtocolError(kFramePrefixBytes, "header lacks a string 'op'");
  }
  if (!h.contains("request_id") || !h["request_id"].is_number_unsigned()) {
    ProtocolError(kFramePrefixBytes, "header lacks an unsigned 'request_id'");
  }
  if (!h.contains("tensor_count") || !h["tensor_count"].is_number_unsigned()) {
    ProtocolError(kFramePrefixBytes, "header lacks an unsigned 'tensor_count'");
  }
  const auto count = h["tensor_count"].get<std::uint64_t>();
  const std::size_t body_start = kFramePrefixBytes + header_len;
  ByteReader r(frame.subspan(body_start));
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t at = body_start + r.pos();
    try {
      msg.tensors.push_back(ReadGsct(r));
    } catch (const Error& e) {
      ProtocolError(at, "tensor " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!r.done()) ProtocolError(body_start + r.pos(), "bytes left after last tensor");
  return msg;
}

Bytes ReadFrame(const std::function<void(std::uint8_t*, std::size_t)>& read_exact) {
  Bytes frame(8);
  read_exact(frame.data(), 8);
  CheckPrefix(frame);
  const std::uint32_t total = LoadU32(frame.data() + 4);
  frame.resize(total);
  read_exact(frame.data() + 8, total - 8);
  return frame;
}

}  // namespace gsc::pipeline
