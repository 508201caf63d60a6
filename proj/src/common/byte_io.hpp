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

// Little-endian byte streams and MSB-first bit packing shared by every wire
// format in the project (GSCP payloads, GSCT tensors, GSCD images, adapter
// frames).

#ifndef GSC_COMMON_BYTE_IO_HPP
#define GSC_COMMON_BYTE_IO_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"

namespace gsc {

using Bytes = std::vector<std::uint8_t>;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { PutLe(v); }
  void u32(std::uint32_t v) { PutLe(v); }
  void u64(std::uint64_t v) { PutLe(v); }
  void f32(float v) { PutLe(std::bit_cast<std::uint32_t>(v)); }
  void f64(double v) { PutLe(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }
  void raw(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

  std::size_t size() const { return out_.size(); }
  Bytes& bytes() { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  template <typename T>
  void PutLe(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  Bytes out_;
};

// Bounds-checked reader. Every short read throws kTruncated naming the offset
// at which the missing field starts.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return GetLe<std::uint8_t>(); }
  std::uint16_t u16() { return GetLe<std::uint16_t>(); }
  std::uint32_t u32() { return GetLe<std::uint32_t>(); }
  std::uint64_t u64() { return GetLe<std::uint64_t>(); }
  float f32() { return std::bit_cast<float>(GetLe<std::uint32_t>()); }
  double f64() { return std::bit_cast<double>(GetLe<std::uint64_t>()); }

  std::span<const std::uint8_t> raw(std::size_t n) {
    Require(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::string str(std::size_t n) {
    auto s = raw(n);
    return std::string(s.begin(), s.end());
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void Require(std::size_t n) const {
    if (n > data_.size() - pos_) {
      Fail(ErrorCode::kTruncated,
           "truncated input: need " + std::to_string(n) + " bytes at offset " +
               std::to_string(pos_) + ", have " +
               std::to_string(data_.size() - pos_));
    }
  }

  template <typename T>
  T GetLe() {
    Require(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<T>(data_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// MSB-first bit packer; Finish() zero-pads to a byte boundary.
class BitWriter {
 public:
  void Put(std::uint32_t value, int bits) {
    for (int i = bits - 1; i >= 0; --i) {
      PutBit((value >> i) & 1u);
    }
  }
  void PutBit(std::uint32_t bit) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (bit & 1u));
    if (++fill_ == 8) {
      out_.push_back(acc_);
      acc_ = 0;
      fill_ = 0;
    }
  }
  std::size_t bit_count() const { return out_.size() * 8 + fill_; }
  Bytes Finish() {
    if (fill_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - fill_)));
      acc_ = 0;
      fill_ = 0;
    }
    return std::move(out_);
  }

 private:
  Bytes out_;
  std::uint8_t acc_ = 0;
  int fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint32_t Get(int bits) {
    std::uint32_t v = 0;
    for (int i = 0; i < bits; ++i) v = (v << 1) | GetBit();
    return v;
  }
  std::uint32_t GetBit() {
    if (pos_ >= data_.size() * 8) {
      Fail(ErrorCode::kTruncated, "bit stream exhausted at bit " +
                                      std::to_string(pos_));
    }
    std::uint32_t bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }
  std::size_t bit_pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace gsc

#endif  // GSC_COMMON_BYTE_IO_HPP
