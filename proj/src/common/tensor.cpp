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

#include "common/tensor.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace gsc {

std::size_t Tensor::element_count() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

std::size_t Tensor::cols() const { return dims.empty() ? 1 : dims.back(); }

std::size_t Tensor::rows() const {
  std::size_t c = cols();
  return c == 0 ? 0 : element_count() / c;
}

Tensor MakeTensor(DType dtype, std::vector<std::uint32_t> dims,
                  std::vector<double> values) {
  Tensor t{dtype, std::move(dims), std::move(values)};
  if (t.element_count() != t.values.size()) {
    Fail(ErrorCode::kDimensionMismatch,
         "tensor dims describe " + std::to_string(t.element_count()) +
             " elements but " + std::to_string(t.values.size()) + " given");
  }
  return t;
}

void AppendGsct(const Tensor& t, ByteWriter& w) {
  if (t.element_count() != t.values.size()) {
    Fail(ErrorCode::kDimensionMismatch, "tensor dims do not match data");
  }
  if (t.dims.size() > 255) {
    Fail(ErrorCode::kInvalidArgument, "tensor rank exceeds 255");
  }
  w.raw(std::string_view("GSCT"));
  w.u8(kGsctVersion);
  w.u8(static_cast<std::uint8_t>(t.dtype));
  w.u8(static_cast<std::uint8_t>(t.dims.size()));
  for (auto d : t.dims) w.u32(d);
  switch (t.dtype) {
    case DType::kU8:
      for (double v : t.values) {
        w.u8(static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)));
      }
      break;
    case DType::kF32:
      for (double v : t.values) w.f32(static_cast<float>(v));
      break;
    case DType::kF64:
      for (double v : t.values) w.f64(v);
      break;
  }
}

Bytes EncodeGsct(const Tensor& t) {
  ByteWriter w;
  AppendGsct(t, w);
  return w.take();
}

Tensor ReadGsct(ByteReader& r) {
  std::size_t start = r.pos();
  if (r.str(4) != "GSCT") {
    Fail(ErrorCode::kBadMagic,
         "bad GSCT magic at offset " + std::to_string(start));
  }
  std::uint8_t version = r.u8();
  if (version != kGsctVersion) {
    Fail(ErrorCode::kVersionMismatch,
         "unsupported GSCT version " + std::to_string(version));
  }
  std::uint8_t dtype = r.u8();
  if (dtype > 2) {
    Fail(ErrorCode::kParse, "unknown GSCT dtype " + std::to_string(dtype));
  }
  Tensor t;
  t.dtype = static_cast<DType>(dtype);
  std::uint8_t ndim = r.u8();
  t.dims.resize(ndim);
  std::size_t count = 1;
  for (auto& d : t.dims) {
    d = r.u32();
    if (d != 0 && count > SIZE_MAX / d) {
      Fail(ErrorCode::kParse, "GSCT dims overflow at offset " + std::to_string(r.pos()));
    }
    count *= d;
  }
  std::size_t width = t.dtype == DType::kU8 ? 1 : t.dtype == DType::kF32 ? 4 : 8;
  if (count > r.remaining() / width) {
    Fail(ErrorCode::kTruncated, "GSCT data section truncated at offset " +
                                    std::to_string(r.pos()));
  }
  t.values.resize(count);
  for (auto& v : t.values) {
    switch (t.dtype) {
      case DType::kU8: v = r.u8(); break;
      case DType::kF32: v = r.f32(); break;
      case DType::kF64: v = r.f64(); break;
    }
  }
  return t;
}

Tensor DecodeGsct(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Tensor t = ReadGsct(r);
  if (!r.done()) {
    Fail(ErrorCode::kParse, "trailing bytes after GSCT blob at offset " +
                                std::to_string(r.pos()));
  }
  return t;
}

}  // namespace gsc
