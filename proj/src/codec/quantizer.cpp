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

#include "codec/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "common/error.hpp"

namespace gsc::codec {

void ValidateQuantSpec(const QuantSpec& spec) {
  if (spec.bits < kMinQuantBits || spec.bits > kMaxQuantBits) {
    Fail(ErrorCode::kInvalidArgument,
         "quantizer bits " + std::to_string(spec.bits) + " outside [1,16]");
  }
  if (spec.lo.size() != spec.hi.size()) {
    Fail(ErrorCode::kInvalidArgument, "quantizer lo/hi length mismatch");
  }
  for (std::size_t i = 0; i < spec.lo.size(); ++i) {
    if (!(spec.hi[i] > spec.lo[i]) || !std::isfinite(spec.lo[i]) ||
        !std::isfinite(spec.hi[i])) {
      Fail(ErrorCode::kInvalidArgument,
           "quantizer range of component " + std::to_string(i) + " is empty");
    }
  }
}

QuantSpec MakeQuantSpec(int bits, std::vector<float> lo, std::vector<float> hi) {
  QuantSpec spec{bits, std::move(lo), std::move(hi)};
  ValidateQuantSpec(spec);
  return spec;
}

QuantSpec FitQuantSpec(int bits, std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) {
    Fail(ErrorCode::kInvalidArgument, "fit quantizer: no vectors");
  }
  const std::size_t k = vectors[0].size();
  std::vector<double> mn(k, std::numeric_limits<double>::infinity());
  std::vector<double> mx(k, -std::numeric_limits<double>::infinity());
  for (const auto& v : vectors) {
    if (v.size() != k) Fail(ErrorCode::kDimensionMismatch, "fit quantizer: ragged vectors");
    for (std::size_t i = 0; i < k; ++i) {
      mn[i] = std::min(mn[i], v[i]);
      mx[i] = std::max(mx[i], v[i]);
    }
  }
  std::vector<float> lo(k), hi(k);
  constexpr float kInf = std::numeric_limits<float>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    float l = static_cast<float>(mn[i]);
    if (l > mn[i]) l = std::nextafter(l, -kInf);
    float h = static_cast<float>(mx[i]);
    if (h < mx[i]) h = std::nextafter(h, kInf);
    if (!(h > l)) {
      l -= 0.5f;
      h += 0.5f;
    }
    lo[i] = l;
    hi[i] = h;
  }
  return MakeQuantSpec(bits, std::move(lo), std::move(hi));
}

std::vector<std::uint32_t> Quantize(const QuantSpec& spec, std::span<const double> v) {
  ValidateQuantSpec(spec);
  if (v.size() != spec.components()) {
    Fail(ErrorCode::kDimensionMismatch, "quantize: vector length " +
                                            std::to_string(v.size()) + " != " +
                                            std::to_string(spec.components()));
  }
  const auto top = static_cast<double>(spec.levels() - 1);
  std::vector<std::uint32_t> codes(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double cell = std::floor((v[i] - spec.lo[i]) / spec.step(i));
    if (std::isnan(cell)) cell = 0;
    codes[i] = static_cast<std::uint32_t>(std::clamp(cell, 0.0, top));
  }
  return codes;
}

std::vector<double> Dequantize(const QuantSpec& spec,
                               std::span<const std::uint32_t> codes) {
  ValidateQuantSpec(spec);
  if (codes.size() != spec.components()) {
    Fail(ErrorCode::kDimensionMismatch, "dequantize: code count mismatch");
  }
  std::vector<double> v(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] >= spec.levels()) {
      Fail(ErrorCode::kInvalidArgument, "dequantize: code out of range");
    }
    v[i] = spec.lo[i] + (codes[i] + 0.5) * spec.step(i);
  }
  return v;
}

}  // namespace gsc::codec
