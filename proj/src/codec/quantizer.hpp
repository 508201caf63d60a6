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

#ifndef GSC_CODEC_QUANTIZER_HPP
#define GSC_CODEC_QUANTIZER_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace gsc::codec {

inline constexpr int kMinQuantBits = 1;
inline constexpr int kMaxQuantBits = 16;

// Uniform mid-rise quantizer with 2^bits cells per component over [lo, hi].
// Ranges are float because they travel as f32 in payload headers.
struct QuantSpec {
  int bits = 8;
  std::vector<float> lo;
  std::vector<float> hi;

  std::uint32_t levels() const { return 1u << bits; }
  std::size_t components() const { return lo.size(); }
  double step(std::size_t i) const {
    return (static_cast<double>(hi[i]) - lo[i]) / levels();
  }

  bool operator==(const QuantSpec&) const = default;
};

// Throws kInvalidArgument for bits outside [1,16], mismatched range lengths,
// or hi <= lo in any component.
void ValidateQuantSpec(const QuantSpec& spec);
QuantSpec MakeQuantSpec(int bits, std::vector<float> lo, std::vector<float> hi);

// Per-component [min, max] of `vectors`, widened outward to float and
// expanded to a unit-width interval where the data is constant.
QuantSpec FitQuantSpec(int bits, std::span<const std::vector<double>> vectors);

std::vector<std::uint32_t> Quantize(const QuantSpec& spec, std::span<const double> v);
std::vector<double> Dequantize(const QuantSpec& spec,
                               std::span<const std::uint32_t> codes);

}  // namespace gsc::codec

#endif  // GSC_CODEC_QUANTIZER_HPP
