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

#ifndef GSC_COMMON_IMAGE_HPP
#define GSC_COMMON_IMAGE_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "common/byte_io.hpp"

namespace gsc {

// Interleaved intensity image, values nominally in [0, 255].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h, int c = 1, double fill = 0.0)
      : width(w), height(h), channels(c),
        pixels(static_cast<std::size_t>(w) * h * c, fill) {}

  double& at(int x, int y, int c = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  // Clamp-to-edge read.
  double clamped(int x, int y, int c = 0) const;

  bool empty() const { return pixels.empty(); }
  bool operator==(const Image&) const = default;
};

// BT.601 luma for 3-channel input; copies single-channel input.
Image ToGray(const Image& img);
// Round and clamp every sample to an integer in [0, 255].
Image Quantize8(const Image& img);

// Binary PNM: P5 (gray) and P6 (RGB), maxval up to 65535 (rescaled to 0..255).
Image DecodePnm(std::span<const std::uint8_t> bytes);
Bytes EncodePnm(const Image& img);
Image ReadPnm(const std::filesystem::path& path);
void WritePnm(const std::filesystem::path& path, const Image& img);

Bytes ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace gsc

#endif  // GSC_COMMON_IMAGE_HPP
