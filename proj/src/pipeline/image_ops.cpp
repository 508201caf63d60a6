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


#include "pipeline/image_ops.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace gsc::pipeline {

namespace {

void RequireGray(const Image& img) {
  if (img.empty() || img.channels != 1) {
    Fail(ErrorCode::kInvalidArgument, "expected a nonempty single-channel image");
  }
}

}  // namespace

Image ResizeBilinear(const Image& img, int width, int height) {
  RequireGray(img);
  if (width < 1 || height < 1) Fail(ErrorCode::kInvalidArgument, "resize to empty image");
  Image out(width, height);
  const double sx = static_cast<double>(img.width) / width;
  const double sy = static_cast<double>(img.height) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - x0;
      const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
      const double bottom = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
      out.at(x, y) = top * (1 - wy) + bottom * wy;
    }
  }
  return out;
}

Image Downsample4(const Image& img) {
  return ResizeBilinear(img, (img.width + 3) / 4, (img.height + 3) / 4);
}

Image Blur3(const Image& img) {
  RequireGray(img);
  Image tmp(img.width, img.height), out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      tmp.at(x, y) = 0.25 * img.clamped(x - 1, y) + 0.5 * img.at(x, y) + 0.25 * img.clamped(x + 1, y);
    }
  }
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.at(x, y) = 0.25 * tmp.clamped(x, y - 1) + 0.5 * tmp.at(x, y) + 0.25 * tmp.clamped(x, y + 1);
    }
  }
  return out;
}

Image Unsharp(const Image& img, double amount) {
  Image blur = Blur3(img);
  Image out = img;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] += amount * (img.pixels[i] - blur.pixels[i]);
  }
  return out;
}

Image SobelMagnitude(const Image& img) {
  RequireGray(img);
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      auto p = [&](int dx, int dy) { return img.clamped(x + dx, y + dy); };
      const double gx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

Image Clamp255(Image img) {
  for (auto& v : img.pixels) v = std::clamp(v, 0.0, 255.0);
  return img;
}

Image BackProject(Image img, const Image& guide, int passes) {
  for (int p = 0; p < passes; ++p) {
    Image diff = Downsample4(img);
    if (diff.width != guide.width || diff.height != guide.height) {
      Fail(ErrorCode::kDimensionMismatch, "back-projection guide has the wrong size");
    }
    for (std::size_t i = 0; i < diff.pixels.size(); ++i) diff.pixels[i] = guide.pixels[i] - diff.pixels[i];
    Image up = ResizeBilinear(diff, img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] += up.pixels[i];
    img = Clamp255(std::move(img));
  }
  return img;
}

}  // namespace gsc::pipeline
