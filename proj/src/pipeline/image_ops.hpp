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


// Single-channel image operations behind the builtin adapters.

#ifndef GSC_PIPELINE_IMAGE_OPS_HPP
#define GSC_PIPELINE_IMAGE_OPS_HPP

#include "common/image.hpp"

namespace gsc::pipeline {

// Bilinear resampling with pixel-center alignment and edge clamping.
Image ResizeBilinear(const Image& img, int width, int height);

// Factor-4 bilinear reduction to ceil(w/4) x ceil(h/4).
Image Downsample4(const Image& img);

// 3x3 binomial blur, edges clamped.
Image Blur3(const Image& img);

// img + amount * (img - Blur3(img)).
Image Unsharp(const Image& img, double amount = 0.5);

// Gradient magnitude of the 3x3 Sobel pair, edges clamped.
Image SobelMagnitude(const Image& img);

Image Clamp255(Image img);

// Iterative back-projection: nudges `img` until Downsample4(img) matches
// `guide`, adding the enlarged mismatch on each pass. Each pass clamps to
// [0, 255].
Image BackProject(Image img, const Image& guide, int passes);

}  // namespace gsc::pipeline

#endif  // GSC_PIPELINE_IMAGE_OPS_HPP
