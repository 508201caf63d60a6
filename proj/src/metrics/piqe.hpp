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


// Perception-based Image Quality Evaluator: a no-reference score in [0, 100],
// lower is better. The image is split into 16x16 blocks of mean-subtracted
// contrast-normalized (MSCN) coefficients; spatially active blocks are scored
// for noticeable distortion (flat edge segments) and for Gaussian noise
// (center/surround deviation mismatch). Block bookkeeping mirrors the widely
// used reference implementation so scores agree with it.

#ifndef GSC_METRICS_PIQE_HPP
#define GSC_METRICS_PIQE_HPP

#include "common/image.hpp"

namespace gsc::metrics {

struct PiqeConstants {
  static constexpr int kBlockSize = 16;
  static constexpr double kActivityThreshold = 0.1;  // MSCN block variance
  static constexpr double kImpairedThreshold = 0.1;  // edge segment std dev
  static constexpr int kSegmentLength = 6;
  static constexpr int kGaussianTaps = 7;
  static constexpr double kGaussianSigma = 7.0 / 6.0;
  static constexpr double kStabilizer = 1.0;  // added to both pooling terms
  static constexpr int kMinSide = 32;
};

struct PiqeResult {
  double score = 100.0;
  int active_blocks = 0;
  int distorted_blocks = 0;  // noticeable artifacts
  int noisy_blocks = 0;
};

// Color input is converted to luma first. A uniform image scores 100.
// Throws kInvalidArgument below 32x32.
PiqeResult PiqeDetailed(const Image& image);
double Piqe(const Image& image);

}  // namespace gsc::metrics

#endif  // GSC_METRICS_PIQE_HPP
