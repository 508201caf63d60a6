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


#include "metrics/piqe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "common/error.hpp"

namespace gsc::metrics {

namespace {

using C = PiqeConstants;

// Row-major plane.
struct Plane {
  int w = 0;
  int h = 0;
  std::vector<double> v;
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
};

// Mirror index with the edge sample repeated (numpy "symmetric").
int Symmetric(int i, int n) {
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
  return i;
}

Plane GaussianBlur(const Plane& in) {
  constexpr int r = C::kGaussianTaps / 2;
  std::array<double, C::kGaussianTaps> k{};
  double sum = 0.0;
  for (int i = 0; i < C::kGaussianTaps; ++i) {
    const double t = i - r;
    k[i] = std::exp(-t * t / (2 * C::kGaussianSigma * C::kGaussianSigma));
    sum += k[i];
  }
  for (auto& x : k) x /= sum;

  Plane tmp{in.w, in.h, std::vector<double>(in.v.size())};
  Plane out = tmp;
  for (int y = 0; y < in.h; ++y) {
    for (int x = 0; x < in.w; ++x) {
      double s = 0.0;
      for (int t = -r; t <= r; ++t) s += k[t + r] * in.at(std::clamp(x + t, 0, in.w - 1), y);
      tmp.at(x, y) = s;
    }
  }
  for (int y = 0; y < in.h; ++y) {
    for (int x = 0; x < in.w; ++x) {
      double s = 0.0;
      for (int t = -r; t <= r; ++t) s += k[t + r] * tmp.at(x, std::clamp(y + t, 0, in.h - 1));
      out.at(x, y) = s;
    }
  }
  return out;
}

// Sample variance (n - 1 denominator).
template <typename It>
double SampleVariance(It begin, It end) {
  const double n = static_cast<double>(end - begin);
  double mean = 0.0;
  for (It i = begin; i != end; ++i) mean += *i;
  mean /= n;
  double ss = 0.0;
  for (It i = begin; i != end; ++i) ss += (*i - mean) * (*i - mean);
  return ss / (n - 1);
}

using Block = std::array<std::array<double, C::kBlockSize>, C::kBlockSize>;  // [row][col]

bool NoticeablyDistorted(const Block& b) {
  constexpr int n = C::kBlockSize;
  std::array<std::array<double, n>, 4> edges{};
  for (int t = 0; t < n; ++t) {
    edges[0][t] = b[0][t];
    edges[1][t] = b[t][n - 1];
    edges[2][t] = b[n - 1][t];
    edges[3][t] = b[t][0];
  }
  for (int s = 0; s + C::kSegmentLength <= n; ++s) {
    for (const auto& e : edges) {
      double sd = std::sqrt(SampleVariance(e.begin() + s, e.begin() + s + C::kSegmentLength));
      if (sd < C::kImpairedThreshold) return true;
    }
  }
  return false;
}

// Ratio of the std dev of the two center columns to that of the surround.
// The surround follows the reference implementation exactly: it drops
// column 7 and then column 9 (column 8 of the already-reduced block), so
// column 8 stays in the surround.
double CenterSurroundRatio(const Block& b) {
  constexpr int n = C::kBlockSize;
  std::vector<double> center, surround;
  for (int r = 0; r < n; ++r) {
    center.push_back(b[r][n / 2 - 1]);
  }
  for (int r = 0; r < n; ++r) {
    center.push_back(b[r][n / 2]);
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c != n / 2 - 1 && c != n / 2 + 1) surround.push_back(b[r][c]);
    }
  }
  const double ratio = std::sqrt(SampleVariance(center.begin(), center.end())) /
                       std::sqrt(SampleVariance(surround.begin(), surround.end()));
  return std::isnan(ratio) ? 0.0 : ratio;
}

}  // namespace

PiqeResult PiqeDetailed(const Image& image) {
  if (image.width < C::kMinSide || image.height < C::kMinSide) {
    Fail(ErrorCode::kInvalidArgument, "piqe: image must be at least 32x32, got " +
                                          std::to_string(image.width) + "x" +
                                          std::to_string(image.height));
  }
  const Image gray = image.channels == 1 ? image : ToGray(image);
  constexpr int bs = C::kBlockSize;
  const int w = (gray.width + bs - 1) / bs * bs;
  const int h = (gray.height + bs - 1) / bs * bs;

  Plane img{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
  double peak = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = gray.at(Symmetric(x, gray.width), Symmetric(y, gray.height));
      if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "piqe: non-finite pixel");
      img.at(x, y) = v;
      peak = std::max(peak, v);
    }
  }
  PiqeResult res;
  if (peak <= 0.0) return res;  // uniform black
  for (auto& v : img.v) v = std::round(255.0 * (v / peak));

  Plane sq = img;
  for (auto& v : sq.v) v *= v;
  const Plane mu = GaussianBlur(img);
  const Plane mu_sq = GaussianBlur(sq);
  Plane mscn = img;
  for (std::size_t i = 0; i < mscn.v.size(); ++i) {
    const double sigma = std::sqrt(std::abs(mu_sq.v[i] - mu.v[i] * mu.v[i]));
    mscn.v[i] = (img.v[i] - mu.v[i]) / (sigma + 1.0);
  }

  double distortion = 0.0;
  for (int by = 0; by < h; by += bs) {
    for (int bx = 0; bx < w; bx += bs) {
      Block b{};
      std::vector<double> flat;
      flat.reserve(bs * bs);
      for (int r = 0; r < bs; ++r) {
        for (int c = 0; c < bs; ++c) {
          b[r][c] = mscn.at(bx + c, by + r);
          flat.push_back(b[r][c]);
        }
      }
      const double var = SampleVariance(flat.begin(), flat.end());
      if (!(var > C::kActivityThreshold)) continue;
      ++res.active_blocks;
      if (NoticeablyDistorted(b)) {
        ++res.distorted_blocks;
        distortion += 1.0 - var;
      }
      const double sigma = std::sqrt(var);
      const double ratio = CenterSurroundRatio(b);
      const double beta = std::abs(sigma - ratio) / std::max(sigma, ratio);
      if (sigma > 2.0 * beta) {
        ++res.noisy_blocks;
        distortion += var;
      }
    }
  }
  res.score = (distortion + C::kStabilizer) / (C::kStabilizer + res.active_blocks) * 100.0;
  res.score = std::clamp(res.score, 0.0, 100.0);
  return res;
}

double Piqe(const Image& image) { return PiqeDetailed(image).score; }

}  // namespace gsc::metrics
