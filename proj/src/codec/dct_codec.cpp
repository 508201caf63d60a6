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

#include "codec/dct_codec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"

namespace gsc::codec {

namespace {

// ITU-T T.81 Annex K luminance table, natural order.
constexpr std::array<int, 64> kLumaTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

struct DctMatrix {
  double c[8][8];
  DctMatrix() {
    for (int u = 0; u < 8; ++u) {
      double a = u == 0 ? std::sqrt(1.0 / 8) : std::sqrt(2.0 / 8);
      for (int x = 0; x < 8; ++x) {
        c[u][x] = a * std::cos((2 * x + 1) * u * std::numbers::pi / 16);
      }
    }
  }
};

const DctMatrix& Dct() {
  static const DctMatrix m;
  return m;
}

void PutUe(BitWriter& w, std::uint32_t v) {
  std::uint64_t x = std::uint64_t{v} + 1;
  int len = 0;
  while ((x >> len) > 1) ++len;
  for (int i = 0; i < len; ++i) w.PutBit(0);
  for (int i = len; i >= 0; --i) w.PutBit(static_cast<std::uint32_t>((x >> i) & 1));
}

void PutSe(BitWriter& w, int v) {
  PutUe(w, v > 0 ? static_cast<std::uint32_t>(2 * v - 1)
                 : static_cast<std::uint32_t>(-2 * static_cast<long>(v)));
}

std::uint32_t GetUe(BitReader& r) {
  int zeros = 0;
  while (r.GetBit() == 0) {
    if (++zeros > 31) Fail(ErrorCode::kCorruptStream, "DCT stream: Exp-Golomb prefix too long");
  }
  std::uint64_t x = 1;
  for (int i = 0; i < zeros; ++i) x = (x << 1) | r.GetBit();
  return static_cast<std::uint32_t>(x - 1);
}

int GetSe(BitReader& r) {
  std::uint32_t u = GetUe(r);
  return (u & 1) ? static_cast<int>((u + 1) / 2) : -static_cast<int>(u / 2);
}

}  // namespace

constexpr int kMaxDcStep = 8;

std::array<int, 64> DctQuantTable(int quality) {
  if (quality < 1 || quality > 100) {
    Fail(ErrorCode::kInvalidArgument,
         "DCT quality " + std::to_string(quality) + " outside [1,100]");
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<int, 64> q{};
  for (int i = 0; i < 64; ++i) {
    q[i] = std::clamp((kLumaTable[i] * scale + 50) / 100, 1, 255);
  }
  // DC is 8x the block mean offset; a step of at most 8 keeps flat blocks
  // within half a level at every quality.
  q[0] = std::min(q[0], kMaxDcStep);
  return q;
}

const std::array<int, 64>& ZigzagOrder() {
  static const std::array<int, 64> order = [] {
    std::array<int, 64> o{};
    int i = 0;
    for (int s = 0; s < 15; ++s) {
      if (s % 2 == 0) {
        for (int y = std::min(s, 7); y >= std::max(0, s - 7); --y) o[i++] = y * 8 + (s - y);
      } else {
        for (int y = std::max(0, s - 7); y <= std::min(s, 7); ++y) o[i++] = y * 8 + (s - y);
      }
    }
    return o;
  }();
  return order;
}

std::array<double, 64> ForwardDct8x8(const std::array<double, 64>& block) {
  const auto& m = Dct().c;
  std::array<double, 64> tmp{}, out{};
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double s = 0;
      for (int x = 0; x < 8; ++x) s += m[u][x] * block[y * 8 + x];
      tmp[y * 8 + u] = s;
    }
  }
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double s = 0;
      for (int y = 0; y < 8; ++y) s += m[v][y] * tmp[y * 8 + u];
      out[v * 8 + u] = s;
    }
  }
  return out;
}

std::array<double, 64> InverseDct8x8(const std::array<double, 64>& coefs) {
  const auto& m = Dct().c;
  std::array<double, 64> tmp{}, out{};
  for (int v = 0; v < 8; ++v) {
    for (int x = 0; x < 8; ++x) {
      double s = 0;
      for (int u = 0; u < 8; ++u) s += m[u][x] * coefs[v * 8 + u];
      tmp[v * 8 + x] = s;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double s = 0;
      for (int v = 0; v < 8; ++v) s += m[v][y] * tmp[v * 8 + x];
      out[y * 8 + x] = s;
    }
  }
  return out;
}

Bytes DctEncode(const Image& img, int quality) {
  const auto q = DctQuantTable(quality);
  if (img.empty() || img.channels < 1 || img.channels > 255) {
    Fail(ErrorCode::kInvalidArgument, "DCT encode: empty image");
  }
  const int bw = (img.width + 7) / 8;
  const int bh = (img.height + 7) / 8;
  const auto& zz = ZigzagOrder();

  ByteWriter w;
  w.raw(std::string_view("GSCD"));
  w.u8(kDctCodecVersion);
  w.u32(static_cast<std::uint32_t>(img.width));
  w.u32(static_cast<std::uint32_t>(img.height));
  w.u8(static_cast<std::uint8_t>(img.channels));
  w.u8(static_cast<std::uint8_t>(quality));

  BitWriter bits;
  for (int c = 0; c < img.channels; ++c) {
    int prev_dc = 0;
    for (int by = 0; by < bh; ++by) {
      for (int bx = 0; bx < bw; ++bx) {
        std::array<double, 64> block{};
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) {
            block[y * 8 + x] =
                std::round(std::clamp(img.clamped(bx * 8 + x, by * 8 + y, c), 0.0, 255.0)) - 128.0;
          }
        }
        auto coefs = ForwardDct8x8(block);
        std::array<int, 64> levels{};
        for (int i = 0; i < 64; ++i) {
          levels[i] = static_cast<int>(std::lround(coefs[zz[i]] / q[zz[i]]));
        }
        PutSe(bits, levels[0] - prev_dc);
        prev_dc = levels[0];
        int run = 0;
        for (int i = 1; i < 64; ++i) {
          if (levels[i] == 0) {
            ++run;
            continue;
          }
          PutUe(bits, static_cast<std::uint32_t>(run + 1));
          PutSe(bits, levels[i]);
          run = 0;
        }
        PutUe(bits, 0);
      }
    }
  }
  w.raw(bits.Finish());
  return w.take();
}

Image DctDecode(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.remaining() >= 4 && r.str(4) != "GSCD") {
    Fail(ErrorCode::kBadMagic, "bad DCT stream magic at offset 0");
  }
  if (bytes.size() < 4) Fail(ErrorCode::kTruncated, "DCT stream shorter than its magic");
  std::uint8_t version = r.u8();
  if (version != kDctCodecVersion) {
    Fail(ErrorCode::kVersionMismatch, "DCT stream version " + std::to_string(version));
  }
  const auto width = r.u32();
  const auto height = r.u32();
  const int channels = r.u8();
  const int quality = r.u8();
  if (width == 0 || height == 0 || channels == 0 || width > (1u << 16) ||
      height > (1u << 16) || quality < 1 || quality > 100) {
    Fail(ErrorCode::kCorruptStream, "DCT stream header out of range");
  }
  const auto q = DctQuantTable(quality);
  const auto& zz = ZigzagOrder();
  const int bw = (static_cast<int>(width) + 7) / 8;
  const int bh = (static_cast<int>(height) + 7) / 8;

  Image out(static_cast<int>(width), static_cast<int>(height), channels);
  auto data = r.raw(r.remaining());
  BitReader bits(data);
  try {
    for (int c = 0; c < channels; ++c) {
      int prev_dc = 0;
      for (int by = 0; by < bh; ++by) {
        for (int bx = 0; bx < bw; ++bx) {
          std::array<double, 64> coefs{};
          prev_dc += GetSe(bits);
          coefs[zz[0]] = static_cast<double>(prev_dc) * q[zz[0]];
          int pos = 1;
          while (true) {
            std::uint32_t sym = GetUe(bits);
            if (sym == 0) break;
            pos += static_cast<int>(sym - 1);
            if (pos > 63) Fail(ErrorCode::kCorruptStream, "DCT stream: run past end of block");
            coefs[zz[pos]] = static_cast<double>(GetSe(bits)) * q[zz[pos]];
            ++pos;
          }
          auto px = InverseDct8x8(coefs);
          for (int y = 0; y < 8; ++y) {
            for (int x = 0; x < 8; ++x) {
              int ix = bx * 8 + x;
              int iy = by * 8 + y;
              if (ix < out.width && iy < out.height) {
                out.at(ix, iy, c) = std::clamp(std::round(px[y * 8 + x] + 128.0), 0.0, 255.0);
              }
            }
          }
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTruncated) {
      Fail(ErrorCode::kCorruptStream, std::string("DCT stream: ") + e.what());
    }
    throw;
  }
  if ((bits.bit_pos() + 7) / 8 != data.size()) {
    Fail(ErrorCode::kCorruptStream, "DCT stream: trailing data after last block");
  }
  return out;
}

}  // namespace gsc::codec
