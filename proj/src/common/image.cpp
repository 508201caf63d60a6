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

#include "common/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace gsc {

double Image::clamped(int x, int y, int c) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y, c);
}

Image ToGray(const Image& img) {
  if (img.channels == 1) return img;
  Image out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.channels >= 3) {
        out.at(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                       0.114 * img.at(x, y, 2);
      } else {
        out.at(x, y) = img.at(x, y, 0);
      }
    }
  }
  return out;
}

Image Quantize8(const Image& img) {
  Image out = img;
  for (auto& v : out.pixels) v = std::clamp(std::round(v), 0.0, 255.0);
  return out;
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string HeaderToken(ByteReader& r) {
  std::string tok;
  while (true) {
    char c = static_cast<char>(r.u8());
    if (c == '#') {
      while (static_cast<char>(r.u8()) != '\n') {
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(c);
  }
}

int HeaderInt(ByteReader& r, const char* what) {
  std::string tok = HeaderToken(r);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    Fail(ErrorCode::kParse, std::string("PNM: bad ") + what + " '" + tok + "'");
  }
  return std::stoi(tok);
}

}  // namespace

Image DecodePnm(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  std::string magic = r.str(2);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    Fail(ErrorCode::kBadMagic, "PNM: expected P5 or P6, got '" + magic + "'");
  }
  int w = HeaderInt(r, "width");
  int h = HeaderInt(r, "height");
  int maxval = HeaderInt(r, "maxval");
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) {
    Fail(ErrorCode::kParse, "PNM: invalid header values");
  }
  Image img(w, h, channels);
  const double scale = 255.0 / maxval;
  for (auto& v : img.pixels) {
    int raw = maxval < 256 ? r.u8() : (r.u8() << 8) | r.u8();
    v = maxval == 255 ? raw : raw * scale;
  }
  return img;
}

Bytes EncodePnm(const Image& img) {
  if (img.channels != 1 && img.channels != 3) {
    Fail(ErrorCode::kInvalidArgument, "PNM supports 1 or 3 channels");
  }
  ByteWriter w;
  std::string header = (img.channels == 1 ? "P5\n" : "P6\n") +
                       std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  w.raw(header);
  for (double v : img.pixels) {
    w.u8(static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)));
  }
  return w.take();
}

Bytes ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, "short write to " + path.string());
}

Image ReadPnm(const std::filesystem::path& path) {
  return DecodePnm(ReadFileBytes(path));
}

void WritePnm(const std::filesystem::path& path, const Image& img) {
  WriteFileBytes(path, EncodePnm(img));
}

}  // namespace gsc
