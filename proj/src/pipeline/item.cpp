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


#include "pipeline/item.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "json.hpp"

namespace gsc::pipeline {

namespace fs = std::filesystem;

namespace {

bool IsItemFile(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".gsct";
}

Meta LoadMeta(const fs::path& item_path) {
  fs::path sidecar = item_path.parent_path() / (item_path.stem().string() + ".meta.json");
  if (!fs::exists(sidecar)) return {};
  Bytes raw = ReadFileBytes(sidecar);
  nlohmann::json j = nlohmann::json::parse(raw.begin(), raw.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    Fail(ErrorCode::kParse, sidecar.string() + ": expected a JSON object");
  }
  Meta meta;
  for (auto& [k, v] : j.items()) {
    if (!v.is_string()) {
      Fail(ErrorCode::kParse, sidecar.string() + ": value of '" + k + "' is not a string");
    }
    meta[k] = v.get<std::string>();
  }
  return meta;
}

}  // namespace

Item LoadItem(const fs::path& path) {
  Item item;
  item.name = path.stem().string();
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".gsct") {
    Tensor t = DecodeGsct(ReadFileBytes(path));
    if (t.dims.size() == 2) {
      item.frames.push_back(TensorToImage(t));
    } else if (t.dims.size() == 3) {
      const std::size_t plane = static_cast<std::size_t>(t.dims[1]) * t.dims[2];
      for (std::uint32_t f = 0; f < t.dims[0]; ++f) {
        Tensor frame{t.dtype, {t.dims[1], t.dims[2]},
                     std::vector<double>(t.values.begin() + f * plane,
                                         t.values.begin() + (f + 1) * plane)};
        item.frames.push_back(TensorToImage(frame));
      }
    } else {
      Fail(ErrorCode::kParse, path.string() + ": item tensor must have 2 or 3 dims");
    }
  } else if (ext == ".pgm" || ext == ".ppm") {
    item.frames.push_back(ToGray(ReadPnm(path)));
  } else {
    Fail(ErrorCode::kIo, path.string() + ": unsupported item type");
  }
  if (item.frames.empty()) Fail(ErrorCode::kParse, path.string() + ": item has no frames");
  item.meta = LoadMeta(path);
  return item;
}

std::vector<Item> LoadDataset(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    Fail(ErrorCode::kIo, "dataset directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && IsItemFile(e.path())) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) Fail(ErrorCode::kIo, "dataset has no items: " + dir.string());
  std::vector<Item> items;
  for (const auto& f : files) items.push_back(LoadItem(f));
  return items;
}

Tensor ImageToTensor(const Image& img, DType dtype) {
  const Image gray = img.channels == 1 ? img : ToGray(img);
  return MakeTensor(dtype,
                    {static_cast<std::uint32_t>(gray.height),
                     static_cast<std::uint32_t>(gray.width)},
                    gray.pixels);
}

Image TensorToImage(const Tensor& t) {
  if (t.dims.size() != 2 || t.dims[0] == 0 || t.dims[1] == 0) {
    Fail(ErrorCode::kDimensionMismatch, "image tensor must be a nonempty [H, W]");
  }
  Image img(static_cast<int>(t.dims[1]), static_cast<int>(t.dims[0]), 1);
  img.pixels = t.values;
  return img;
}

}  // namespace gsc::pipeline
