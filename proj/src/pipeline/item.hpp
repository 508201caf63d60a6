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


// Source and destination items. A still image is a one-frame item; a video is
// an ordered list of independent frames. Metadata comes from an optional
// `<stem>.meta.json` sidecar holding a flat object of strings.

#ifndef GSC_PIPELINE_ITEM_HPP
#define GSC_PIPELINE_ITEM_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "common/image.hpp"
#include "common/tensor.hpp"

namespace gsc::pipeline {

using Meta = std::map<std::string, std::string>;

struct Item {
  std::string name;
  std::vector<Image> frames;  // single-channel
  std::vector<std::string> texts;  // per-frame text, destination side
  Meta meta;
};

// .pgm / .ppm (converted to gray) or .gsct (dims [H, W] or [T, H, W]).
// Throws kIo / kParse.
Item LoadItem(const std::filesystem::path& path);

// Every item file in `dir`, ordered by file name. Throws kIo when the
// directory is missing or holds no items.
std::vector<Item> LoadDataset(const std::filesystem::path& dir);

// Gray image <-> [H, W] tensor.
Tensor ImageToTensor(const Image& img, DType dtype = DType::kF64);
Image TensorToImage(const Tensor& t);

}  // namespace gsc::pipeline

#endif  // GSC_PIPELINE_ITEM_HPP
