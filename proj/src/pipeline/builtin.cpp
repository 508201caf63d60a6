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


// Builtin adapters: desk-scale stand-ins for the foundation and generative
// models.
//
//   identity     extract: the frame as one task tensor [H, W] f32
//                generate: the first task tensor back as an image; text echoed
//   sobel-edge   extract: Sobel gradient magnitude, task tensor [H, W] f32
//   depth-proxy  extract: task = 4x bilinear reduction [H/4, W/4], perceptual
//                = full-resolution residual (frame - upsampled reduction)
//                embed: the flattened task tensor
//   upsample     generate: bilinear 4x enlargement of the task tensor; adds
//                the perceptual residual when one arrives, otherwise
//                sharpens with an unsharp mask; then back-projects so the
//                output's 4x reduction matches the task tensor
//   captioner    extract: "A {color} {object} {action} on the {scene}." from
//                item metadata, "unknown" for missing keys

#include <cmath>
#include <functional>
#include <map>

#include "common/error.hpp"
#include "pipeline/adapter.hpp"
#include "pipeline/image_ops.hpp"

namespace gsc::pipeline {

namespace {

using nlohmann::json;

std::uint64_t Pixels(const Image& img) {
  return static_cast<std::uint64_t>(img.width) * static_cast<std::uint64_t>(img.height);
}

Tensor F32(const Image& img) { return ImageToTensor(img, DType::kF32); }

class BuiltinAdapter : public AdapterServer {
 public:
  using Handler = std::function<Message(const Message&)>;

  BuiltinAdapter(std::string name, std::map<std::string, Handler> ops)
      : name_(std::move(name)), ops_(std::move(ops)) {}

  Message Handle(const Message& req) override {
    const std::string op = req.header["op"].get<std::string>();
    Message resp;
    if (op == "hello") {
      json caps = json::array();
      for (const auto& [k, v] : ops_) caps.push_back(k);
      resp.header = {{"name", name_}, {"capabilities", caps}, {"stochastic", false},
                     {"protocol", kProtocolVersion}};
    } else if (op == "shutdown") {
      // Nothing to release.
    } else if (auto it = ops_.find(op); it != ops_.end()) {
      resp = it->second(req);
    } else if (op == kCapExtract || op == kCapGenerate || op == kCapEmbed) {
      Fail(ErrorCode::kCapability, name_ + " does not declare '" + op + "'");
    } else {
      Fail(ErrorCode::kProtocol, "unknown op '" + op + "'");
    }
    resp.header["op"] = op;
    resp.header["request_id"] = req.header["request_id"];
    return resp;
  }

 private:
  std::string name_;
  std::map<std::string, Handler> ops_;
};

Image InputImage(const Message& req) {
  if (req.tensors.size() != 1) {
    Fail(ErrorCode::kProtocol, "expected exactly one image tensor");
  }
  return TensorToImage(req.tensors[0]);
}

// First tensor of `role` in a generate request, if any.
const Tensor* FindRole(const Message& req, std::string_view role) {
  const json& roles = req.header.contains("roles") ? req.header["roles"] : json::array();
  if (!roles.is_array() || roles.size() != req.tensors.size()) {
    Fail(ErrorCode::kProtocol, "generate request needs one role per tensor");
  }
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) return &req.tensors[i];
  }
  return nullptr;
}

void EchoText(const Message& req, Message& resp) {
  if (req.header.contains("text")) resp.header["text"] = req.header["text"];
}

Message IdentityExtract(const Message& req) {
  Message resp;
  resp.tensors.push_back(F32(InputImage(req)));
  resp.header = {{"roles", {"task"}}, {"flops", 0}};
  return resp;
}

Message IdentityGenerate(const Message& req) {
  Message resp;
  if (const Tensor* t = FindRole(req, "task")) {
    resp.tensors.push_back(ImageToTensor(Clamp255(TensorToImage(*t))));
  }
  resp.header["flops"] = 0;
  EchoText(req, resp);
  return resp;
}

Message SobelExtract(const Message& req) {
  Image img = InputImage(req);
  Message resp;
  resp.tensors.push_back(F32(SobelMagnitude(img)));
  // Two 3x3 kernels (17 ops each) plus magnitude (4 ops) per pixel.
  resp.header = {{"roles", {"task"}}, {"flops", 38 * Pixels(img)}};
  return resp;
}

Message DepthExtract(const Message& req) {
  Image img = InputImage(req);
  Image small = Downsample4(img);
  Image up = ResizeBilinear(small, img.width, img.height);
  Image residual = img;
  for (std::size_t i = 0; i < residual.pixels.size(); ++i) residual.pixels[i] -= up.pixels[i];
  Message resp;
  resp.tensors.push_back(F32(small));
  resp.tensors.push_back(F32(residual));
  // Bilinear taps cost 7 ops per output sample; the residual 1 per pixel.
  resp.header = {{"roles", {"task", "perceptual"}},
                 {"flops", 7 * Pixels(small) + 8 * Pixels(img)}};
  return resp;
}

Message DepthEmbed(const Message& req) {
  Image small = Downsample4(InputImage(req));
  Message resp;
  resp.tensors.push_back(MakeTensor(DType::kF32, {static_cast<std::uint32_t>(small.pixels.size())},
                                    small.pixels));
  resp.header = {{"flops", 7 * Pixels(small)}};
  return resp;
}

constexpr int kGuidePasses = 8;

Message UpsampleGenerate(const Message& req) {
  const Tensor* task = FindRole(req, "task");
  if (!task) Fail(ErrorCode::kProtocol, "upsample needs a task tensor");
  const Image small = TensorToImage(*task);
  const Tensor* detail = FindRole(req, "perceptual");
  Image out;
  std::uint64_t flops = 0;
  if (detail) {
    Image residual = TensorToImage(*detail);
    out = ResizeBilinear(small, residual.width, residual.height);
    for (std::size_t i = 0; i < out.pixels.size(); ++i) out.pixels[i] += residual.pixels[i];
    flops = 8 * Pixels(out);
  } else {
    out = Unsharp(ResizeBilinear(small, small.width * 4, small.height * 4));
    flops = 20 * Pixels(out);
  }
  // Keep the output faithful to the map that guided it.
  out = BackProject(Clamp255(std::move(out)), small, kGuidePasses);
  flops += kGuidePasses * (9 * Pixels(out) + 8 * Pixels(small));
  Message resp;
  resp.tensors.push_back(ImageToTensor(std::move(out)));
  resp.header["flops"] = flops;
  EchoText(req, resp);
  return resp;
}

Message CaptionExtract(const Message& req) {
  auto field = [&](const char* key) -> std::string {
    const json& meta = req.header.contains("meta") ? req.header["meta"] : json::object();
    if (meta.is_object() && meta.contains(key) && meta[key].is_string()) {
      return meta[key].get<std::string>();
    }
    return "unknown";
  };
  Message resp;
  resp.header = {{"roles", json::array()},
                 {"text", "A " + field("color") + " " + field("object") + " " +
                              field("action") + " on the " + field("scene") + "."},
                 {"flops", 0}};
  return resp;
}

}  // namespace

std::vector<std::string> BuiltinAdapterNames() {
  return {"captioner", "depth-proxy", "identity", "sobel-edge", "upsample"};
}

std::unique_ptr<AdapterServer> MakeBuiltinAdapter(std::string_view name) {
  using Ops = std::map<std::string, BuiltinAdapter::Handler>;
  Ops ops;
  if (name == "identity") {
    ops = {{kCapExtract, IdentityExtract}, {kCapGenerate, IdentityGenerate}};
  } else if (name == "sobel-edge") {
    ops = {{kCapExtract, SobelExtract}};
  } else if (name == "depth-proxy") {
    ops = {{kCapExtract, DepthExtract}, {kCapEmbed, DepthEmbed}};
  } else if (name == "upsample") {
    ops = {{kCapGenerate, UpsampleGenerate}};
  } else if (name == "captioner") {
    ops = {{kCapExtract, CaptionExtract}};
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown builtin adapter '" + std::string(name) + "'");
  }
  return std::make_unique<BuiltinAdapter>(std::string(name), std::move(ops));
}

}  // namespace gsc::pipeline
