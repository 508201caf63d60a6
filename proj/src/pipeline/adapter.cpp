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


#include "pipeline/adapter.hpp"

#include <algorithm>
#include <sstream>

#include "common/error.hpp"

namespace gsc::pipeline {

using nlohmann::json;

std::string AdapterSpec::ToString() const {
  if (kind == Kind::kBuiltin) return name;
  std::string out = "exec:";
  for (std::size_t i = 0; i < command.size(); ++i) {
    if (i) out += ' ';
    out += command[i];
  }
  return out;
}

AdapterSpec ParseAdapterSpec(std::string_view text) {
  AdapterSpec spec;
  if (text.starts_with("exec:")) {
    spec.kind = AdapterSpec::Kind::kExternal;
    std::istringstream in{std::string(text.substr(5))};
    std::string arg;
    while (in >> arg) spec.command.push_back(arg);
    if (spec.command.empty()) {
      Fail(ErrorCode::kInvalidArgument, "adapter spec 'exec:' needs a command");
    }
    return spec;
  }
  if (text.starts_with("builtin:")) text.remove_prefix(8);
  const auto names = BuiltinAdapterNames();
  if (std::find(names.begin(), names.end(), text) == names.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown builtin adapter '" + std::string(text) + "'");
  }
  spec.name = std::string(text);
  return spec;
}

Bytes AdapterServer::HandleFrame(std::span<const std::uint8_t> frame) {
  std::uint64_t id = 0;
  try {
    Message req = DecodeMessage(frame);
    id = req.header["request_id"].get<std::uint64_t>();
    return EncodeMessage(Handle(req));
  } catch (const Error& e) {
    Message err;
    err.header = {{"op", "error"}, {"request_id", id}, {"code", ErrorCodeName(e.code())},
                  {"message", e.what()}};
    return EncodeMessage(err);
  } catch (const std::exception& e) {
    Message err;
    err.header = {{"op", "error"}, {"request_id", id}, {"code", "internal"},
                  {"message", e.what()}};
    return EncodeMessage(err);
  }
}

namespace {

class LoopbackTransport : public Transport {
 public:
  explicit LoopbackTransport(std::unique_ptr<AdapterServer> server)
      : server_(std::move(server)) {}
  Bytes RoundTrip(const Bytes& request) override { return server_->HandleFrame(request); }

 private:
  std::unique_ptr<AdapterServer> server_;
};

std::optional<std::uint64_t> OptionalFlops(const json& h) {
  if (!h.contains("flops")) return std::nullopt;
  if (!h["flops"].is_number_unsigned()) {
    Fail(ErrorCode::kProtocol, "adapter protocol: 'flops' must be an unsigned integer");
  }
  return h["flops"].get<std::uint64_t>();
}

std::optional<std::string> OptionalText(const json& h) {
  if (!h.contains("text") || h["text"].is_null()) return std::nullopt;
  if (!h["text"].is_string()) Fail(ErrorCode::kProtocol, "adapter protocol: 'text' must be a string");
  return h["text"].get<std::string>();
}

json MetaJson(const Meta& meta) {
  json j = json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

}  // namespace

std::unique_ptr<Transport> MakeLoopbackTransport(std::unique_ptr<AdapterServer> server) {
  return std::make_unique<LoopbackTransport>(std::move(server));
}

AdapterClient::AdapterClient(std::unique_ptr<Transport> transport, AdapterSpec spec)
    : transport_(std::move(transport)), spec_(std::move(spec)) {}

AdapterClient::~AdapterClient() {
  try {
    Shutdown();
  } catch (...) {
    // Best effort: the adapter may already be gone.
  }
}

Message AdapterClient::Call(std::string_view op, Message request, std::uint64_t seed) {
  if (closed_) Fail(ErrorCode::kAdapter, "adapter " + spec_.ToString() + " is shut down");
  const std::uint64_t id = next_id_++;
  request.header["op"] = op;
  request.header["request_id"] = id;
  if (info_ && info_->stochastic) request.header["stochastic_seed"] = seed;
  Message resp = DecodeMessage(transport_->RoundTrip(EncodeMessage(request)));
  const auto& h = resp.header;
  if (h["op"] == "error") {
    std::string msg = h.contains("message") && h["message"].is_string()
                          ? h["message"].get<std::string>()
                          : "unspecified error";
    Fail(ErrorCode::kAdapter, "adapter " + spec_.ToString() + " failed " + std::string(op) +
                                  ": " + msg);
  }
  if (h["op"] != op) {
    Fail(ErrorCode::kProtocol, "adapter protocol: response op '" + h["op"].get<std::string>() +
                                   "' to a '" + std::string(op) + "' request");
  }
  if (h["request_id"].get<std::uint64_t>() != id) {
    Fail(ErrorCode::kProtocol, "adapter protocol: response request_id mismatch");
  }
  return resp;
}

const AdapterInfo& AdapterClient::Handshake() {
  if (info_) return *info_;
  Message req;
  req.header["protocol"] = kProtocolVersion;
  Message resp = Call("hello", std::move(req), 0);
  const auto& h = resp.header;
  AdapterInfo info;
  if (h.contains("name") && h["name"].is_string()) info.name = h["name"].get<std::string>();
  if (!h.contains("capabilities") || !h["capabilities"].is_array()) {
    Fail(ErrorCode::kProtocol, "adapter protocol: hello response lacks 'capabilities'");
  }
  for (const auto& c : h["capabilities"]) {
    if (!c.is_string()) Fail(ErrorCode::kProtocol, "adapter protocol: capability is not a string");
    info.capabilities.insert(c.get<std::string>());
  }
  if (h.contains("stochastic")) {
    if (!h["stochastic"].is_boolean()) {
      Fail(ErrorCode::kProtocol, "adapter protocol: 'stochastic' must be a boolean");
    }
    info.stochastic = h["stochastic"].get<bool>();
  }
  for (const auto& r : spec_.required) {
    if (!info.capabilities.count(r)) {
      Fail(ErrorCode::kCapability, "adapter " + spec_.ToString() + " lacks capability '" + r + "'");
    }
  }
  info_ = std::move(info);
  return *info_;
}

bool AdapterClient::Has(std::string_view capability) {
  return Handshake().capabilities.count(std::string(capability)) > 0;
}

void AdapterClient::Require(std::string_view capability) {
  if (!Has(capability)) {
    Fail(ErrorCode::kCapability, "adapter " + spec_.ToString() + " does not declare '" +
                                     std::string(capability) + "'");
  }
}

Extraction AdapterClient::Extract(const Image& frame, const Meta& meta, std::uint64_t seed) {
  Require(kCapExtract);
  Message req;
  req.header["meta"] = MetaJson(meta);
  req.tensors.push_back(ImageToTensor(frame));
  Message resp = Call(kCapExtract, std::move(req), seed);
  const auto& h = resp.header;
  Extraction out;
  const json roles = h.contains("roles") ? h["roles"] : json::array();
  if (!roles.is_array() || roles.size() != resp.tensors.size()) {
    Fail(ErrorCode::kProtocol, "adapter protocol: extract response needs one role per tensor");
  }
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == "task") {
      out.task.push_back(std::move(resp.tensors[i]));
    } else if (roles[i] == "perceptual") {
      out.perceptual.push_back(std::move(resp.tensors[i]));
    } else {
      Fail(ErrorCode::kProtocol, "adapter protocol: unknown tensor role " + roles[i].dump());
    }
  }
  out.text = OptionalText(h);
  out.flops = OptionalFlops(h);
  return out;
}

Generation AdapterClient::Generate(const std::vector<Tensor>& task,
                                   const std::vector<Tensor>& perceptual,
                                   const std::optional<std::string>& text, std::uint64_t seed) {
  Require(kCapGenerate);
  Message req;
  json roles = json::array();
  for (const auto& t : task) {
    req.tensors.push_back(t);
    roles.push_back("task");
  }
  for (const auto& t : perceptual) {
    req.tensors.push_back(t);
    roles.push_back("perceptual");
  }
  req.header["roles"] = roles;
  if (text) req.header["text"] = *text;
  Message resp = Call(kCapGenerate, std::move(req), seed);
  Generation out;
  if (resp.tensors.size() > 1) {
    Fail(ErrorCode::kProtocol, "adapter protocol: generate returns at most one image");
  }
  if (!resp.tensors.empty()) out.image = TensorToImage(resp.tensors[0]);
  out.text = OptionalText(resp.header);
  out.flops = OptionalFlops(resp.header);
  return out;
}

Embedding AdapterClient::Embed(const Image& frame, const Meta& meta, std::uint64_t seed) {
  Require(kCapEmbed);
  Message req;
  req.header["meta"] = MetaJson(meta);
  req.tensors.push_back(ImageToTensor(frame));
  Message resp = Call(kCapEmbed, std::move(req), seed);
  if (resp.tensors.size() != 1) {
    Fail(ErrorCode::kProtocol, "adapter protocol: embed returns exactly one tensor");
  }
  return Embedding{std::move(resp.tensors[0].values), OptionalFlops(resp.header)};
}

void AdapterClient::Shutdown() {
  if (closed_) return;
  try {
    Call("shutdown", Message{}, 0);
  } catch (...) {
    closed_ = true;
    transport_->Close();
    throw;
  }
  closed_ = true;
  transport_->Close();
}

std::unique_ptr<AdapterClient> ConnectAdapter(const AdapterSpec& spec) {
  std::unique_ptr<Transport> transport =
      spec.kind == AdapterSpec::Kind::kBuiltin
          ? MakeLoopbackTransport(MakeBuiltinAdapter(spec.name))
          : SpawnProcessTransport(spec.command);
  auto client = std::make_unique<AdapterClient>(std::move(transport), spec);
  client->Handshake();
  return client;
}

}  // namespace gsc::pipeline
