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


// Extractor / generator / embedder adapters.
//
// Every adapter, builtin or external, is reached through the framed wire
// protocol: builtins run in-process behind a loopback transport, external
// adapters are child processes speaking frames on stdin/stdout.

#ifndef GSC_PIPELINE_ADAPTER_HPP
#define GSC_PIPELINE_ADAPTER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "common/image.hpp"
#include "common/tensor.hpp"
#include "pipeline/item.hpp"
#include "pipeline/protocol.hpp"

namespace gsc::pipeline {

inline constexpr const char* kCapExtract = "extract";
inline constexpr const char* kCapGenerate = "generate";
inline constexpr const char* kCapEmbed = "embed";

struct AdapterSpec {
  enum class Kind { kBuiltin, kExternal };
  Kind kind = Kind::kBuiltin;
  std::string name;                  // builtin name
  std::vector<std::string> command;  // external argv
  // Capabilities the caller relies on; checked against the handshake.
  std::set<std::string> required;

  // "identity" or "exec:<argv separated by spaces>".
  std::string ToString() const;
  bool operator==(const AdapterSpec&) const = default;
};

// Accepts "<builtin>", "builtin:<builtin>" or "exec:<command line>".
// Throws kInvalidArgument.
AdapterSpec ParseAdapterSpec(std::string_view text);

// Server side of the protocol.
class AdapterServer {
 public:
  virtual ~AdapterServer() = default;
  virtual Message Handle(const Message& request) = 0;
  // Decodes, handles and encodes; failures become `error` frames.
  Bytes HandleFrame(std::span<const std::uint8_t> frame);
};

std::vector<std::string> BuiltinAdapterNames();
// Throws kInvalidArgument for an unknown name.
std::unique_ptr<AdapterServer> MakeBuiltinAdapter(std::string_view name);

// Serves frames from `in_fd` to `out_fd` until shutdown or end of input.
// Returns a process exit status (0 on clean shutdown or EOF).
int ServeStream(AdapterServer& server, int in_fd, int out_fd);

class Transport {
 public:
  virtual ~Transport() = default;
  virtual Bytes RoundTrip(const Bytes& request) = 0;
  virtual void Close() {}
};

std::unique_ptr<Transport> MakeLoopbackTransport(std::unique_ptr<AdapterServer> server);
// Spawns `argv`. Responses must arrive within GSC_ADAPTER_TIMEOUT_MS
// (default 60000) or the child is killed and kTimeout thrown.
std::unique_ptr<Transport> SpawnProcessTransport(const std::vector<std::string>& argv);
int AdapterTimeoutMs();

struct AdapterInfo {
  std::string name;
  std::set<std::string> capabilities;
  bool stochastic = false;
};

struct Extraction {
  std::vector<Tensor> task;
  std::vector<Tensor> perceptual;
  std::optional<std::string> text;
  std::optional<std::uint64_t> flops;
};

struct Generation {
  std::optional<Image> image;
  std::optional<std::string> text;
  std::optional<std::uint64_t> flops;
};

struct Embedding {
  std::vector<double> vector;
  std::optional<std::uint64_t> flops;
};

// Client side. Not thread-safe: one connection per pipeline run.
class AdapterClient {
 public:
  AdapterClient(std::unique_ptr<Transport> transport, AdapterSpec spec);
  ~AdapterClient();
  AdapterClient(const AdapterClient&) = delete;
  AdapterClient& operator=(const AdapterClient&) = delete;

  // Performs the hello exchange once; throws kCapability when a required
  // capability is missing.
  const AdapterInfo& Handshake();
  const AdapterSpec& spec() const { return spec_; }
  bool Has(std::string_view capability);

  Extraction Extract(const Image& frame, const Meta& meta, std::uint64_t seed);
  Generation Generate(const std::vector<Tensor>& task,
                      const std::vector<Tensor>& perceptual,
                      const std::optional<std::string>& text, std::uint64_t seed);
  Embedding Embed(const Image& frame, const Meta& meta, std::uint64_t seed);
  void Shutdown();

 private:
  Message Call(std::string_view op, Message request, std::uint64_t seed);
  void Require(std::string_view capability);

  std::unique_ptr<Transport> transport_;
  AdapterSpec spec_;
  std::optional<AdapterInfo> info_;
  std::uint64_t next_id_ = 1;
  bool closed_ = false;
};

// Connects and completes the handshake.
std::unique_ptr<AdapterClient> ConnectAdapter(const AdapterSpec& spec);

}  // namespace gsc::pipeline

#endif  // GSC_PIPELINE_ADAPTER_HPP
