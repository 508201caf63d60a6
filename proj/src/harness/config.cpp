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


#include "harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.hpp"
#include "common/image.hpp"

namespace gsc::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// A JSON value together with its path, for error messages.
class Node {
 public:
  Node(const json& value, std::string path) : v_(&value), path_(std::move(path)) {}

  [[noreturn]] void Error(const std::string& what) const {
    Fail(ErrorCode::kValidation, path_ + ": " + what);
  }

  const std::string& path() const { return path_; }
  bool is_null() const { return v_->is_null(); }

  // Rejects keys outside `allowed`; the node must be an object.
  void Keys(std::initializer_list<std::string_view> allowed) const {
    if (!v_->is_object()) Error("expected an object");
    for (const auto& [key, value] : v_->items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Node(value, Child(key)).Error("unknown key");
      }
    }
  }

  std::optional<Node> Get(const std::string& key) const {
    auto it = v_->find(key);
    if (it == v_->end()) return std::nullopt;
    return Node(*it, Child(key));
  }

  Node At(const std::string& key) const {
    auto n = Get(key);
    if (!n) Error("missing required key '" + key + "'");
    return *n;
  }

  std::string String() const {
    if (!v_->is_string()) Error("expected a string");
    return v_->get<std::string>();
  }

  std::string NonEmptyString() const {
    std::string s = String();
    if (s.empty()) Error("must not be empty");
    return s;
  }

  std::uint64_t Unsigned() const {
    if (!v_->is_number_unsigned()) Error("expected a non-negative integer");
    return v_->get<std::uint64_t>();
  }

  double Number() const {
    if (!v_->is_number()) Error("expected a number");
    double d = v_->get<double>();
    if (!std::isfinite(d)) Error("expected a finite number");
    return d;
  }

  bool Bool() const {
    if (!v_->is_boolean()) Error("expected true or false");
    return v_->get<bool>();
  }

  std::vector<Node> Array() const {
    if (!v_->is_array()) Error("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < v_->size(); ++i) {
      out.emplace_back((*v_)[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  template <typename F>
  auto Convert(F&& parse) const {
    try {
      return parse();
    } catch (const gsc::Error& e) {
      if (e.code() == ErrorCode::kValidation) throw;
      Error(e.what());
    }
  }

 private:
  std::string Child(const std::string& key) const { return path_ + "." + key; }

  const json* v_;
  std::string path_;
};

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

pipeline::AdapterSpec Adapter(const Node& n) {
  return n.Convert([&] { return pipeline::ParseAdapterSpec(n.NonEmptyString()); });
}

// Channel fields over `into`; absent keys keep their current value.
void ParseChannel(const Node& n, phy::ChannelConfig& into) {
  n.Keys({"snr_db", "modulation"});
  if (auto s = n.Get("snr_db")) {
    into.snr_db = s->is_null() ? std::nullopt : std::optional<double>(s->Number());
  }
  if (auto m = n.Get("modulation")) {
    into.modulation = m->Convert([&] { return phy::ParseModulation(m->String()); });
  }
}

struct Shared {
  std::string code_id = "default";
  phy::ChannelConfig channel{10.0, phy::Modulation::kBpsk, 1};
  int max_iterations = phy::kDefaultMaxIterations;
};

void ParseShared(const Node& n, Shared& s) {
  if (auto c = n.Get("code")) s.code_id = c->NonEmptyString();
  if (auto c = n.Get("channel")) ParseChannel(*c, s.channel);
  if (auto m = n.Get("max_iterations")) {
    std::uint64_t v = m->Unsigned();
    if (v < 1 || v > 1000) m->Error("must be in [1, 1000]");
    s.max_iterations = static_cast<int>(v);
  }
}

pipeline::StreamSettings ParseStream(const Node& n, bool* enabled) {
  if (enabled) {
    n.Keys({"rank", "bits", "enabled"});
  } else {
    n.Keys({"rank", "bits"});
  }
  pipeline::StreamSettings s;
  if (auto r = n.Get("rank"); r && !r->is_null()) {
    std::uint64_t v = r->Unsigned();
    if (v < 1 || v > 65535) r->Error("must be in [1, 65535] or null");
    s.rank = static_cast<int>(v);
  }
  if (auto b = n.Get("bits")) {
    std::uint64_t v = b->Unsigned();
    if (v < codec::kMinQuantBits || v > codec::kMaxQuantBits) b->Error("must be in [1, 16]");
    s.bits = static_cast<int>(v);
  }
  if (enabled) {
    if (auto e = n.Get("enabled")) *enabled = e->Bool();
  }
  return s;
}

MethodConfig ParseMethod(const Node& n, const ExperimentConfig& exp, Shared shared,
                         const std::filesystem::path& base) {
  MethodConfig m;
  m.label = n.At("label").NonEmptyString();
  const Node kind = n.At("kind");
  const std::string k = kind.String();
  if (k == "gsc") {
    m.kind = MethodKind::kGsc;
    n.Keys({"label", "kind", "extractor", "generator", "task_extractor", "basis_mode", "task",
            "perceptual", "code", "channel", "max_iterations"});
  } else if (k == "dct") {
    m.kind = MethodKind::kDct;
    n.Keys({"label", "kind", "task_extractor", "quality", "code", "channel", "max_iterations"});
  } else {
    kind.Error("unknown method kind '" + k + "' (expected gsc or dct)");
  }
  ParseShared(n, shared);
  if (shared.code_id != "default" && shared.code_id != "small" &&
      !shared.code_id.starts_with("qc:")) {
    shared.code_id = Resolve(base, shared.code_id).string();
  }
  std::optional<pipeline::AdapterSpec> task_extractor;
  if (auto t = n.Get("task_extractor")) task_extractor = Adapter(*t);

  if (m.kind == MethodKind::kGsc) {
    auto& c = m.gsc;
    c.scenario = exp.scenario;
    c.extractor = Adapter(n.At("extractor"));
    c.generator = Adapter(n.At("generator"));
    c.task_extractor = task_extractor;
    if (auto b = n.Get("basis_mode")) {
      std::string mode = b->String();
      if (mode == "shared") {
        c.basis_mode = pipeline::BasisMode::kShared;
      } else if (mode == "self-contained") {
        c.basis_mode = pipeline::BasisMode::kSelfContained;
      } else {
        b->Error("expected shared or self-contained");
      }
    }
    if (auto t = n.Get("task")) c.task = ParseStream(*t, nullptr);
    if (auto p = n.Get("perceptual")) c.perceptual = ParseStream(*p, &c.perceptual_enabled);
    c.code_id = shared.code_id;
    c.channel = shared.channel;
    c.max_iterations = shared.max_iterations;
    c.thresholds = exp.thresholds;
  } else {
    auto& c = m.baseline;
    c.scenario = exp.scenario;
    c.task_extractor = task_extractor;
    if (auto q = n.Get("quality")) {
      std::uint64_t v = q->Unsigned();
      if (v < 1 || v > 100) q->Error("must be in [1, 100]");
      c.quality = static_cast<int>(v);
    }
    c.code_id = shared.code_id;
    c.channel = shared.channel;
    c.max_iterations = shared.max_iterations;
    c.thresholds = exp.thresholds;
  }
  return m;
}

ordered_json ChannelJson(const phy::ChannelConfig& c) {
  ordered_json j;
  j["snr_db"] = c.snr_db ? ordered_json(*c.snr_db) : ordered_json(nullptr);
  std::string mod = phy::ModulationName(c.modulation);
  std::transform(mod.begin(), mod.end(), mod.begin(), [](unsigned char ch) { return std::tolower(ch); });
  j["modulation"] = mod;
  return j;
}

ordered_json StreamJson(const pipeline::StreamSettings& s) {
  ordered_json j;
  j["rank"] = s.rank ? ordered_json(*s.rank) : ordered_json(nullptr);
  j["bits"] = s.bits;
  return j;
}

}  // namespace

ExperimentConfig ParseConfig(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  const Node root(doc, "$");
  root.Keys({"name", "dataset", "calibration", "output", "scenario", "budgets", "seeds",
             "thresholds", "code", "channel", "max_iterations", "threads", "methods"});
  ExperimentConfig c;
  c.name = root.At("name").NonEmptyString();
  c.dataset = Resolve(base_dir, root.At("dataset").NonEmptyString());
  if (auto p = root.Get("calibration")) c.calibration = Resolve(base_dir, p->NonEmptyString());
  c.output = root.Get("output") ? Resolve(base_dir, root.At("output").NonEmptyString())
                                : Resolve(base_dir, "results/" + c.name);
  if (auto s = root.Get("scenario")) {
    c.scenario = s->String();
    if (c.scenario != "online_meeting" && c.scenario != "road_monitoring" &&
        c.scenario != "custom") {
      s->Error("expected online_meeting, road_monitoring or custom");
    }
  }
  const Node budgets = root.At("budgets");
  for (const Node& b : budgets.Array()) {
    std::uint64_t v = b.Unsigned();
    if (v == 0) b.Error("budget must be positive");
    if (std::find(c.budgets.begin(), c.budgets.end(), v) != c.budgets.end()) b.Error("duplicate budget");
    c.budgets.push_back(v);
  }
  if (c.budgets.empty()) budgets.Error("needs at least one budget");
  if (auto seeds = root.Get("seeds")) {
    c.seeds.clear();
    for (const Node& s : seeds->Array()) {
      std::uint64_t v = s.Unsigned();
      if (std::find(c.seeds.begin(), c.seeds.end(), v) != c.seeds.end()) s.Error("duplicate seed");
      c.seeds.push_back(v);
    }
    if (c.seeds.empty()) seeds->Error("needs at least one seed");
  }
  if (auto t = root.Get("thresholds")) {
    t->Keys({"semantic_nmse_max", "piqe_max"});
    if (auto v = t->Get("semantic_nmse_max")) c.thresholds.semantic_nmse_max = v->Number();
    if (auto v = t->Get("piqe_max")) c.thresholds.piqe_max = v->Number();
  }
  if (auto t = root.Get("threads")) {
    std::uint64_t v = t->Unsigned();
    if (v > 1024) t->Error("must be at most 1024");
    c.threads = static_cast<unsigned>(v);
  }
  Shared shared;
  ParseShared(root, shared);
  const Node methods = root.At("methods");
  std::set<std::string> labels;
  for (const Node& m : methods.Array()) {
    c.methods.push_back(ParseMethod(m, c, shared, base_dir));
    if (!labels.insert(c.methods.back().label).second) {
      m.At("label").Error("duplicate method label");
    }
  }
  if (c.methods.empty()) methods.Error("needs at least one method");
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  Bytes bytes = ReadFileBytes(path);
  return ParseConfig(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                     path.parent_path());
}

ordered_json EchoConfig(const ExperimentConfig& c) {
  ordered_json j;
  j["name"] = c.name;
  j["dataset"] = c.dataset.string();
  if (c.calibration) j["calibration"] = c.calibration->string();
  j["output"] = c.output.string();
  j["scenario"] = c.scenario;
  j["budgets"] = c.budgets;
  j["seeds"] = c.seeds;
  ordered_json th = ordered_json::object();
  if (c.thresholds.semantic_nmse_max) th["semantic_nmse_max"] = *c.thresholds.semantic_nmse_max;
  if (c.thresholds.piqe_max) th["piqe_max"] = *c.thresholds.piqe_max;
  j["thresholds"] = th;
  j["threads"] = c.threads;
  ordered_json methods = ordered_json::array();
  for (const MethodConfig& m : c.methods) {
    ordered_json mj;
    mj["label"] = m.label;
    if (m.kind == MethodKind::kGsc) {
      const auto& g = m.gsc;
      mj["kind"] = "gsc";
      mj["extractor"] = g.extractor.ToString();
      mj["generator"] = g.generator.ToString();
      if (g.task_extractor) mj["task_extractor"] = g.task_extractor->ToString();
      mj["basis_mode"] = pipeline::BasisModeName(g.basis_mode);
      mj["task"] = StreamJson(g.task);
      ordered_json p = StreamJson(g.perceptual);
      p["enabled"] = g.perceptual_enabled;
      mj["perceptual"] = p;
      mj["code"] = g.code_id;
      mj["channel"] = ChannelJson(g.channel);
      mj["max_iterations"] = g.max_iterations;
    } else {
      const auto& b = m.baseline;
      mj["kind"] = "dct";
      if (b.task_extractor) mj["task_extractor"] = b.task_extractor->ToString();
      mj["quality"] = b.quality;
      mj["code"] = b.code_id;
      mj["channel"] = ChannelJson(b.channel);
      mj["max_iterations"] = b.max_iterations;
    }
    methods.push_back(mj);
  }
  j["methods"] = methods;
  return j;
}

}  // namespace gsc::harness
