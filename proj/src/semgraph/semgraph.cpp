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

#include "semgraph/semgraph.hpp"

#include <algorithm>
#include <map>

#include "common/error.hpp"
#include "json.hpp"

namespace gsc::semgraph {

using nlohmann::json;

SemanticGraph::SemanticGraph(std::vector<SemanticNode> nodes,
                             std::vector<Relation> relations,
                             std::vector<std::string> parse_warnings)
    : nodes_(std::move(nodes)),
      relations_(std::move(relations)),
      warnings_(std::move(parse_warnings)) {}

const SemanticNode* SemanticGraph::Find(std::string_view id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(),
                         [&](const SemanticNode& n) { return n.id == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

std::set<std::string> SemanticGraph::NodeIds() const {
  std::set<std::string> ids;
  for (const auto& n : nodes_) ids.insert(n.id);
  return ids;
}

void ValidateTask(const TaskSpec& task) {
  if (task.kind == TaskKind::kNarrow && task.objective_labels.size() != 1) {
    Fail(ErrorCode::kValidation,
         "narrow-sense task needs exactly one objective label, got " +
             std::to_string(task.objective_labels.size()));
  }
  if (task.kind == TaskKind::kGeneral && task.objective_labels.empty()) {
    Fail(ErrorCode::kValidation,
         "general-sense task needs at least one objective label");
  }
}

std::vector<std::string> ValidateGraph(const SemanticGraph& g) {
  std::vector<std::string> out = g.parse_warnings();
  std::set<std::string> ids;
  for (const auto& n : g.nodes()) {
    if (!ids.insert(n.id).second) out.push_back("duplicate node id " + n.id);
    if (n.level < 1 || n.level > 4) {
      out.push_back("node " + n.id + " has level " + std::to_string(n.level) +
                    " outside [1,4]");
    }
  }
  std::set<Relation> seen;
  for (const auto& [from, to] : g.relations()) {
    for (const auto* end : {&from, &to}) {
      if (!ids.count(*end)) {
        out.push_back("relation references unknown node " + *end);
      }
    }
    if (from == to) out.push_back("self-loop on " + from);
    if (!seen.insert({from, to}).second) {
      out.push_back("duplicate relation (" + from + "," + to + ")");
    }
  }
  return out;
}

SemanticGraph InduceSubgraph(const SemanticGraph& g, const LabelSet& labels) {
  auto violations = ValidateGraph(g);
  if (!violations.empty()) {
    Fail(ErrorCode::kValidation, "invalid semantic graph: " + violations.front());
  }
  std::vector<SemanticNode> kept;
  std::set<std::string> ids;
  for (const auto& n : g.nodes()) {
    bool hit = std::any_of(n.tags.begin(), n.tags.end(),
                           [&](const std::string& t) { return labels.count(t); });
    if (hit) {
      kept.push_back(n);
      ids.insert(n.id);
    }
  }
  std::vector<Relation> rels;
  for (const auto& r : g.relations()) {
    if (ids.count(r.first) && ids.count(r.second)) rels.push_back(r);
  }
  return SemanticGraph(std::move(kept), std::move(rels));
}

SemanticGraph TaskSubgraph(const SemanticGraph& g, const TaskSpec& task) {
  ValidateTask(task);
  return InduceSubgraph(g, task.objective_labels);
}

SemanticGraph PerceptualSubgraph(const SemanticGraph& g, const TaskSpec& task) {
  ValidateTask(task);
  return InduceSubgraph(g, task.perceptual_labels);
}

namespace {

const std::set<std::string> kNodeKeys = {"id", "label", "level", "tags"};
const std::set<std::string> kGraphKeys = {"nodes", "relations"};

template <typename T>
T Required(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) {
    Fail(ErrorCode::kParse, path + ": missing required field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kParse, path + "." + key + ": wrong type");
  }
}

}  // namespace

SemanticGraph ParseGraphJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail(ErrorCode::kParse, "$: expected an object");

  std::vector<std::string> warnings;
  for (const auto& [key, _] : doc.items()) {
    if (!kGraphKeys.count(key)) warnings.push_back("unknown field $." + key);
  }

  std::vector<SemanticNode> nodes;
  if (doc.contains("nodes")) {
    if (!doc["nodes"].is_array()) Fail(ErrorCode::kParse, "$.nodes: expected an array");
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
      const json& jn = doc["nodes"][i];
      std::string path = "$.nodes[" + std::to_string(i) + "]";
      if (!jn.is_object()) Fail(ErrorCode::kParse, path + ": expected an object");
      for (const auto& [key, _] : jn.items()) {
        if (!kNodeKeys.count(key)) warnings.push_back("unknown field " + path + "." + key);
      }
      SemanticNode n;
      n.id = Required<std::string>(jn, "id", path);
      n.label = jn.contains("label") ? Required<std::string>(jn, "label", path) : n.id;
      n.level = Required<int>(jn, "level", path);
      if (jn.contains("tags")) {
        auto tags = Required<std::vector<std::string>>(jn, "tags", path);
        n.tags = LabelSet(tags.begin(), tags.end());
      }
      nodes.push_back(std::move(n));
    }
  }

  std::vector<Relation> rels;
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array()) {
      Fail(ErrorCode::kParse, "$.relations: expected an array");
    }
    for (std::size_t i = 0; i < doc["relations"].size(); ++i) {
      const json& jr = doc["relations"][i];
      if (!jr.is_array() || jr.size() != 2 || !jr[0].is_string() ||
          !jr[1].is_string()) {
        Fail(ErrorCode::kParse, "$.relations[" + std::to_string(i) +
                                    "]: expected [from, to] strings");
      }
      rels.emplace_back(jr[0].get<std::string>(), jr[1].get<std::string>());
    }
  }
  return SemanticGraph(std::move(nodes), std::move(rels), std::move(warnings));
}

std::string GraphToJson(const SemanticGraph& g) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : g.nodes()) {
    doc["nodes"].push_back({{"id", n.id},
                            {"label", n.label},
                            {"level", n.level},
                            {"tags", std::vector<std::string>(n.tags.begin(), n.tags.end())}});
  }
  doc["relations"] = json::array();
  for (const auto& [a, b] : g.relations()) doc["relations"].push_back({a, b});
  return doc.dump(2);
}

}  // namespace gsc::semgraph
