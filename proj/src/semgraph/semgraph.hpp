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

// Semantic graphs G = (S, R) and their induced subgraphs.
//
// Relevance of a node to a task (or to human perception) is tag membership:
// a node belongs to the subgraph induced by a label set L iff its tags
// intersect L. Relations are unlabeled ordered pairs.

#ifndef GSC_SEMGRAPH_SEMGRAPH_HPP
#define GSC_SEMGRAPH_SEMGRAPH_HPP

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gsc::semgraph {

using LabelSet = std::set<std::string>;

struct SemanticNode {
  std::string id;
  std::string label;
  int level = 1;  // hierarchy level, 1 (low) .. 4 (high)
  LabelSet tags;

  bool operator==(const SemanticNode&) const = default;
};

using Relation = std::pair<std::string, std::string>;

// Immutable once constructed. Construction never fails: invariant violations
// are reported by ValidateGraph() so that fixtures can be inspected.
class SemanticGraph {
 public:
  SemanticGraph() = default;
  SemanticGraph(std::vector<SemanticNode> nodes, std::vector<Relation> relations,
                std::vector<std::string> parse_warnings = {});

  const std::vector<SemanticNode>& nodes() const { return nodes_; }
  const std::vector<Relation>& relations() const { return relations_; }
  // Unknown JSON fields dropped while parsing.
  const std::vector<std::string>& parse_warnings() const { return warnings_; }

  const SemanticNode* Find(std::string_view id) const;
  std::set<std::string> NodeIds() const;
  bool empty() const { return nodes_.empty(); }

  // Structural equality (node order and relation order included).
  bool operator==(const SemanticGraph& o) const {
    return nodes_ == o.nodes_ && relations_ == o.relations_;
  }

 private:
  std::vector<SemanticNode> nodes_;
  std::vector<Relation> relations_;
  std::vector<std::string> warnings_;
};

enum class TaskKind { kNarrow, kGeneral };

// A narrow-sense task carries exactly one objective label; a general-sense
// task carries one or more.
struct TaskSpec {
  TaskKind kind = TaskKind::kGeneral;
  LabelSet objective_labels;
  LabelSet perceptual_labels;
};

// Throws kValidation when the kind/label-count invariant is broken.
void ValidateTask(const TaskSpec& task);

// Empty iff every graph invariant holds. Each entry names the offending node
// or relation.
std::vector<std::string> ValidateGraph(const SemanticGraph& g);

// Nodes whose tags meet `labels`, with the relations among them. Input and
// output orders are preserved. Throws kValidation on an invalid graph.
SemanticGraph InduceSubgraph(const SemanticGraph& g, const LabelSet& labels);

SemanticGraph TaskSubgraph(const SemanticGraph& g, const TaskSpec& task);
SemanticGraph PerceptualSubgraph(const SemanticGraph& g, const TaskSpec& task);

// JSON: {"nodes": [{"id","label","level","tags"}], "relations": [[from,to]]}.
// Unknown fields are dropped and recorded as parse warnings; malformed JSON
// or wrongly-typed required fields throw kParse.
SemanticGraph ParseGraphJson(std::string_view text);
std::string GraphToJson(const SemanticGraph& g);

}  // namespace gsc::semgraph

#endif  // GSC_SEMGRAPH_SEMGRAPH_HPP
