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


#include <doctest.h>

#include <random>

#include "semgraph/semgraph.hpp"
#include "test_util.hpp"

using namespace gsc;
using namespace gsc::semgraph;
using testutil::CodeOf;

namespace {

// A dog picture: the object and its shape/color are task-relevant, the
// emotion it conveys is perceptual.
SemanticGraph DogGraph() {
  std::vector<SemanticNode> nodes = {
      {"dog", "dog", 3, {"object"}},
      {"shape", "pointy ears", 2, {"shape"}},
      {"color", "brown", 1, {"color", "perceptual"}},
      {"emotion", "happy", 4, {"emotion", "perceptual"}},
  };
  std::vector<Relation> rels;
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (a.id != b.id) rels.push_back({a.id, b.id});
    }
  }
  return SemanticGraph(nodes, rels);
}

SemanticGraph RandomGraph(std::mt19937_64& rng, int n) {
  const std::vector<std::string> tags = {"a", "b", "c", "d", "e"};
  std::vector<SemanticNode> nodes;
  for (int i = 0; i < n; ++i) {
    SemanticNode node{"n" + std::to_string(i), "x", 1 + static_cast<int>(rng() % 4), {}};
    for (const auto& t : tags) {
      if (rng() % 3 == 0) node.tags.insert(t);
    }
    nodes.push_back(node);
  }
  std::vector<Relation> rels;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && rng() % 7 == 0) rels.push_back({nodes[i].id, nodes[j].id});
    }
  }
  return SemanticGraph(nodes, rels);
}

// Brute-force induced subgraph.
std::pair<std::set<std::string>, std::set<Relation>> Brute(const SemanticGraph& g,
                                                           const LabelSet& labels) {
  std::set<std::string> ids;
  for (const auto& n : g.nodes()) {
    for (const auto& t : n.tags) {
      if (labels.count(t)) ids.insert(n.id);
    }
  }
  std::set<Relation> rels;
  for (const auto& r : g.relations()) {
    if (ids.count(r.first) && ids.count(r.second)) rels.insert(r);
  }
  return {ids, rels};
}

std::set<Relation> RelSet(const SemanticGraph& g) {
  return {g.relations().begin(), g.relations().end()};
}

}  // namespace

TEST_CASE("ValidateGraph names each violation") {
  SemanticGraph missing({{"a", "a", 1, {}}}, {{"a", "x"}});
  CHECK(ValidateGraph(missing) == std::vector<std::string>{"relation references unknown node x"});
  SemanticGraph loop({{"a", "a", 1, {}}}, {{"a", "a"}});
  CHECK(ValidateGraph(loop) == std::vector<std::string>{"self-loop on a"});
  CHECK(ValidateGraph(DogGraph()).empty());
  SemanticGraph dup({{"a", "a", 1, {}}, {"a", "b", 5, {}}}, {});
  auto v = ValidateGraph(dup);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == "duplicate node id a");
  CHECK(v[1].find("level 5") != std::string::npos);
  SemanticGraph twice({{"a", "a", 1, {}}, {"b", "b", 1, {}}}, {{"a", "b"}, {"a", "b"}});
  CHECK(ValidateGraph(twice) == std::vector<std::string>{"duplicate relation (a,b)"});
}

TEST_CASE("InduceSubgraph on the dog graph") {
  SemanticGraph g = DogGraph();
  SemanticGraph sub = InduceSubgraph(g, {"object", "shape", "color"});
  CHECK(sub.NodeIds() == std::set<std::string>{"dog", "shape", "color"});
  CHECK(sub.relations().size() == 6);
  auto [ids, rels] = Brute(g, {"object", "shape", "color"});
  CHECK(sub.NodeIds() == ids);
  CHECK(RelSet(sub) == rels);
  CHECK(InduceSubgraph(g, {}).empty());
  CHECK(InduceSubgraph(g, {"object", "shape", "color", "emotion", "perceptual"}) == g);
  CHECK(CodeOf([] { InduceSubgraph(SemanticGraph({{"a", "a", 1, {}}}, {{"a", "a"}}), {"x"}); }) ==
        ErrorCode::kValidation);
}

TEST_CASE("Task and perceptual subgraphs") {
  SemanticGraph g = DogGraph();
  TaskSpec narrow{TaskKind::kNarrow, {"object"}, {"perceptual"}};
  CHECK(TaskSubgraph(g, narrow).NodeIds() == std::set<std::string>{"dog"});
  CHECK(PerceptualSubgraph(g, narrow).NodeIds() == std::set<std::string>{"color", "emotion"});

  TaskSpec all{TaskKind::kGeneral, {"object", "shape", "color", "emotion"}, {}};
  CHECK(TaskSubgraph(g, all) == g);
  CHECK(PerceptualSubgraph(g, all).empty());

  TaskSpec overlap{TaskKind::kGeneral, {"object", "color"}, {"color", "emotion"}};
  auto t = TaskSubgraph(g, overlap).NodeIds();
  auto p = PerceptualSubgraph(g, overlap).NodeIds();
  std::set<std::string> both, either;
  std::set_intersection(t.begin(), t.end(), p.begin(), p.end(), std::inserter(both, both.end()));
  std::set_union(t.begin(), t.end(), p.begin(), p.end(), std::inserter(either, either.end()));
  CHECK(both == std::set<std::string>{"color"});
  CHECK(either == Brute(g, {"object", "color", "emotion"}).first);

  CHECK(CodeOf([] { ValidateTask({TaskKind::kNarrow, {"a", "b"}, {}}); }) == ErrorCode::kValidation);
  CHECK(CodeOf([] { ValidateTask({TaskKind::kGeneral, {}, {}}); }) == ErrorCode::kValidation);
  CHECK_NOTHROW(ValidateTask({TaskKind::kNarrow, {"a"}, {}}));
}

TEST_CASE("Induction properties on random graphs") {
  std::mt19937_64 rng(11);
  const std::vector<LabelSet> chain = {{}, {"a"}, {"a", "c"}, {"a", "b", "c"}, {"a", "b", "c", "d", "e"}};
  for (int trial = 0; trial < 40; ++trial) {
    SemanticGraph g = RandomGraph(rng, 1 + static_cast<int>(rng() % 50));
    REQUIRE(ValidateGraph(g).empty());
    SemanticGraph prev;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      SemanticGraph sub = InduceSubgraph(g, chain[i]);
      CHECK(ValidateGraph(sub).empty());
      CHECK(InduceSubgraph(sub, chain[i]) == sub);
      auto [ids, rels] = Brute(g, chain[i]);
      CHECK(sub.NodeIds() == ids);
      CHECK(RelSet(sub) == rels);
      if (i > 0) {
        auto small = prev.NodeIds(), big = sub.NodeIds();
        CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        auto se = RelSet(prev), be = RelSet(sub);
        CHECK(std::includes(be.begin(), be.end(), se.begin(), se.end()));
      }
      prev = sub;
    }
  }
}

TEST_CASE("Graph JSON round trip, warnings and errors") {
  SemanticGraph g = DogGraph();
  CHECK(ParseGraphJson(GraphToJson(g)) == g);
  SemanticGraph w = ParseGraphJson(
      R"({"nodes":[{"id":"a","label":"A","level":2,"tags":["t"],"colour":"red"}],"relations":[],"note":1})");
  CHECK(w.nodes().size() == 1);
  CHECK(w.parse_warnings().size() == 2);
  CHECK(ValidateGraph(w).size() == 2);
  CHECK(CodeOf([] { ParseGraphJson("{"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] { ParseGraphJson(R"({"nodes":[{"id":1}],"relations":[]})"); }) == ErrorCode::kParse);
}
