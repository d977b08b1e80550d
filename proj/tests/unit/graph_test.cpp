// Copyright 2026 The kgpath Authors.
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

#include <algorithm>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "support.hpp"

using namespace kgpath;
using kgtest::make_graph;

TEST_CASE("empty triplet file gives an empty graph") {
  auto dir = kgtest::temp_dir("graph_empty");
  kgtest::write_file(dir / "g.txt", "");
  KnowledgeGraph g = load_graph((dir / "g.txt").string());
  CHECK(g.entity_count() == 0);
  CHECK(g.triplet_count() == 0);
  CHECK(add_inverse_edges(g).edge_count() == 0);
}

TEST_CASE("duplicate lines are dropped and counted") {
  auto dir = kgtest::temp_dir("graph_dup");
  kgtest::write_file(dir / "g.txt", "A\tr1\tB\nA\tr1\tB\n");
  KnowledgeGraph g = load_graph((dir / "g.txt").string());
  CHECK(g.triplet_count() == 1);
  CHECK(g.duplicates_dropped() == 1);
}

TEST_CASE("malformed line reports its line number") {
  auto dir = kgtest::temp_dir("graph_bad");
  kgtest::write_file(dir / "g.txt", "A\tr1\tB\nA\tr1\n");
  try {
    load_graph((dir / "g.txt").string());
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("descriptions attach and fall back to de-underscored keys") {
  auto dir = kgtest::temp_dir("graph_desc");
  kgtest::write_file(dir / "g.txt", "a_b\tr_c\td\n");
  kgtest::write_file(dir / "e.txt", "d\tDelta Entity\n");
  KnowledgeGraph g = load_graph((dir / "g.txt").string(),
                                (dir / "e.txt").string(), std::nullopt);
  const auto& v = g.vocab();
  CHECK(v.entity_description(*v.find_entity("a_b")) == "a b");
  CHECK(v.entity_description(*v.find_entity("d")) == "Delta Entity");
  CHECK(v.relation_description(*v.find_relation("r_c")) == "r c");
}

TEST_CASE("inverse augmentation mirrors every edge") {
  KnowledgeGraph g = make_graph({{"A", "r1", "B"}});
  KnowledgeGraph gi = add_inverse_edges(g);
  const auto A = kgtest::ent(gi, "A"), B = kgtest::ent(gi, "B");
  const auto r1 = kgtest::rel(gi, "r1");
  CHECK(gi.contains({B, r1.inverse(), A}));
  CHECK(gi.triplet_count() == 1);
  CHECK(gi.edge_count() == 2);
  CHECK(gi.relation_frequency(r1) == gi.relation_frequency(r1.inverse()));
  CHECK(*gi.vocab().find_relation("r1^-1") == r1.inverse());
  CHECK_THROWS_AS(add_inverse_edges(gi), Error);

  auto rg = kgtest::random_graph(7, true);
  for (const Triplet& e : rg.graph.edges()) {
    CHECK(rg.graph.contains({e.tail, e.relation.inverse(), e.head}));
  }
}

TEST_CASE("reverse_graph flips edges and is an involution") {
  KnowledgeGraph g = make_graph({{"A", "r1", "B"}});
  KnowledgeGraph r = reverse_graph(g);
  CHECK(r.contains(kgtest::trip(r, "B", "r1", "A")));
  CHECK_FALSE(r.contains(kgtest::trip(r, "A", "r1", "B")));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 2 == 0);
    KnowledgeGraph rr = reverse_graph(reverse_graph(rg.graph));
    CHECK(rr.same_structure(rg.graph));
    CHECK(reverse_graph(rg.graph).frequency_table() ==
          rg.graph.frequency_table());
  }
}

TEST_CASE("neighbors are ordered by ascending relation frequency") {
  std::vector<kgtest::Fact> facts{{"u", "common", "x0"}, {"u", "rare", "y"}};
  for (int i = 1; i < 100; ++i) {
    facts.push_back({"n" + std::to_string(i), "common", "x" + std::to_string(i)});
  }
  facts.push_back({"z", "rare", "y"});
  KnowledgeGraph g = make_graph(facts);
  auto nb = neighbors_by_relation_frequency(g, kgtest::ent(g, "u"));
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].relation == kgtest::rel(g, "rare"));
  CHECK(neighbors_by_relation_frequency(g, kgtest::ent(g, "y")).empty());
  CHECK_THROWS_AS(neighbors_by_relation_frequency(g, EntityId{100000}), Error);

  // Permutation of the adjacency list, sorted like a naive sort would.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 3 == 0);
    const KnowledgeGraph& h = rg.graph;
    for (std::uint32_t u = 0; u < h.entity_count(); ++u) {
      std::vector<KnowledgeGraph::Edge> want;
      for (const Triplet& e : h.edges()) {
        if (e.head.value == u) want.push_back({e.relation, e.tail});
      }
      std::sort(want.begin(), want.end(), [&](const auto& a, const auto& b) {
        auto key = [&](const KnowledgeGraph::Edge& e) {
          return std::tuple(h.relation_frequency(e.relation), e.relation.dense(),
                            e.target.value);
        };
        return key(a) < key(b);
      });
      auto got = neighbors_by_relation_frequency(h, EntityId{u});
      CHECK(std::vector<KnowledgeGraph::Edge>(got.begin(), got.end()) == want);
    }
  }
}

TEST_CASE("interning round-trips keys") {
  auto rg = kgtest::random_graph(3, true);
  const auto& v = rg.graph.vocab();
  for (std::uint32_t i = 0; i < v.entity_count(); ++i) {
    CHECK(v.find_entity(v.entity_key(EntityId{i}))->value == i);
  }
  for (std::uint32_t i = 0; i < v.relation_count(); ++i) {
    RelationId r{i, Direction::kInverse};
    CHECK(*v.find_relation(v.relation_label(r)) == r);
  }
}

TEST_CASE("inductive split requires disjoint entities and known relations") {
  KnowledgeGraph train = make_graph({{"A", "r1", "B"}});
  CHECK_NOTHROW(check_inductive(train, make_graph({{"C", "r1", "D"}})));
  CHECK_THROWS_AS(check_inductive(train, make_graph({{"A", "r1", "D"}})), Error);
  CHECK_THROWS_AS(check_inductive(train, make_graph({{"C", "r9", "D"}})), Error);
}
