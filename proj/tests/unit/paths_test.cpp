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
#include <set>

#include "core/extract.hpp"
#include "core/paths.hpp"
#include "support.hpp"

using namespace kgpath;
using kgtest::ent;
using kgtest::make_graph;
using kgtest::rel;
using kgtest::trip;

TEST_CASE("walk counts on the two-route graph") {
  KnowledgeGraph g = make_graph(kgtest::t1_facts());
  const Triplet q = trip(g, "A", "r3", "C");
  WalkCountTable w =
      count_walks_by_length(g, ent(g, "A"), 2, query_exclusions(g, q));
  CHECK(w.at(ent(g, "C"), 2) == 2);
  CHECK(w.at(ent(g, "C"), 1) == 0);
  CHECK(w.at(ent(g, "A"), 0) == 1);

  WalkCountTable zero = count_walks_by_length(g, ent(g, "A"), 0);
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
    CHECK(zero.at(EntityId{e}, 0) == (e == ent(g, "A").value ? 1u : 0u));
  }
}

TEST_CASE("walk counts on a chain") {
  KnowledgeGraph g =
      make_graph({{"A", "r", "B"}, {"B", "r", "C"}, {"C", "r", "D"}});
  WalkCountTable w = count_walks_by_length(g, ent(g, "A"), 5);
  for (std::size_t d = 0; d <= 5; ++d) {
    CHECK(w.at(ent(g, "D"), d) == (d == 3 ? 1u : 0u));
  }
  CHECK_THROWS_AS(count_walks_by_length(g, EntityId{99}, 2), Error);
}

TEST_CASE("brute-force enumerator on the two-route graph") {
  KnowledgeGraph g = make_graph(kgtest::t1_facts());
  const Triplet q = trip(g, "A", "r3", "C");
  const auto ex = query_exclusions(g, q);
  auto two = enumerate_paths_bruteforce(g, ent(g, "A"), ent(g, "C"), 2, ex);
  std::set<std::string> lines;
  for (const auto& p : two) lines.insert(path_to_line(g, p));
  CHECK(lines == std::set<std::string>{"A\tr1\tB\tr2\tC", "A\tr1\tD\tr2\tC"});
  CHECK(enumerate_paths_bruteforce(g, ent(g, "A"), ent(g, "C"), 1, ex).empty());
  CHECK(enumerate_paths_bruteforce(g, ent(g, "A"), ent(g, "C"), 0, ex).empty());
}

TEST_CASE("extraction on the two-route graph") {
  KnowledgeGraph g = make_graph(kgtest::t1_facts());
  const Triplet q = trip(g, "A", "r3", "C");
  auto paths = extract_paths(g, q, PathFilter{}, {5, 10});
  // The tail is never marked visited, so both middles close a path.
  std::set<std::string> lines;
  for (const auto& p : paths) lines.insert(path_to_line(g, p));
  const std::set<std::string> allowed{"A\tr1\tB\tr2\tC", "A\tr1\tD\tr2\tC"};
  CHECK_FALSE(lines.empty());
  for (const auto& l : lines) CHECK(allowed.contains(l));
  CHECK_FALSE(lines.contains("A\tr3\tC"));
  CHECK(lines == allowed);

  auto one = extract_paths(g, q, PathFilter{}, {5, 1});
  CHECK(one.size() == 1);
  CHECK(extract_paths(g, q, PathFilter{}, {5, 10}) == paths);
}

TEST_CASE("only the query edge between head and tail gives no path") {
  KnowledgeGraph g = make_graph({{"A", "r", "B"}}, true);
  CHECK(extract_paths(g, trip(g, "A", "r", "B"), PathFilter{}, {5, 3}).empty());
  KnowledgeGraph loop = make_graph({{"A", "r", "A"}}, true);
  CHECK(extract_paths(loop, trip(loop, "A", "r", "A"), PathFilter{}, {5, 3})
            .empty());
}

TEST_CASE("extraction argument errors") {
  KnowledgeGraph g = make_graph(kgtest::t1_facts());
  const Triplet q = trip(g, "A", "r3", "C");
  try {
    extract_paths(g, q, PathFilter{}, {0, 3});
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
  CHECK_THROWS_AS(extract_paths(g, q, PathFilter{}, {5, 0}), Error);
  CHECK_THROWS_AS(
      extract_paths(g, {EntityId{77}, q.relation, q.tail}, PathFilter{}, {5, 3}),
      Error);
}

TEST_CASE("path lines round-trip") {
  KnowledgeGraph g = make_graph(kgtest::t1_facts(), true);
  ReasoningPath p{{ent(g, "C"), ent(g, "B"), ent(g, "A")},
                  {rel(g, "r2").inverse(), rel(g, "r1").inverse()}};
  const std::string line = path_to_line(g, p);
  CHECK(line == "C\tr2^-1\tB\tr1^-1\tA");
  CHECK(path_from_line(g, line) == p);
  CHECK_THROWS_AS(path_from_line(g, "C\tr2"), Error);
  CHECK_THROWS_AS(path_from_line(g, "C\tnope\tB"), Error);
}

TEST_CASE("walk table equals brute force on random graphs") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 2 == 1);
    const Triplet q = rg.queries.front();
    const auto ex = kgtest::query_edges(rg.graph, q);
    WalkCountTable w = count_walks_by_length(rg.graph, q.head, 4,
                                             query_exclusions(rg.graph, q));
    for (std::size_t d = 0; d <= 4; ++d) {
      std::vector<std::uint64_t> want(rg.graph.entity_count(), 0);
      for (const auto& walk : kgtest::walks(rg.graph, q.head, d, ex)) {
        ++want[walk.entities.back().value];
      }
      for (std::uint32_t e = 0; e < rg.graph.entity_count(); ++e) {
        CHECK(w.at(EntityId{e}, d) == want[e]);
      }
    }
  }
}
