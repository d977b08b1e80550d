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

// Test helpers: tiny graph builders, a random graph suite and brute-force
// walk enumeration written against the flat edge list only, so it shares no
// code with the adjacency-based implementation under test.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <unistd.h>

#include "core/common.hpp"
#include "core/graph.hpp"
#include "core/metrics.hpp"
#include "core/paths.hpp"

namespace kgtest {

using kgpath::EntityId;
using kgpath::KnowledgeGraph;
using kgpath::RelationId;
using kgpath::RelationPath;
using kgpath::Triplet;

using Fact = std::array<std::string, 3>;

inline KnowledgeGraph make_graph(const std::vector<Fact>& facts,
                                 bool inverse = false) {
  kgpath::GraphBuilder b;
  for (const auto& f : facts) b.add(f[0], f[1], f[2]);
  KnowledgeGraph g = b.build();
  return inverse ? kgpath::add_inverse_edges(g) : g;
}

// {A r1 B, B r2 C, A r1 D, D r2 C, A r3 C}
inline std::vector<Fact> t1_facts() {
  return {{"A", "r1", "B"}, {"B", "r2", "C"}, {"A", "r1", "D"},
          {"D", "r2", "C"}, {"A", "r3", "C"}};
}

inline std::vector<Fact> t2_facts() {
  auto f = t1_facts();
  f.push_back({"B", "r2", "E"});
  return f;
}

inline EntityId ent(const KnowledgeGraph& g, const std::string& key) {
  return *g.vocab().find_entity(key);
}

inline RelationId rel(const KnowledgeGraph& g, const std::string& key) {
  return *g.vocab().find_relation(key);
}

inline Triplet trip(const KnowledgeGraph& g, const std::string& h,
                    const std::string& r, const std::string& t) {
  return {ent(g, h), rel(g, r), ent(g, t)};
}

inline RelationPath rpath(const KnowledgeGraph& g,
                          const std::vector<std::string>& keys) {
  RelationPath rp;
  for (const auto& k : keys) rp.relations.push_back(rel(g, k));
  return rp;
}

struct Walk {
  std::vector<EntityId> entities;
  std::vector<RelationId> relations;
};

// Every walk with exactly `len` steps over g.edges(), skipping `excluded`.
// start == nullopt enumerates walks from every entity.
inline std::vector<Walk> walks(const KnowledgeGraph& g,
                               std::optional<EntityId> start, std::size_t len,
                               const std::vector<Triplet>& excluded) {
  std::vector<Triplet> edges;
  for (const Triplet& e : g.edges()) {
    if (std::find(excluded.begin(), excluded.end(), e) == excluded.end()) {
      edges.push_back(e);
    }
  }
  std::vector<Walk> frontier;
  for (std::uint32_t u = 0; u < g.entity_count(); ++u) {
    if (start && start->value != u) continue;
    frontier.push_back({{EntityId{u}}, {}});
  }
  for (std::size_t step = 0; step < len; ++step) {
    std::vector<Walk> next;
    for (const Walk& w : frontier) {
      for (const Triplet& e : edges) {
        if (e.head != w.entities.back()) continue;
        Walk x = w;
        x.entities.push_back(e.tail);
        x.relations.push_back(e.relation);
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

// The query edge and, with inverse edges present, its mirror.
inline std::vector<Triplet> query_edges(const KnowledgeGraph& g,
                                        const Triplet& q) {
  std::vector<Triplet> out{q};
  if (g.has_inverse()) out.push_back({q.tail, q.relation.inverse(), q.head});
  return out;
}

// Exact ratio n / d kept as integers.
struct Frac {
  std::uint64_t n = 0;
  std::uint64_t d = 0;
};

struct OracleMetrics {
  std::uint64_t support = 0;
  Frac coverage_head, coverage_tail, confidence_head, confidence_tail;
};

// Definitions written directly from the walk sets.
inline OracleMetrics oracle_metrics(const KnowledgeGraph& g, const Triplet& q,
                                    const RelationPath& rp) {
  const auto ex = query_edges(g, q);
  const std::size_t n = rp.length();
  OracleMetrics m;
  std::uint64_t from_h = 0, matching_from_h_not_h = 0;
  for (const Walk& w : walks(g, q.head, n, ex)) {
    ++from_h;
    const bool match = w.relations == rp.relations;
    if (match && w.entities.back() == q.tail) ++m.support;
    if (match && w.entities.back() != q.head) ++matching_from_h_not_h;
  }
  std::uint64_t into_t = 0, matching_into_t_not_t = 0;
  for (const Walk& w : walks(g, std::nullopt, n, ex)) {
    if (w.entities.back() != q.tail) continue;
    ++into_t;
    if (w.relations == rp.relations && w.entities.front() != q.tail) {
      ++matching_into_t_not_t;
    }
  }
  m.coverage_head = {m.support, from_h};
  m.coverage_tail = {m.support, into_t};
  // Confidence counts arrivals inside the destination set, which omits the
  // tail itself when head == tail.
  const std::uint64_t inside = q.head == q.tail ? 0 : m.support;
  m.confidence_head = {inside, matching_from_h_not_h};
  m.confidence_tail = {inside, matching_into_t_not_t};
  return m;
}

// Tallies from one enumeration of every walk of 1..max_len steps, from every
// start, over the flat edge list. Keys encode relation sequences.
struct WalkTally {
  struct Counts {
    std::uint64_t head_to_tail = 0;
    std::uint64_t head_not_head = 0;
    std::uint64_t into_tail_not_tail = 0;
  };
  std::vector<std::uint64_t> from_head;
  std::vector<std::uint64_t> into_tail;
  std::unordered_map<std::uint64_t, Counts> by_path;
  std::uint64_t radix = 0;

  std::uint64_t key(const std::vector<RelationId>& rels) const {
    std::uint64_t k = 0;
    for (const RelationId& r : rels) k = k * radix + r.dense() + 1;
    return k;
  }
};

inline WalkTally tally_walks(const KnowledgeGraph& g, const Triplet& q,
                             std::size_t max_len) {
  const auto ex = query_edges(g, q);
  std::vector<std::vector<Triplet>> out(g.entity_count());
  for (const Triplet& e : g.edges()) {
    if (std::find(ex.begin(), ex.end(), e) == ex.end()) {
      out[e.head.value].push_back(e);
    }
  }
  WalkTally t;
  t.from_head.assign(max_len + 1, 0);
  t.into_tail.assign(max_len + 1, 0);
  t.radix = 2 * g.relation_count() + 1;
  std::vector<std::uint64_t> keys(max_len + 1, 0);
  std::function<void(EntityId, EntityId, std::size_t)> dfs =
      [&](EntityId start, EntityId at, std::size_t depth) {
        if (depth == max_len) return;
        for (const Triplet& e : out[at.value]) {
          const std::size_t n = depth + 1;
          keys[n] = keys[depth] * t.radix + e.relation.dense() + 1;
          const bool from_h = start == q.head;
          const bool into_t = e.tail == q.tail;
          if (from_h) ++t.from_head[n];
          if (into_t) ++t.into_tail[n];
          if (from_h || into_t) {
            auto& c = t.by_path[keys[n]];
            if (from_h && into_t) ++c.head_to_tail;
            if (from_h && e.tail != q.head) ++c.head_not_head;
            if (into_t && start != q.tail) ++c.into_tail_not_tail;
          }
          dfs(start, e.tail, n);
        }
      };
  for (std::uint32_t u = 0; u < g.entity_count(); ++u) {
    dfs(EntityId{u}, EntityId{u}, 0);
  }
  return t;
}

inline OracleMetrics oracle_metrics(const WalkTally& t, const Triplet& q,
                                    const RelationPath& rp) {
  const std::size_t n = rp.length();
  OracleMetrics m;
  WalkTally::Counts c;
  if (auto it = t.by_path.find(t.key(rp.relations)); it != t.by_path.end()) {
    c = it->second;
  }
  m.support = c.head_to_tail;
  m.coverage_head = {c.head_to_tail, t.from_head[n]};
  m.coverage_tail = {c.head_to_tail, t.into_tail[n]};
  const std::uint64_t inside = q.head == q.tail ? 0 : c.head_to_tail;
  m.confidence_head = {inside, c.head_not_head};
  m.confidence_tail = {inside, c.into_tail_not_tail};
  return m;
}

// Zero denominators compare as value 0.
inline bool same_ratio(const kgpath::Ratio& r, const Frac& f) {
  if (f.d == 0 || f.n == 0) return r.numerator == 0 || r.denominator == 0;
  if (r.denominator == 0) return false;
  return static_cast<unsigned __int128>(r.numerator) * f.d ==
         static_cast<unsigned __int128>(f.n) * r.denominator;
}

struct RandomGraph {
  KnowledgeGraph graph;
  std::vector<Triplet> queries;
};

// Oracle-scale graph: <= 25 entities, <= 5 relations, <= 120 directed
// edges (inverse edges counted). Queries mix true facts and random triplets.
inline RandomGraph random_graph(std::uint64_t seed, bool inverse,
                                std::size_t n_queries = 4) {
  kgpath::Rng rng(seed);
  const std::size_t n_ent = 3 + rng.below(23);
  const std::size_t n_rel = 1 + rng.below(5);
  const std::size_t cap = inverse ? 60 : 120;
  const std::size_t n_edges = 1 + rng.below(std::min(cap, n_ent * n_ent));
  kgpath::GraphBuilder b;
  for (std::size_t i = 0; i < n_ent; ++i) b.add_entity("e" + std::to_string(i));
  for (std::size_t i = 0; i < n_rel; ++i) {
    b.vocab().intern_relation("r" + std::to_string(i));
  }
  for (std::size_t i = 0; i < n_edges; ++i) {
    b.add("e" + std::to_string(rng.below(n_ent)),
          "r" + std::to_string(rng.below(n_rel)),
          "e" + std::to_string(rng.below(n_ent)));
  }
  RandomGraph out{b.build(), {}};
  if (inverse) out.graph = kgpath::add_inverse_edges(out.graph);
  const auto facts = out.graph.facts();
  for (std::size_t i = 0; i < n_queries; ++i) {
    if (i % 2 == 0 && !facts.empty()) {
      out.queries.push_back(facts[rng.below(facts.size())]);
    } else {
      out.queries.push_back(
          {EntityId{static_cast<std::uint32_t>(rng.below(n_ent))},
           RelationId{static_cast<std::uint32_t>(rng.below(n_rel))},
           EntityId{static_cast<std::uint32_t>(rng.below(n_ent))}});
    }
  }
  return out;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("kgpath_test_" + name + "_" +
              std::to_string(static_cast<unsigned long>(::getpid())));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace kgtest
