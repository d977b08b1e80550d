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

#include "core/paths.hpp"

#include <algorithm>
#include <set>

#include "core/common.hpp"
#include "core/text.hpp"

namespace kgpath {

RelationPath relation_path_of(const ReasoningPath& path) {
  return RelationPath{path.relations};
}

RelationPath reversed(const RelationPath& rp) {
  return RelationPath{{rp.relations.rbegin(), rp.relations.rend()}};
}

EdgeExclusions EdgeExclusions::swapped() const {
  std::vector<Triplet> out = edges_;
  for (Triplet& e : out) std::swap(e.head, e.tail);
  return EdgeExclusions(std::move(out));
}

EdgeExclusions query_exclusions(const KnowledgeGraph& g, const Triplet& query) {
  std::vector<Triplet> edges{query};
  if (g.has_inverse()) {
    edges.push_back({query.tail, query.relation.inverse(), query.head});
  }
  // Stored edges of a reversed graph point the other way.
  EdgeExclusions out(std::move(edges));
  return g.is_reversed() ? out.swapped() : out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kInternal, "walk count overflow");
  }
  return out;
}

WalkCountTable::WalkCountTable(std::size_t entity_count, std::size_t max_len)
    : entity_count_(entity_count),
      max_len_(max_len),
      counts_(entity_count * (max_len + 1), 0) {}

std::uint64_t WalkCountTable::at(EntityId e, std::size_t depth) const {
  if (e.value >= entity_count_ || depth > max_len_) return 0;
  return counts_[e.value * (max_len_ + 1) + depth];
}

std::uint64_t& WalkCountTable::at(EntityId e, std::size_t depth) {
  return counts_[e.value * (max_len_ + 1) + depth];
}

std::uint64_t WalkCountTable::total(std::size_t depth) const {
  std::uint64_t sum = 0;
  for (std::uint32_t e = 0; e < entity_count_; ++e) {
    sum = checked_add(sum, at(EntityId{e}, depth));
  }
  return sum;
}

WalkCountTable count_walks_by_length(const KnowledgeGraph& g, EntityId source,
                                     std::size_t max_len,
                                     const EdgeExclusions& excluded) {
  if (!g.has_entity(source)) {
    throw Error(ErrorCode::kLookup,
                "unknown source entity " + std::to_string(source.value));
  }
  WalkCountTable table(g.entity_count(), max_len);
  table.at(source, 0) = 1;
  // Only entities reached at depth d are expanded for depth d + 1.
  std::vector<EntityId> frontier{source};
  for (std::size_t d = 0; d < max_len; ++d) {
    std::vector<EntityId> next;
    for (EntityId u : frontier) {
      const std::uint64_t here = table.at(u, d);
      for (const auto& edge : g.neighbors(u)) {
        if (excluded.excludes(u, edge.relation, edge.target)) continue;
        std::uint64_t& slot = table.at(edge.target, d + 1);
        if (slot == 0) next.push_back(edge.target);
        slot = checked_add(slot, here);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  return table;
}

namespace {

void dfs_walks(const KnowledgeGraph& g, EntityId t, std::size_t exact_len,
               const EdgeExclusions& excluded, ReasoningPath& current,
               std::vector<ReasoningPath>& out) {
  const EntityId u = current.entities.back();
  if (current.length() == exact_len) {
    if (u == t) out.push_back(current);
    return;
  }
  for (const auto& edge : g.neighbors(u)) {
    if (excluded.excludes(u, edge.relation, edge.target)) continue;
    current.entities.push_back(edge.target);
    current.relations.push_back(edge.relation);
    dfs_walks(g, t, exact_len, excluded, current, out);
    current.entities.pop_back();
    current.relations.pop_back();
  }
}

}  // namespace

std::vector<ReasoningPath> enumerate_paths_bruteforce(
    const KnowledgeGraph& g, EntityId h, EntityId t, std::size_t exact_len,
    const EdgeExclusions& excluded) {
  if (g.entity_count() > 30 || exact_len > 6) {
    throw Error(ErrorCode::kInvalidArgument,
                "brute-force enumeration limited to 30 entities and length 6");
  }
  if (!g.has_entity(h)) throw Error(ErrorCode::kLookup, "unknown head entity");
  std::vector<ReasoningPath> out;
  if (exact_len == 0 || !g.has_entity(t)) return out;
  ReasoningPath current;
  current.entities.push_back(h);
  dfs_walks(g, t, exact_len, excluded, current, out);
  return out;
}

bool is_simple(const ReasoningPath& path) {
  std::set<EntityId> seen(path.entities.begin(), path.entities.end());
  return seen.size() == path.entities.size();
}

std::vector<std::string> path_tokens(const KnowledgeGraph& g,
                                     const ReasoningPath& path) {
  std::vector<std::string> out;
  out.reserve(path.entities.size() + path.relations.size());
  for (std::size_t i = 0; i < path.entities.size(); ++i) {
    out.push_back(g.vocab().entity_key(path.entities[i]));
    if (i < path.relations.size()) {
      out.push_back(g.vocab().relation_label(path.relations[i]));
    }
  }
  return out;
}

std::string path_to_line(const KnowledgeGraph& g, const ReasoningPath& path) {
  return text::join(path_tokens(g, path), "\t");
}

ReasoningPath path_from_line(const KnowledgeGraph& g, const std::string& line) {
  std::vector<std::string> cols = text::split(line, '\t');
  if (cols.size() < 3 || cols.size() % 2 == 0) {
    throw Error(ErrorCode::kParse, "malformed path line: " + line);
  }
  ReasoningPath path;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i % 2 == 0) {
      auto e = g.vocab().find_entity(cols[i]);
      if (!e || !g.has_entity(*e)) {
        throw Error(ErrorCode::kParse, "unknown entity in path: " + cols[i]);
      }
      path.entities.push_back(*e);
    } else {
      auto r = g.vocab().find_relation(cols[i]);
      if (!r) throw Error(ErrorCode::kParse, "unknown relation in path: " + cols[i]);
      path.relations.push_back(*r);
    }
  }
  return path;
}

}  // namespace kgpath
