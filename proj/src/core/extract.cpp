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

#include "core/extract.hpp"

#include <algorithm>
#include <deque>

#include "core/common.hpp"

namespace kgpath {
namespace {

struct Predecessor {
  EntityId entity;
  RelationId relation;
};

ReasoningPath build_path(const std::vector<Predecessor>& prev,
                         const std::vector<char>& has_prev, EntityId head,
                         EntityId last, RelationId closing, EntityId tail) {
  ReasoningPath path;
  EntityId cur = last;
  path.entities.push_back(tail);
  path.relations.push_back(closing);
  path.entities.push_back(cur);
  while (cur != head) {
    // Every non-head entity on the BFS tree has a predecessor.
    if (!has_prev[cur.value]) {
      throw Error(ErrorCode::kInternal, "broken predecessor chain");
    }
    path.relations.push_back(prev[cur.value].relation);
    cur = prev[cur.value].entity;
    path.entities.push_back(cur);
  }
  std::reverse(path.entities.begin(), path.entities.end());
  std::reverse(path.relations.begin(), path.relations.end());
  return path;
}

}  // namespace

std::vector<ReasoningPath> extract_paths(const KnowledgeGraph& g,
                                         const Triplet& query,
                                         FilterSession& filter,
                                         const ExtractOptions& options) {
  if (options.max_depth < 1) {
    throw Error(ErrorCode::kConfig, "search depth L must be >= 1");
  }
  if (options.max_paths < 1) {
    throw Error(ErrorCode::kConfig, "path budget M must be >= 1");
  }
  if (!g.has_entity(query.head)) {
    throw Error(ErrorCode::kLookup,
                "unknown head entity " + std::to_string(query.head.value));
  }
  std::vector<ReasoningPath> out;
  if (!g.has_entity(query.tail)) return out;

  const auto max_paths = static_cast<std::size_t>(options.max_paths);
  const EdgeExclusions excluded = query_exclusions(g, query);
  std::vector<char> visited(g.entity_count(), 0);
  std::vector<char> has_prev(g.entity_count(), 0);
  std::vector<Predecessor> prev(g.entity_count());
  std::deque<std::pair<EntityId, int>> queue;
  queue.emplace_back(query.head, 0);
  visited[query.head.value] = 1;

  while (!queue.empty() && out.size() <= max_paths) {
    const auto [u, depth] = queue.front();
    queue.pop_front();
    if (depth >= options.max_depth) continue;
    for (const auto& edge : neighbors_by_relation_frequency(g, u)) {
      const EntityId v = edge.target;
      if (excluded.excludes(u, edge.relation, v)) continue;
      if (v == query.tail) {
        ReasoningPath path =
            build_path(prev, has_prev, query.head, u, edge.relation, v);
        if (filter.accepts(query, path)) out.push_back(std::move(path));
      } else if (!visited[v.value]) {
        visited[v.value] = 1;
        has_prev[v.value] = 1;
        prev[v.value] = {u, edge.relation};
        queue.emplace_back(v, depth + 1);
      }
      if (out.size() > max_paths) break;
    }
  }
  if (out.size() > max_paths) out.resize(max_paths);
  return out;
}

std::vector<ReasoningPath> extract_paths(const KnowledgeGraph& g,
                                         const Triplet& query,
                                         const PathFilter& filter,
                                         const ExtractOptions& options,
                                         const KnowledgeGraph* reversed) {
  FilterSession session(g, filter, reversed, options.max_metric_length);
  return extract_paths(g, query, session, options);
}

}  // namespace kgpath
