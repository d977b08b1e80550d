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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace kgpath {

// Alternating walk e_0 -r_1-> e_1 ... -r_n-> e_n with n >= 1.
struct ReasoningPath {
  std::vector<EntityId> entities;
  std::vector<RelationId> relations;

  std::size_t length() const { return relations.size(); }
  bool operator==(const ReasoningPath&) const = default;
  auto operator<=>(const ReasoningPath&) const = default;
};

struct RelationPath {
  std::vector<RelationId> relations;

  std::size_t length() const { return relations.size(); }
  bool operator==(const RelationPath&) const = default;
  auto operator<=>(const RelationPath&) const = default;
};

RelationPath relation_path_of(const ReasoningPath& path);
RelationPath reversed(const RelationPath& rp);

// Directed edges a search must not traverse.
class EdgeExclusions {
 public:
  EdgeExclusions() = default;
  explicit EdgeExclusions(std::vector<Triplet> edges)
      : edges_(std::move(edges)) {}

  bool excludes(EntityId u, RelationId r, EntityId v) const {
    for (const Triplet& e : edges_) {
      if (e.head == u && e.relation == r && e.tail == v) return true;
    }
    return false;
  }
  const std::vector<Triplet>& edges() const { return edges_; }
  // The same edges with source and target swapped, for reversed graphs.
  EdgeExclusions swapped() const;

 private:
  std::vector<Triplet> edges_;
};

// The query fact and, when the graph carries inverse edges, its mirror
// (t, r^-1, h). Both leak the fact being predicted. `query` is given in the
// original orientation; on a reversed graph the stored edges are swapped.
EdgeExclusions query_exclusions(const KnowledgeGraph& g, const Triplet& query);

// counts[e][d] = number of length-d walks from the source to e. Dense over
// entities x depths 0..max_len.
class WalkCountTable {
 public:
  WalkCountTable(std::size_t entity_count, std::size_t max_len);

  std::uint64_t at(EntityId e, std::size_t depth) const;
  std::uint64_t& at(EntityId e, std::size_t depth);
  // Walks of exactly `depth` steps ending anywhere.
  std::uint64_t total(std::size_t depth) const;
  std::size_t max_len() const { return max_len_; }
  std::size_t entity_count() const { return entity_count_; }

 private:
  std::size_t entity_count_;
  std::size_t max_len_;
  std::vector<std::uint64_t> counts_;
};

WalkCountTable count_walks_by_length(const KnowledgeGraph& g, EntityId source,
                                     std::size_t max_len,
                                     const EdgeExclusions& excluded = {});

// Overflow-checked unsigned addition; kInternal on wrap-around.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

// Exhaustive DFS over all walks of exactly `exact_len` steps from h to t.
// Test oracle only: refuses graphs above 30 entities or lengths above 6.
std::vector<ReasoningPath> enumerate_paths_bruteforce(
    const KnowledgeGraph& g, EntityId h, EntityId t, std::size_t exact_len,
    const EdgeExclusions& excluded = {});

bool is_simple(const ReasoningPath& path);

// Line format: entityKey<TAB>relationLabel<TAB>entityKey ...
std::string path_to_line(const KnowledgeGraph& g, const ReasoningPath& path);
// kParse on malformed lines or unknown keys.
ReasoningPath path_from_line(const KnowledgeGraph& g, const std::string& line);
// Key/label tokens in path order.
std::vector<std::string> path_tokens(const KnowledgeGraph& g,
                                     const ReasoningPath& path);

}  // namespace kgpath
