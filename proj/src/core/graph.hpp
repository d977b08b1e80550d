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

// Knowledge graph storage: interned vocabularies, frequency-ordered CSR
// adjacency, inverse-edge augmentation and edge reversal.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgpath {

struct EntityId {
  std::uint32_t value = 0;
  auto operator<=>(const EntityId&) const = default;
};

enum class Direction : std::uint8_t { kForward = 0, kInverse = 1 };

// A relation is its forward vocabulary index plus a direction flag. The
// inverse never gets its own vocabulary entry; descriptions of inverse
// relations are derived from the forward text.
struct RelationId {
  std::uint32_t base = 0;
  Direction direction = Direction::kForward;

  auto operator<=>(const RelationId&) const = default;

  bool is_inverse() const { return direction == Direction::kInverse; }
  RelationId inverse() const {
    return {base, is_inverse() ? Direction::kForward : Direction::kInverse};
  }
  RelationId forward() const { return {base, Direction::kForward}; }
  // Dense index usable for per-relation arrays: 2 * base + direction.
  std::size_t dense() const {
    return 2 * static_cast<std::size_t>(base) +
           static_cast<std::size_t>(direction);
  }
};

// Also used for directed edges (source, relation, target).
struct Triplet {
  EntityId head;
  RelationId relation;
  EntityId tail;
  auto operator<=>(const Triplet&) const = default;
};

struct TripletHash {
  std::size_t operator()(const Triplet& t) const noexcept {
    std::uint64_t x = t.head.value;
    x = x * 0x9e3779b97f4a7c15ULL + t.relation.dense();
    x = x * 0x9e3779b97f4a7c15ULL + t.tail.value;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

// Inverse relations are serialized as the forward key plus this suffix. It
// only appears at text boundaries (path caches, reports).
inline constexpr std::string_view kInverseSuffix = "^-1";

class Vocabulary {
 public:
  EntityId intern_entity(std::string_view key);
  RelationId intern_relation(std::string_view key);

  std::optional<EntityId> find_entity(std::string_view key) const;
  // Accepts forward keys and forward keys carrying kInverseSuffix.
  std::optional<RelationId> find_relation(std::string_view key) const;

  const std::string& entity_key(EntityId id) const;
  const std::string& relation_key(RelationId id) const;
  // Forward key, with kInverseSuffix appended for inverse relations.
  std::string relation_label(RelationId id) const;

  std::size_t entity_count() const { return entity_keys_.size(); }
  std::size_t relation_count() const { return relation_keys_.size(); }

  void set_entity_description(std::string key, std::string text);
  void set_relation_description(std::string key, std::string text);

  // Description text, falling back to the key with '_' replaced by ' '.
  std::string entity_description(EntityId id) const;
  // Forward description; callers render inverse relations themselves.
  std::string relation_description(RelationId id) const;

 private:
  std::vector<std::string> entity_keys_;
  std::unordered_map<std::string, std::uint32_t> entity_index_;
  std::vector<std::string> relation_keys_;
  std::unordered_map<std::string, std::uint32_t> relation_index_;
  std::unordered_map<std::string, std::string> entity_desc_;
  std::unordered_map<std::string, std::string> relation_desc_;
};

std::string fallback_description(std::string_view key);

// Immutable after construction; safe to share across threads.
class KnowledgeGraph {
 public:
  struct Edge {
    RelationId relation;
    EntityId target;
    bool operator==(const Edge&) const = default;
  };

  KnowledgeGraph();

  const Vocabulary& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& vocab_ptr() const { return vocab_; }

  std::size_t entity_count() const { return offsets_.size() - 1; }
  // Distinct forward relation keys.
  std::size_t relation_count() const { return vocab_->relation_count(); }
  // Forward (distinct) facts.
  std::size_t triplet_count() const { return triplet_count_; }
  // Directed adjacency entries, inverse edges included.
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }
  bool has_inverse() const { return has_inverse_; }
  bool is_reversed() const { return reversed_; }

  bool has_entity(EntityId u) const { return u.value < entity_count(); }

  // Out-edges of u ordered by ascending relation frequency, then relation id,
  // then target id. Throws kLookup for an unknown entity.
  std::span<const Edge> neighbors(EntityId u) const;

  std::uint64_t relation_frequency(RelationId r) const;
  // Indexed by RelationId::dense().
  const std::vector<std::uint64_t>& frequency_table() const {
    return frequency_;
  }

  bool contains(const Triplet& edge) const;
  std::vector<Triplet> edges() const;
  std::vector<Triplet> facts() const;

  // Structural equality of adjacency and flags; vocabularies compared by
  // identity of entity/relation counts.
  bool same_structure(const KnowledgeGraph& other) const;

 private:
  friend class GraphBuilder;
  friend KnowledgeGraph add_inverse_edges(const KnowledgeGraph& g);
  friend KnowledgeGraph reverse_graph(const KnowledgeGraph& g);

  static KnowledgeGraph assemble(std::shared_ptr<const Vocabulary> vocab,
                                 std::size_t entity_count,
                                 std::vector<Triplet> edges,
                                 std::size_t triplet_count, bool has_inverse,
                                 bool reversed, std::size_t duplicates);

  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> frequency_;
  std::unordered_set<Triplet, TripletHash> edge_set_;
  std::size_t triplet_count_ = 0;
  std::size_t duplicates_dropped_ = 0;
  bool has_inverse_ = false;
  bool reversed_ = false;
};

class GraphBuilder {
 public:
  GraphBuilder();

  // Returns false when the fact was already present.
  bool add(std::string_view head, std::string_view relation,
           std::string_view tail);
  // Registers an isolated entity (e.g. a query entity absent from the graph).
  EntityId add_entity(std::string_view key);

  Vocabulary& vocab() { return *vocab_; }
  std::size_t duplicates() const { return duplicates_; }

  KnowledgeGraph build();

 private:
  std::shared_ptr<Vocabulary> vocab_;
  std::vector<Triplet> facts_;
  std::unordered_set<Triplet, TripletHash> seen_;
  std::size_t duplicates_ = 0;
};

// Reads `head<TAB>relation<TAB>tail` lines into `builder`. Malformed lines
// raise kParse with the line number.
void read_triplet_file(const std::string& path, GraphBuilder& builder);
void read_description_file(const std::string& path, GraphBuilder& builder,
                           bool relations);

KnowledgeGraph load_graph(const std::string& triplet_file,
                          const std::optional<std::string>& entity_desc_file =
                              std::nullopt,
                          const std::optional<std::string>& relation_desc_file =
                              std::nullopt);

// Adds (v, r^-1, u) for every forward (u, r, v). kState if already augmented.
KnowledgeGraph add_inverse_edges(const KnowledgeGraph& g);

// Every edge (u, r, v) becomes (v, r, u); vocabulary shared.
KnowledgeGraph reverse_graph(const KnowledgeGraph& g);

std::span<const KnowledgeGraph::Edge> neighbors_by_relation_frequency(
    const KnowledgeGraph& g, EntityId u);

// Resolves a triplet of keys against a graph's vocabulary.
std::optional<Triplet> resolve_triplet(const KnowledgeGraph& g,
                                       std::string_view head,
                                       std::string_view relation,
                                       std::string_view tail);

std::string triplet_label(const KnowledgeGraph& g, const Triplet& t);

struct LabeledTriplet {
  Triplet triplet;
  int label = 1;
};

struct DatasetBundle {
  std::shared_ptr<const KnowledgeGraph> train_graph;
  // Same object as train_graph in transductive mode.
  std::shared_ptr<const KnowledgeGraph> eval_graph;
  std::vector<LabeledTriplet> train_queries;
  std::vector<LabeledTriplet> valid_queries;
  std::vector<LabeledTriplet> test_queries;
  bool inductive = false;
};

// Throws kInvalidArgument when entity keys overlap or an eval relation key
// is missing from the train relation table.
void check_inductive(const KnowledgeGraph& train, const KnowledgeGraph& eval);

}  // namespace kgpath
