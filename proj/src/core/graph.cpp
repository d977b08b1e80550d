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

#include "core/graph.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

#include "core/common.hpp"
#include "core/text.hpp"

namespace kgpath {

// ---------------------------------------------------------------------------
// Vocabulary

EntityId Vocabulary::intern_entity(std::string_view key) {
  auto it = entity_index_.find(std::string(key));
  if (it != entity_index_.end()) return EntityId{it->second};
  const auto id = static_cast<std::uint32_t>(entity_keys_.size());
  entity_keys_.emplace_back(key);
  entity_index_.emplace(std::string(key), id);
  return EntityId{id};
}

RelationId Vocabulary::intern_relation(std::string_view key) {
  auto it = relation_index_.find(std::string(key));
  if (it != relation_index_.end()) return RelationId{it->second};
  const auto id = static_cast<std::uint32_t>(relation_keys_.size());
  relation_keys_.emplace_back(key);
  relation_index_.emplace(std::string(key), id);
  return RelationId{id};
}

std::optional<EntityId> Vocabulary::find_entity(std::string_view key) const {
  auto it = entity_index_.find(std::string(key));
  if (it == entity_index_.end()) return std::nullopt;
  return EntityId{it->second};
}

std::optional<RelationId> Vocabulary::find_relation(
    std::string_view key) const {
  bool inverse = false;
  if (key.size() > kInverseSuffix.size() && key.ends_with(kInverseSuffix)) {
    // A forward key may itself end with the suffix; prefer the exact match.
    if (!relation_index_.contains(std::string(key))) {
      key.remove_suffix(kInverseSuffix.size());
      inverse = true;
    }
  }
  auto it = relation_index_.find(std::string(key));
  if (it == relation_index_.end()) return std::nullopt;
  RelationId r{it->second};
  return inverse ? r.inverse() : r;
}

const std::string& Vocabulary::entity_key(EntityId id) const {
  if (id.value >= entity_keys_.size()) {
    throw Error(ErrorCode::kLookup,
                "unknown entity id " + std::to_string(id.value));
  }
  return entity_keys_[id.value];
}

const std::string& Vocabulary::relation_key(RelationId id) const {
  if (id.base >= relation_keys_.size()) {
    throw Error(ErrorCode::kLookup,
                "unknown relation id " + std::to_string(id.base));
  }
  return relation_keys_[id.base];
}

std::string Vocabulary::relation_label(RelationId id) const {
  std::string key = relation_key(id);
  if (id.is_inverse()) key.append(kInverseSuffix);
  return key;
}

void Vocabulary::set_entity_description(std::string key, std::string text) {
  entity_desc_[std::move(key)] = std::move(text);
}

void Vocabulary::set_relation_description(std::string key, std::string text) {
  relation_desc_[std::move(key)] = std::move(text);
}

std::string fallback_description(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string Vocabulary::entity_description(EntityId id) const {
  const std::string& key = entity_key(id);
  auto it = entity_desc_.find(key);
  return it != entity_desc_.end() ? it->second : fallback_description(key);
}

std::string Vocabulary::relation_description(RelationId id) const {
  const std::string& key = relation_key(id);
  auto it = relation_desc_.find(key);
  return it != relation_desc_.end() ? it->second : fallback_description(key);
}

// ---------------------------------------------------------------------------
// KnowledgeGraph

KnowledgeGraph::KnowledgeGraph()
    : vocab_(std::make_shared<Vocabulary>()), offsets_{0} {}

KnowledgeGraph KnowledgeGraph::assemble(std::shared_ptr<const Vocabulary> vocab,
                                        std::size_t entity_count,
                                        std::vector<Triplet> edges,
                                        std::size_t triplet_count,
                                        bool has_inverse, bool reversed,
                                        std::size_t duplicates) {
  KnowledgeGraph g;
  g.vocab_ = std::move(vocab);
  g.triplet_count_ = triplet_count;
  g.has_inverse_ = has_inverse;
  g.reversed_ = reversed;
  g.duplicates_dropped_ = duplicates;

  g.frequency_.assign(2 * g.vocab_->relation_count(), 0);
  for (const Triplet& e : edges) ++g.frequency_[e.relation.dense()];

  const auto& freq = g.frequency_;
  std::sort(edges.begin(), edges.end(), [&](const Triplet& a, const Triplet& b) {
    return std::make_tuple(a.head, freq[a.relation.dense()], a.relation, a.tail) <
           std::make_tuple(b.head, freq[b.relation.dense()], b.relation, b.tail);
  });

  g.offsets_.assign(entity_count + 1, 0);
  for (const Triplet& e : edges) ++g.offsets_[e.head.value + 1];
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) {
    g.offsets_[i] += g.offsets_[i - 1];
  }
  g.edges_.reserve(edges.size());
  g.edge_set_.reserve(edges.size());
  for (const Triplet& e : edges) {
    g.edges_.push_back({e.relation, e.tail});
    g.edge_set_.insert(e);
  }
  return g;
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::neighbors(
    EntityId u) const {
  if (!has_entity(u)) {
    throw Error(ErrorCode::kLookup,
                "unknown entity id " + std::to_string(u.value));
  }
  return std::span<const Edge>(edges_).subspan(
      offsets_[u.value], offsets_[u.value + 1] - offsets_[u.value]);
}

std::uint64_t KnowledgeGraph::relation_frequency(RelationId r) const {
  const std::size_t i = r.dense();
  return i < frequency_.size() ? frequency_[i] : 0;
}

bool KnowledgeGraph::contains(const Triplet& edge) const {
  return edge_set_.contains(edge);
}

std::vector<Triplet> KnowledgeGraph::edges() const {
  std::vector<Triplet> out;
  out.reserve(edges_.size());
  for (std::uint32_t u = 0; u + 1 < offsets_.size(); ++u) {
    for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      out.push_back({EntityId{u}, edges_[i].relation, edges_[i].target});
    }
  }
  return out;
}

std::vector<Triplet> KnowledgeGraph::facts() const {
  std::vector<Triplet> out;
  for (const Triplet& e : edges()) {
    if (!e.relation.is_inverse()) out.push_back(e);
  }
  return out;
}

bool KnowledgeGraph::same_structure(const KnowledgeGraph& other) const {
  return offsets_ == other.offsets_ && edges_ == other.edges_ &&
         frequency_ == other.frequency_ &&
         triplet_count_ == other.triplet_count_ &&
         has_inverse_ == other.has_inverse_ && reversed_ == other.reversed_;
}

// ---------------------------------------------------------------------------
// Construction

GraphBuilder::GraphBuilder() : vocab_(std::make_shared<Vocabulary>()) {}

bool GraphBuilder::add(std::string_view head, std::string_view relation,
                       std::string_view tail) {
  Triplet t{vocab_->intern_entity(head), vocab_->intern_relation(relation),
            vocab_->intern_entity(tail)};
  if (!seen_.insert(t).second) {
    ++duplicates_;
    return false;
  }
  facts_.push_back(t);
  return true;
}

EntityId GraphBuilder::add_entity(std::string_view key) {
  return vocab_->intern_entity(key);
}

KnowledgeGraph GraphBuilder::build() {
  const std::size_t n = vocab_->entity_count();
  const std::size_t count = facts_.size();
  return KnowledgeGraph::assemble(vocab_, n, std::move(facts_), count, false,
                                  false, duplicates_);
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void read_triplet_file(const std::string& path, GraphBuilder& builder) {
  std::ifstream in = open_or_throw(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty()) continue;
    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() != 3) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(lineno) + ": expected 3 columns, got " +
                      std::to_string(cols.size()));
    }
    builder.add(text::nfc(cols[0]), text::nfc(cols[1]), text::nfc(cols[2]));
  }
}

void read_description_file(const std::string& path, GraphBuilder& builder,
                           bool relations) {
  std::ifstream in = open_or_throw(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": expected key<TAB>description");
    }
    std::string key = text::nfc(line.substr(0, tab));
    std::string desc = text::nfc(text::trim(line.substr(tab + 1)));
    if (relations) {
      builder.vocab().set_relation_description(std::move(key), std::move(desc));
    } else {
      builder.vocab().set_entity_description(std::move(key), std::move(desc));
    }
  }
}

KnowledgeGraph load_graph(const std::string& triplet_file,
                          const std::optional<std::string>& entity_desc_file,
                          const std::optional<std::string>& relation_desc_file) {
  GraphBuilder builder;
  read_triplet_file(triplet_file, builder);
  if (entity_desc_file) read_description_file(*entity_desc_file, builder, false);
  if (relation_desc_file) {
    read_description_file(*relation_desc_file, builder, true);
  }
  return builder.build();
}

KnowledgeGraph add_inverse_edges(const KnowledgeGraph& g) {
  if (g.has_inverse()) {
    throw Error(ErrorCode::kState, "inverse edges already present");
  }
  std::vector<Triplet> edges = g.edges();
  const std::size_t n = edges.size();
  edges.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Triplet e = edges[i];
    edges.push_back({e.tail, e.relation.inverse(), e.head});
  }
  return KnowledgeGraph::assemble(g.vocab_, g.entity_count(), std::move(edges),
                                  g.triplet_count(), true, g.is_reversed(),
                                  g.duplicates_dropped());
}

KnowledgeGraph reverse_graph(const KnowledgeGraph& g) {
  std::vector<Triplet> edges = g.edges();
  for (Triplet& e : edges) std::swap(e.head, e.tail);
  return KnowledgeGraph::assemble(g.vocab_, g.entity_count(), std::move(edges),
                                  g.triplet_count(), g.has_inverse(),
                                  !g.is_reversed(), g.duplicates_dropped());
}

std::span<const KnowledgeGraph::Edge> neighbors_by_relation_frequency(
    const KnowledgeGraph& g, EntityId u) {
  return g.neighbors(u);
}

std::optional<Triplet> resolve_triplet(const KnowledgeGraph& g,
                                       std::string_view head,
                                       std::string_view relation,
                                       std::string_view tail) {
  auto h = g.vocab().find_entity(head);
  auto r = g.vocab().find_relation(relation);
  auto t = g.vocab().find_entity(tail);
  if (!h || !r || !t || !g.has_entity(*h) || !g.has_entity(*t)) {
    return std::nullopt;
  }
  return Triplet{*h, *r, *t};
}

std::string triplet_label(const KnowledgeGraph& g, const Triplet& t) {
  return g.vocab().entity_key(t.head) + "\t" +
         g.vocab().relation_label(t.relation) + "\t" +
         g.vocab().entity_key(t.tail);
}

void check_inductive(const KnowledgeGraph& train, const KnowledgeGraph& eval) {
  for (std::uint32_t i = 0; i < eval.entity_count(); ++i) {
    const std::string& key = eval.vocab().entity_key(EntityId{i});
    if (train.vocab().find_entity(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "inductive split shares entity '" + key + "' with training");
    }
  }
  for (std::uint32_t i = 0; i < eval.relation_count(); ++i) {
    const std::string& key = eval.vocab().relation_key(RelationId{i});
    if (!train.vocab().find_relation(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "inductive relation '" + key + "' missing from training");
    }
  }
}

}  // namespace kgpath
