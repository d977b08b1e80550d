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

// Seeded generator for small graphs whose target relations are explained by
// two-hop rule bodies sharing words with the target description. Target
// relation k is described "alpha_k beta_k"; each fact (h, target_k, t) comes
// with a path h -alpha_k-> m -beta_k-> t. Noise relations connect random
// pairs. Held-out facts are left out of the graph, their rule bodies are
// not.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/graph.hpp"

namespace kgpath {

using KeyTriplet = std::array<std::string, 3>;

struct SyntheticOptions {
  std::size_t entities = 60;
  std::size_t target_relations = 4;
  std::size_t facts_per_relation = 12;
  std::size_t test_per_relation = 3;
  std::size_t noise_relations = 4;
  std::size_t noise_edges_per_relation = 20;
  std::uint64_t seed = 42;
};

struct SyntheticKg {
  // Everything in the graph: kept target facts, rule bodies, noise.
  std::vector<KeyTriplet> graph;
  // Target facts present in the graph.
  std::vector<KeyTriplet> train_queries;
  // Held-out target facts.
  std::vector<KeyTriplet> test_queries;
  std::vector<std::pair<std::string, std::string>> entity_descriptions;
  std::vector<std::pair<std::string, std::string>> relation_descriptions;
};

SyntheticKg generate_synthetic(const SyntheticOptions& options);

// Graph with descriptions attached; test-query entities are registered.
KnowledgeGraph build_synthetic_graph(const SyntheticKg& kg);

// Up to n tail corruptions per test query, none of them a graph or test
// fact.
std::vector<std::pair<KeyTriplet, std::vector<KeyTriplet>>> synthetic_negatives(
    const SyntheticKg& kg, std::size_t n, std::uint64_t seed);

// Writes graph.txt, train_queries.txt, test.txt, test_negatives.txt,
// entity2text.txt and relation2text.txt into `dir` (created if missing).
void write_synthetic(const SyntheticKg& kg, const std::string& dir,
                     std::size_t negatives_per_query, std::uint64_t seed);

}  // namespace kgpath
