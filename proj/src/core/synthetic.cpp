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

#include "core/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "core/common.hpp"

namespace kgpath {
namespace {

constexpr const char* kSyllables[] = {"ka", "mor", "li", "ven", "sa", "tur",
                                      "ne", "dol"};

std::string entity_key(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%02zu", i);
  return buf;
}

// Two or three syllables; unique for the first 512 indices.
std::string entity_name(std::size_t i) {
  std::string name = kSyllables[i % 8];
  name += kSyllables[(i / 8) % 8];
  if (i >= 64) name += kSyllables[(i / 64) % 8];
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<KeyTriplet>& triplets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& t : triplets) out << t[0] << '\t' << t[1] << '\t' << t[2] << '\n';
}

}  // namespace

SyntheticKg generate_synthetic(const SyntheticOptions& o) {
  if (o.entities < 3) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 3 entities");
  }
  // Heads, tails and middles come from disjoint pools. Otherwise inverse
  // edges, whose descriptions carry the same words, let a corrupted triplet
  // match a rule body or the reverse of a true fact word for word.
  const std::size_t n_middles = std::max(o.facts_per_relation, o.entities / 3);
  if (n_middles + 2 > o.entities) {
    throw Error(ErrorCode::kInvalidArgument,
                "too few entities for facts_per_relation");
  }
  const std::size_t n_heads = (o.entities - n_middles) / 2;
  const std::size_t n_tails = o.entities - n_middles - n_heads;
  if (o.test_per_relation > o.facts_per_relation) {
    throw Error(ErrorCode::kInvalidArgument,
                "test_per_relation exceeds facts_per_relation");
  }
  Rng rng(o.seed);
  SyntheticKg kg;
  std::set<KeyTriplet> seen;
  auto add_graph = [&](KeyTriplet t) {
    if (seen.insert(t).second) kg.graph.push_back(std::move(t));
  };
  for (std::size_t i = 0; i < o.entities; ++i) {
    kg.entity_descriptions.emplace_back(entity_key(i), entity_name(i));
  }
  auto pick = [&] { return static_cast<std::size_t>(rng.below(o.entities)); };
  // A head reaching one middle under two relations keeps only one of the
  // two-hop paths once the middle is marked visited.
  std::set<std::pair<std::size_t, std::size_t>> head_middle, middle_tail;
  std::size_t attempts = 0;

  for (std::size_t k = 0; k < o.target_relations; ++k) {
    const std::string target = "target_" + std::to_string(k);
    const std::string alpha = "alpha_" + std::to_string(k);
    const std::string beta = "beta_" + std::to_string(k);
    kg.relation_descriptions.emplace_back(target, alpha + " " + beta);
    kg.relation_descriptions.emplace_back("body_" + alpha, alpha);
    kg.relation_descriptions.emplace_back("body_" + beta, beta);
    // A middle shared by two facts of one relation would make its rule
    // body fire for a pair that is not a fact.
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::set<std::size_t> middles;
    std::size_t made = 0;
    while (made < o.facts_per_relation) {
      const std::size_t h = rng.below(n_heads);
      const std::size_t t = n_heads + rng.below(n_tails);
      const std::size_t m = n_heads + n_tails + rng.below(n_middles);
      if (++attempts > 1000000) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cannot place facts; add entities or lower facts_per_relation");
      }
      if (middles.contains(m) || used.contains({h, t}) ||
          head_middle.contains({h, m}) || middle_tail.contains({m, t})) {
        continue;
      }
      used.insert({h, t});
      middles.insert(m);
      head_middle.insert({h, m});
      middle_tail.insert({m, t});
      const KeyTriplet fact{entity_key(h), target, entity_key(t)};
      if (made < o.test_per_relation) {
        kg.test_queries.push_back(fact);
      } else {
        kg.train_queries.push_back(fact);
        add_graph(fact);
      }
      add_graph({entity_key(h), "body_" + alpha, entity_key(m)});
      add_graph({entity_key(m), "body_" + beta, entity_key(t)});
      ++made;
    }
  }
  for (std::size_t j = 0; j < o.noise_relations; ++j) {
    const std::string noise = "noise_" + std::to_string(j);
    kg.relation_descriptions.emplace_back(noise, noise);
    for (std::size_t e = 0; e < o.noise_edges_per_relation; ++e) {
      std::size_t u = pick(), v = pick();
      while (v == u) v = pick();
      add_graph({entity_key(u), noise, entity_key(v)});
    }
  }
  return kg;
}

KnowledgeGraph build_synthetic_graph(const SyntheticKg& kg) {
  GraphBuilder builder;
  for (const auto& [key, _] : kg.entity_descriptions) builder.add_entity(key);
  for (const auto& t : kg.graph) builder.add(t[0], t[1], t[2]);
  for (const auto& t : kg.test_queries) builder.vocab().intern_relation(t[1]);
  for (const auto& [key, text] : kg.entity_descriptions) {
    builder.vocab().set_entity_description(key, text);
  }
  for (const auto& [key, text] : kg.relation_descriptions) {
    builder.vocab().set_relation_description(key, text);
  }
  return builder.build();
}

std::vector<std::pair<KeyTriplet, std::vector<KeyTriplet>>> synthetic_negatives(
    const SyntheticKg& kg, std::size_t n, std::uint64_t seed) {
  std::set<KeyTriplet> truth(kg.graph.begin(), kg.graph.end());
  truth.insert(kg.test_queries.begin(), kg.test_queries.end());
  Rng rng(seed);
  std::vector<std::pair<KeyTriplet, std::vector<KeyTriplet>>> out;
  for (const KeyTriplet& q : kg.test_queries) {
    std::vector<KeyTriplet> pool;
    for (const auto& [key, _] : kg.entity_descriptions) {
      KeyTriplet c{q[0], q[1], key};
      if (key != q[0] && !truth.contains(c)) pool.push_back(std::move(c));
    }
    rng.shuffle(pool);
    if (pool.size() > n) pool.resize(n);
    out.emplace_back(q, std::move(pool));
  }
  return out;
}

void write_synthetic(const SyntheticKg& kg, const std::string& dir,
                     std::size_t negatives_per_query, std::uint64_t seed) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root);
  write_lines(root / "graph.txt", kg.graph);
  write_lines(root / "train_queries.txt", kg.train_queries);
  write_lines(root / "test.txt", kg.test_queries);
  {
    std::ofstream out(root / "test_negatives.txt", std::ios::binary);
    for (const auto& [pos, negs] : synthetic_negatives(kg, negatives_per_query, seed)) {
      out << "POS\t" << pos[0] << '\t' << pos[1] << '\t' << pos[2] << '\n';
      for (const auto& t : negs) {
        out << "NEG\t" << t[0] << '\t' << t[1] << '\t' << t[2] << '\n';
      }
    }
  }
  auto write_desc = [&](const char* name, const auto& rows) {
    std::ofstream out(root / name, std::ios::binary);
    for (const auto& [key, text] : rows) out << key << '\t' << text << '\n';
  };
  write_desc("entity2text.txt", kg.entity_descriptions);
  write_desc("relation2text.txt", kg.relation_descriptions);
}

}  // namespace kgpath
