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

// Writes a seeded synthetic dataset (see core/synthetic.hpp) to a directory.

#include <iostream>

#include <CLI11.hpp>

#include "core/common.hpp"
#include "core/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"write a synthetic rule-structured knowledge graph"};
  kgpath::SyntheticOptions o;
  std::string dir;
  std::size_t negatives = 49;
  app.add_option("dir", dir, "output directory")->required();
  app.add_option("--entities", o.entities);
  app.add_option("--target-relations", o.target_relations);
  app.add_option("--facts-per-relation", o.facts_per_relation);
  app.add_option("--test-per-relation", o.test_per_relation);
  app.add_option("--noise-relations", o.noise_relations);
  app.add_option("--noise-edges", o.noise_edges_per_relation);
  app.add_option("--negatives", negatives, "negatives per test query");
  app.add_option("--seed", o.seed);
  CLI11_PARSE(app, argc, argv);
  try {
    const kgpath::SyntheticKg kg = kgpath::generate_synthetic(o);
    kgpath::write_synthetic(kg, dir, negatives, o.seed);
    std::cout << kg.graph.size() << " graph triplets, "
              << kg.train_queries.size() << " train queries, "
              << kg.test_queries.size() << " test queries\n";
  } catch (const kgpath::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
