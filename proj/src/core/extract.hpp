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

#include <vector>

#include "core/graph.hpp"
#include "core/metrics.hpp"
#include "core/paths.hpp"

namespace kgpath {

struct ExtractOptions {
  int max_depth = 5;  // L
  int max_paths = 3;  // M
  std::size_t max_metric_length = kDefaultMaxMetricLength;
};

// Breadth-first path extraction from query.head towards query.tail.
//
// Each entity is marked visited when first pushed and expanded at most once,
// so the result is the subset of simple paths that follow the BFS tree plus
// one closing edge into the tail. Neighbors are scanned rarest relation
// first. The query fact is never used as a step (in either direction).
// Paths whose filter score falls below the threshold are dropped. The search
// stops once more than M paths are collected; the result is truncated to M.
//
// Throws kLookup for an unknown head and kConfig when L or M < 1. A tail
// without edges yields no paths.
std::vector<ReasoningPath> extract_paths(const KnowledgeGraph& g,
                                         const Triplet& query,
                                         const PathFilter& filter,
                                         const ExtractOptions& options,
                                         const KnowledgeGraph* reversed = nullptr);

// Same search with a caller-owned filter session (memo shared across calls
// for the same query).
std::vector<ReasoningPath> extract_paths(const KnowledgeGraph& g,
                                         const Triplet& query,
                                         FilterSession& filter,
                                         const ExtractOptions& options);

}  // namespace kgpath
