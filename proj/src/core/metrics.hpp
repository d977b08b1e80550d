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

// Relation-path support, coverage and confidence.
//
// All metrics count walks (revisits allowed) in the search graph with the
// query fact removed in both directions. Each ratio is available in two
// modes:
//
//   kEquation   coverage  = support / #walks of length |rp| from the head
//               confidence = support / #rp-walks from the head ending at any
//                            entity other than the head
//   kAlgorithm  coverage  = #walks of length |rp| head->tail (any relations)
//                           / #walks of length |rp| from the head
//               confidence = support / #rp-walks from the head (all ends)
//
// Tail-side metrics are the head-side metrics on the reversed graph with
// head and tail swapped and the relation path reversed.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/paths.hpp"

namespace kgpath {

enum class Side { kHead, kTail };
enum class MetricMode { kEquation, kAlgorithm };

// Exact integer ratio; converted to double only for threshold comparison.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  // Empty denominator or unknown endpoint; value() is 0.
  bool degenerate = false;

  double value() const {
    return denominator == 0 ? 0.0
                            : static_cast<double>(numerator) /
                                  static_cast<double>(denominator);
  }
};

struct SupportCount {
  std::uint64_t count = 0;
  bool unknown_entity = false;
};

struct PathMetrics {
  SupportCount support;
  Ratio coverage_head;
  Ratio coverage_tail;
  Ratio confidence_head;
  Ratio confidence_tail;
};

inline constexpr std::size_t kDefaultMaxMetricLength = 5;

// Number of rp-walks from `source` ending at each entity (dense vector).
std::vector<std::uint64_t> relation_walk_endpoints(const KnowledgeGraph& g,
                                                   EntityId source,
                                                   const RelationPath& rp,
                                                   const EdgeExclusions& excluded);

// Holds the forward graph and (lazily) its reversal for tail-side metrics.
class MetricEngine {
 public:
  // `reversed`, when given, must be reverse_graph(g) and outlive the engine.
  explicit MetricEngine(const KnowledgeGraph& g,
                        const KnowledgeGraph* reversed = nullptr,
                        std::size_t max_len = kDefaultMaxMetricLength);

  SupportCount support(const Triplet& query, const RelationPath& rp) const;
  Ratio coverage(const Triplet& query, const RelationPath& rp, Side side,
                 MetricMode mode) const;
  Ratio confidence(const Triplet& query, const RelationPath& rp, Side side,
                   MetricMode mode) const;
  PathMetrics all(const Triplet& query, const RelationPath& rp,
                  MetricMode mode) const;

  const KnowledgeGraph& graph() const { return g_; }
  const KnowledgeGraph& reversed_graph() const;

 private:
  struct Oriented {
    const KnowledgeGraph* graph;
    EntityId source;
    EntityId target;
    RelationPath rp;
  };
  Oriented orient(const Triplet& query, const RelationPath& rp,
                  Side side) const;
  void check(const RelationPath& rp) const;

  const KnowledgeGraph& g_;
  const KnowledgeGraph* reversed_;
  mutable std::unique_ptr<KnowledgeGraph> owned_reverse_;
  std::size_t max_len_;
};

SupportCount relation_path_support(const KnowledgeGraph& g,
                                   const Triplet& query,
                                   const RelationPath& rp);
Ratio coverage(const KnowledgeGraph& g, const Triplet& query,
               const RelationPath& rp, Side side, MetricMode mode);
Ratio confidence(const KnowledgeGraph& g, const Triplet& query,
                 const RelationPath& rp, Side side, MetricMode mode);

enum class FilterKind { kNone, kCoverage, kConfidence };
enum class FilterSide { kHead, kTail, kBoth };

struct PathFilter {
  FilterKind kind = FilterKind::kNone;
  MetricMode mode = MetricMode::kAlgorithm;
  FilterSide side = FilterSide::kHead;
  double threshold = 0.0;
};

// Threshold defaults: coverage 1e-5, confidence 5e-3, none 0.
double default_threshold(FilterKind kind);

// kInvalidArgument unless threshold is in [0, 1].
PathFilter make_filter(FilterKind kind, MetricMode mode, FilterSide side,
                       double threshold);

// kConfig for unrecognized names.
FilterKind parse_filter_kind(const std::string& name);
MetricMode parse_metric_mode(const std::string& name);
FilterSide parse_filter_side(const std::string& name);
std::string to_string(FilterKind kind);
std::string to_string(MetricMode mode);
std::string to_string(FilterSide side);

// Scores paths against a filter for one extraction; scores are memoized per
// (query, relation path).
class FilterSession {
 public:
  FilterSession(const KnowledgeGraph& g, const PathFilter& filter,
                const KnowledgeGraph* reversed = nullptr,
                std::size_t max_len = kDefaultMaxMetricLength,
                bool memoize = true);

  // kind=none scores 1; kBoth takes the smaller side.
  double score(const Triplet& query, const ReasoningPath& path);
  bool accepts(const Triplet& query, const ReasoningPath& path);

  const PathFilter& filter() const { return filter_; }
  std::size_t memo_hits() const { return memo_hits_; }

 private:
  MetricEngine engine_;
  PathFilter filter_;
  bool memoize_;
  std::map<std::pair<Triplet, RelationPath>, double> memo_;
  std::size_t memo_hits_ = 0;
};

// `head,relation,tail,relationPath,support,coverage,confidence`; the
// relation path is `;`-joined relation labels. Fields are quoted when they
// contain commas or quotes.
std::string metrics_csv_header();
std::string metrics_csv_row(const KnowledgeGraph& g, const Triplet& query,
                            const RelationPath& rp, const SupportCount& support,
                            const Ratio& coverage, const Ratio& confidence);

}  // namespace kgpath
