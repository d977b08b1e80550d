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

#include "core/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include "core/common.hpp"

namespace kgpath {

std::vector<std::uint64_t> relation_walk_endpoints(
    const KnowledgeGraph& g, EntityId source, const RelationPath& rp,
    const EdgeExclusions& excluded) {
  std::vector<std::uint64_t> current(g.entity_count(), 0);
  if (!g.has_entity(source)) return current;
  current[source.value] = 1;
  std::vector<EntityId> frontier{source};
  for (RelationId step : rp.relations) {
    std::vector<std::uint64_t> next(g.entity_count(), 0);
    std::vector<EntityId> reached;
    for (EntityId u : frontier) {
      for (const auto& edge : g.neighbors(u)) {
        if (edge.relation != step) continue;
        if (excluded.excludes(u, edge.relation, edge.target)) continue;
        std::uint64_t& slot = next[edge.target.value];
        if (slot == 0) reached.push_back(edge.target);
        slot = checked_add(slot, current[u.value]);
      }
    }
    std::sort(reached.begin(), reached.end());
    current = std::move(next);
    frontier = std::move(reached);
    if (frontier.empty()) break;
  }
  return current;
}

MetricEngine::MetricEngine(const KnowledgeGraph& g,
                           const KnowledgeGraph* reversed, std::size_t max_len)
    : g_(g), reversed_(reversed), max_len_(max_len) {}

const KnowledgeGraph& MetricEngine::reversed_graph() const {
  if (reversed_) return *reversed_;
  if (!owned_reverse_) {
    owned_reverse_ = std::make_unique<KnowledgeGraph>(reverse_graph(g_));
  }
  return *owned_reverse_;
}

void MetricEngine::check(const RelationPath& rp) const {
  if (rp.relations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "relation path must be nonempty");
  }
  if (rp.length() > max_len_) {
    throw Error(ErrorCode::kInvalidArgument,
                "relation path length " + std::to_string(rp.length()) +
                    " exceeds metric depth guard " + std::to_string(max_len_));
  }
}

MetricEngine::Oriented MetricEngine::orient(const Triplet& query,
                                            const RelationPath& rp,
                                            Side side) const {
  if (side == Side::kHead) return {&g_, query.head, query.tail, rp};
  return {&reversed_graph(), query.tail, query.head, reversed(rp)};
}

SupportCount MetricEngine::support(const Triplet& query,
                                   const RelationPath& rp) const {
  check(rp);
  if (!g_.has_entity(query.head) || !g_.has_entity(query.tail)) {
    return {0, true};
  }
  auto ends = relation_walk_endpoints(g_, query.head, rp,
                                      query_exclusions(g_, query));
  return {ends[query.tail.value], false};
}

Ratio MetricEngine::coverage(const Triplet& query, const RelationPath& rp,
                             Side side, MetricMode mode) const {
  check(rp);
  if (!g_.has_entity(query.head) || !g_.has_entity(query.tail)) {
    return {0, 0, true};
  }
  const Oriented o = orient(query, rp, side);
  const EdgeExclusions excluded = query_exclusions(*o.graph, query);
  const WalkCountTable walks =
      count_walks_by_length(*o.graph, o.source, rp.length(), excluded);
  Ratio out;
  out.denominator = walks.total(rp.length());
  if (mode == MetricMode::kEquation) {
    out.numerator =
        relation_walk_endpoints(*o.graph, o.source, o.rp, excluded)[o.target.value];
  } else {
    out.numerator = walks.at(o.target, rp.length());
  }
  out.degenerate = out.denominator == 0;
  return out;
}

Ratio MetricEngine::confidence(const Triplet& query, const RelationPath& rp,
                               Side side, MetricMode mode) const {
  check(rp);
  if (!g_.has_entity(query.head) || !g_.has_entity(query.tail)) {
    return {0, 0, true};
  }
  const Oriented o = orient(query, rp, side);
  const EdgeExclusions excluded = query_exclusions(*o.graph, query);
  const auto ends = relation_walk_endpoints(*o.graph, o.source, o.rp, excluded);
  Ratio out;
  out.numerator = ends[o.target.value];
  for (std::uint32_t e = 0; e < ends.size(); ++e) {
    if (mode == MetricMode::kEquation && EntityId{e} == o.source) continue;
    out.denominator = checked_add(out.denominator, ends[e]);
  }
  out.degenerate = out.denominator == 0;
  // head == tail: the equation-mode destination set excludes the tail itself.
  if (mode == MetricMode::kEquation && o.target == o.source) {
    out.numerator = 0;
    out.degenerate = true;
  }
  return out;
}

PathMetrics MetricEngine::all(const Triplet& query, const RelationPath& rp,
                              MetricMode mode) const {
  PathMetrics m;
  m.support = support(query, rp);
  m.coverage_head = coverage(query, rp, Side::kHead, mode);
  m.coverage_tail = coverage(query, rp, Side::kTail, mode);
  m.confidence_head = confidence(query, rp, Side::kHead, mode);
  m.confidence_tail = confidence(query, rp, Side::kTail, mode);
  return m;
}

SupportCount relation_path_support(const KnowledgeGraph& g,
                                   const Triplet& query,
                                   const RelationPath& rp) {
  return MetricEngine(g).support(query, rp);
}

Ratio coverage(const KnowledgeGraph& g, const Triplet& query,
               const RelationPath& rp, Side side, MetricMode mode) {
  return MetricEngine(g).coverage(query, rp, side, mode);
}

Ratio confidence(const KnowledgeGraph& g, const Triplet& query,
                 const RelationPath& rp, Side side, MetricMode mode) {
  return MetricEngine(g).confidence(query, rp, side, mode);
}

// ---------------------------------------------------------------------------
// Filters

double default_threshold(FilterKind kind) {
  switch (kind) {
    case FilterKind::kCoverage: return 1e-5;
    case FilterKind::kConfidence: return 5e-3;
    case FilterKind::kNone: return 0.0;
  }
  return 0.0;
}

PathFilter make_filter(FilterKind kind, MetricMode mode, FilterSide side,
                       double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "filter threshold must lie in [0, 1]");
  }
  return PathFilter{kind, mode, side, threshold};
}

FilterKind parse_filter_kind(const std::string& name) {
  if (name == "none") return FilterKind::kNone;
  if (name == "coverage") return FilterKind::kCoverage;
  if (name == "confidence") return FilterKind::kConfidence;
  throw Error(ErrorCode::kConfig, "unknown filter kind '" + name +
                                      "' (expected none, coverage, confidence)");
}

MetricMode parse_metric_mode(const std::string& name) {
  if (name == "equation") return MetricMode::kEquation;
  if (name == "algorithm") return MetricMode::kAlgorithm;
  throw Error(ErrorCode::kConfig, "unknown filter mode '" + name +
                                      "' (expected equation, algorithm)");
}

FilterSide parse_filter_side(const std::string& name) {
  if (name == "head") return FilterSide::kHead;
  if (name == "tail") return FilterSide::kTail;
  if (name == "both") return FilterSide::kBoth;
  throw Error(ErrorCode::kConfig,
              "unknown filter side '" + name + "' (expected head, tail, both)");
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kNone: return "none";
    case FilterKind::kCoverage: return "coverage";
    case FilterKind::kConfidence: return "confidence";
  }
  return "none";
}

std::string to_string(MetricMode mode) {
  return mode == MetricMode::kEquation ? "equation" : "algorithm";
}

std::string to_string(FilterSide side) {
  switch (side) {
    case FilterSide::kHead: return "head";
    case FilterSide::kTail: return "tail";
    case FilterSide::kBoth: return "both";
  }
  return "head";
}

FilterSession::FilterSession(const KnowledgeGraph& g, const PathFilter& filter,
                             const KnowledgeGraph* reversed,
                             std::size_t max_len, bool memoize)
    : engine_(g, reversed, max_len), filter_(filter), memoize_(memoize) {}

double FilterSession::score(const Triplet& query, const ReasoningPath& path) {
  if (filter_.kind == FilterKind::kNone) return 1.0;
  RelationPath rp = relation_path_of(path);
  if (memoize_) {
    auto it = memo_.find({query, rp});
    if (it != memo_.end()) {
      ++memo_hits_;
      return it->second;
    }
  }
  auto metric = [&](Side side) {
    const Ratio r = filter_.kind == FilterKind::kCoverage
                        ? engine_.coverage(query, rp, side, filter_.mode)
                        : engine_.confidence(query, rp, side, filter_.mode);
    return r.value();
  };
  double value = 0.0;
  switch (filter_.side) {
    case FilterSide::kHead: value = metric(Side::kHead); break;
    case FilterSide::kTail: value = metric(Side::kTail); break;
    case FilterSide::kBoth:
      value = std::min(metric(Side::kHead), metric(Side::kTail));
      break;
  }
  if (memoize_) memo_.emplace(std::make_pair(query, std::move(rp)), value);
  return value;
}

bool FilterSession::accepts(const Triplet& query, const ReasoningPath& path) {
  if (filter_.kind == FilterKind::kNone) return true;
  return score(query, path) >= filter_.threshold;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_ratio(const Ratio& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", r.value());
  return buf;
}

}  // namespace

std::string metrics_csv_header() {
  return "headKey,relKey,tailKey,relationPath,support,coverage,confidence";
}

std::string metrics_csv_row(const KnowledgeGraph& g, const Triplet& query,
                            const RelationPath& rp, const SupportCount& support,
                            const Ratio& coverage, const Ratio& confidence) {
  std::string path;
  for (std::size_t i = 0; i < rp.relations.size(); ++i) {
    if (i) path.push_back(';');
    path += g.vocab().relation_label(rp.relations[i]);
  }
  return csv_field(g.vocab().entity_key(query.head)) + "," +
         csv_field(g.vocab().relation_label(query.relation)) + "," +
         csv_field(g.vocab().entity_key(query.tail)) + "," + csv_field(path) +
         "," + std::to_string(support.count) + "," + format_ratio(coverage) +
         "," + format_ratio(confidence);
}

}  // namespace kgpath
