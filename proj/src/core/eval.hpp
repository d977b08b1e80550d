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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/embed.hpp"
#include "core/graph.hpp"

namespace kgpath {

enum class TiePolicy { kPessimistic, kOptimistic, kAverage };
enum class CorruptionMode { kHead, kTail, kBoth };

TiePolicy parse_tie_policy(const std::string& name);
CorruptionMode parse_corruption_mode(const std::string& name);
std::string to_string(TiePolicy policy);
std::string to_string(CorruptionMode mode);

// n distinct corruptions of `positive`, none of which is an edge of g.
// Sampled uniformly without replacement from the valid pool; deterministic
// for a seed. kInvalidArgument when the pool holds fewer than n candidates
// (the message reports the achievable count).
std::vector<Triplet> generate_negatives(const KnowledgeGraph& g,
                                        const Triplet& positive, std::size_t n,
                                        std::uint64_t seed,
                                        CorruptionMode mode = CorruptionMode::kTail);

struct CandidateSet {
  Triplet positive;
  std::vector<Triplet> negatives;
};

struct NegativesFile {
  std::vector<CandidateSet> blocks;
  std::vector<std::string> diagnostics;
  std::size_t negative_count = 0;
};

// Blocks of `POS<TAB>h<TAB>r<TAB>t` followed by `NEG<TAB>h<TAB>r<TAB>t`
// lines. Lines with unknown keys or bad shape are skipped with a diagnostic.
NegativesFile load_negatives(const std::string& path, const KnowledgeGraph& g);

// Pessimistic 1 + #{s > pos} + #{s = pos}; optimistic 1 + #{s > pos};
// average is their midpoint.
double rank_query(double pos_score, std::span<const double> neg_scores,
                  TiePolicy policy);

struct RankedQuery {
  ScoredTriplet positive;
  std::vector<ScoredTriplet> negatives;
  double rank = 1.0;
};

struct RankingResult {
  std::vector<RankedQuery> per_query;
  double mrr = 0.0;
  double hit_at_1 = 0.0;
  TiePolicy tie_policy = TiePolicy::kPessimistic;
};

using TripletScorer = std::function<ScoredTriplet(const Triplet&)>;

// kInvalidArgument for an empty dataset or a query without negatives.
RankingResult evaluate(const std::vector<CandidateSet>& dataset,
                       const TripletScorer& scorer, TiePolicy policy);

// {mrr, hit_at_1, n_queries, tie_policy, per_query: [...]}
std::string results_json(const KnowledgeGraph& g, const RankingResult& r);
// query,rank,positive_score
std::string ranks_csv(const KnowledgeGraph& g, const RankingResult& r);

}  // namespace kgpath
