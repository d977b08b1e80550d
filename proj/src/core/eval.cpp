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

#include "core/eval.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "core/common.hpp"
#include "core/text.hpp"

namespace kgpath {

TiePolicy parse_tie_policy(const std::string& name) {
  if (name == "pessimistic") return TiePolicy::kPessimistic;
  if (name == "optimistic") return TiePolicy::kOptimistic;
  if (name == "average") return TiePolicy::kAverage;
  throw Error(ErrorCode::kConfig,
              "unknown tie policy '" + name +
                  "' (expected pessimistic, optimistic, average)");
}

CorruptionMode parse_corruption_mode(const std::string& name) {
  if (name == "head") return CorruptionMode::kHead;
  if (name == "tail") return CorruptionMode::kTail;
  if (name == "both") return CorruptionMode::kBoth;
  throw Error(ErrorCode::kConfig, "unknown corruption mode '" + name +
                                      "' (expected head, tail, both)");
}

std::string to_string(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kPessimistic: return "pessimistic";
    case TiePolicy::kOptimistic: return "optimistic";
    case TiePolicy::kAverage: return "average";
  }
  return "pessimistic";
}

std::string to_string(CorruptionMode mode) {
  switch (mode) {
    case CorruptionMode::kHead: return "head";
    case CorruptionMode::kTail: return "tail";
    case CorruptionMode::kBoth: return "both";
  }
  return "tail";
}

std::vector<Triplet> generate_negatives(const KnowledgeGraph& g,
                                        const Triplet& positive, std::size_t n,
                                        std::uint64_t seed,
                                        CorruptionMode mode) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::vector<Triplet> pool;
  const auto entities = static_cast<std::uint32_t>(g.entity_count());
  auto consider = [&](const Triplet& t) {
    if (t != positive && !g.contains(t)) pool.push_back(t);
  };
  if (mode == CorruptionMode::kHead || mode == CorruptionMode::kBoth) {
    for (std::uint32_t e = 0; e < entities; ++e) {
      consider({EntityId{e}, positive.relation, positive.tail});
    }
  }
  if (mode == CorruptionMode::kTail || mode == CorruptionMode::kBoth) {
    for (std::uint32_t e = 0; e < entities; ++e) {
      // Head and tail corruption coincide only on the positive itself.
      consider({positive.head, positive.relation, EntityId{e}});
    }
  }
  if (pool.size() < n) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot draw " + std::to_string(n) +
                    " distinct negatives; only " + std::to_string(pool.size()) +
                    " valid corruptions exist");
  }
  // Partial Fisher-Yates: the first n slots are a uniform sample.
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

NegativesFile load_negatives(const std::string& path, const KnowledgeGraph& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  NegativesFile out;
  std::string line;
  std::size_t lineno = 0;
  bool have_block = false;
  auto diag = [&](const std::string& msg) {
    out.diagnostics.push_back(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() != 4 || (cols[0] != "POS" && cols[0] != "NEG")) {
      diag("expected POS|NEG<TAB>head<TAB>relation<TAB>tail");
      if (!cols.empty() && cols[0] == "POS") have_block = false;
      continue;
    }
    auto t = resolve_triplet(g, text::nfc(cols[1]), text::nfc(cols[2]),
                             text::nfc(cols[3]));
    if (!t) {
      diag("unknown entity or relation key");
      // Negatives of an unresolved positive have no block to join.
      if (cols[0] == "POS") have_block = false;
      continue;
    }
    if (cols[0] == "POS") {
      out.blocks.push_back({*t, {}});
      have_block = true;
    } else if (!have_block) {
      diag("NEG line without a preceding POS line");
    } else {
      out.blocks.back().negatives.push_back(*t);
      ++out.negative_count;
    }
  }
  return out;
}

double rank_query(double pos_score, std::span<const double> neg_scores,
                  TiePolicy policy) {
  std::size_t greater = 0, equal = 0;
  for (double s : neg_scores) {
    if (s > pos_score) {
      ++greater;
    } else if (s == pos_score) {
      ++equal;
    }
  }
  const double optimistic = 1.0 + static_cast<double>(greater);
  const double pessimistic = optimistic + static_cast<double>(equal);
  switch (policy) {
    case TiePolicy::kPessimistic: return pessimistic;
    case TiePolicy::kOptimistic: return optimistic;
    case TiePolicy::kAverage: return 0.5 * (optimistic + pessimistic);
  }
  return pessimistic;
}

RankingResult evaluate(const std::vector<CandidateSet>& dataset,
                       const TripletScorer& scorer, TiePolicy policy) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation dataset is empty");
  }
  RankingResult result;
  result.tie_policy = policy;
  double rr_sum = 0.0;
  std::size_t hits = 0;
  for (const CandidateSet& c : dataset) {
    if (c.negatives.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "query without negatives");
    }
    RankedQuery q;
    q.positive = scorer(c.positive);
    std::vector<double> neg_scores;
    for (const Triplet& n : c.negatives) {
      q.negatives.push_back(scorer(n));
      neg_scores.push_back(q.negatives.back().score);
    }
    q.rank = rank_query(q.positive.score, neg_scores, policy);
    rr_sum += 1.0 / q.rank;
    if (q.rank == 1.0) ++hits;
    result.per_query.push_back(std::move(q));
  }
  const auto n = static_cast<double>(dataset.size());
  result.mrr = rr_sum / n;
  result.hit_at_1 = static_cast<double>(hits) / n;
  return result;
}

std::string results_json(const KnowledgeGraph& g, const RankingResult& r) {
  nlohmann::ordered_json j;
  j["mrr"] = r.mrr;
  j["hit_at_1"] = r.hit_at_1;
  j["n_queries"] = r.per_query.size();
  j["tie_policy"] = to_string(r.tie_policy);
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const RankedQuery& q : r.per_query) {
    nlohmann::ordered_json e;
    const Triplet& t = q.positive.triplet;
    e["query"] = {g.vocab().entity_key(t.head),
                  g.vocab().relation_label(t.relation),
                  g.vocab().entity_key(t.tail)};
    e["rank"] = q.rank;
    e["positive_score"] = q.positive.score;
    e["n_candidates"] = q.negatives.size() + 1;
    e["n_paths"] = q.positive.paths.size();
    per.push_back(std::move(e));
  }
  j["per_query"] = std::move(per);
  return j.dump(2);
}

std::string ranks_csv(const KnowledgeGraph& g, const RankingResult& r) {
  std::string out = "head,relation,tail,rank,positive_score\n";
  char buf[64];
  for (const RankedQuery& q : r.per_query) {
    const Triplet& t = q.positive.triplet;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", q.rank, q.positive.score);
    out += g.vocab().entity_key(t.head) + "," +
           g.vocab().relation_label(t.relation) + "," +
           g.vocab().entity_key(t.tail) + buf;
  }
  return out;
}

}  // namespace kgpath
