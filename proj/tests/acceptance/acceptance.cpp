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

// Acceptance gate: one PASS / FAIL / SKIP line per criterion, exit status 1
// if any criterion fails. Usage: kgpath_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/config.hpp"
#include "core/embed.hpp"
#include "core/eval.hpp"
#include "core/explain.hpp"
#include "core/extract.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "support.hpp"

using namespace kgpath;
namespace fs = std::filesystem;

namespace {

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

// Collects violations; the first few are kept for the report line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 3) failures_.push_back(what);
    ++failed_;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << checks_ << " checks";
    if (failed_ > 0) {
      s << ", " << failed_ << " violations (first: " << failures_.front() << ")";
      return {Verdict::kFail, s.str()};
    }
    return {Verdict::kPass, s.str()};
  }
  std::size_t failed() const { return failed_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

constexpr std::uint64_t kSuiteGraphs = 120;

// Relation paths worth checking for a query: random walks out of the head,
// random walks into the tail, extracted paths and arbitrary sequences.
std::vector<RelationPath> candidate_paths(const KnowledgeGraph& g,
                                          const Triplet& q, Rng& rng) {
  const auto ex = kgtest::query_edges(g, q);
  std::vector<std::vector<Triplet>> out(g.entity_count()), in(g.entity_count());
  for (const Triplet& e : g.edges()) {
    if (std::find(ex.begin(), ex.end(), e) != ex.end()) continue;
    out[e.head.value].push_back(e);
    in[e.tail.value].push_back(e);
  }
  std::set<RelationPath> paths;
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t len = 1 + trial % 4;
    const bool forward = trial % 2 == 0;
    EntityId at = forward ? q.head : q.tail;
    RelationPath rp;
    for (std::size_t i = 0; i < len; ++i) {
      const auto& choices = forward ? out[at.value] : in[at.value];
      if (choices.empty()) break;
      const Triplet& e = choices[rng.below(choices.size())];
      rp.relations.push_back(e.relation);
      at = forward ? e.tail : e.head;
    }
    if (rp.length() != len) continue;
    if (!forward) rp = reversed(rp);
    paths.insert(rp);
  }
  for (const auto& p : extract_paths(g, q, PathFilter{}, {4, 20})) {
    paths.insert(relation_path_of(p));
  }
  const std::size_t n_rel = g.relation_count();
  for (std::size_t len = 1; len <= 4; ++len) {
    RelationPath r;
    for (std::size_t i = 0; i < len; ++i) {
      r.relations.push_back(
          {static_cast<std::uint32_t>(rng.below(n_rel)),
           g.has_inverse() && rng.below(2) ? Direction::kInverse
                                           : Direction::kForward});
    }
    paths.insert(r);
  }
  return {paths.begin(), paths.end()};
}

Outcome metrics_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= kSuiteGraphs; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 2 == 0);
    const KnowledgeGraph& g = rg.graph;
    MetricEngine m(g);
    Rng rng(seed * 7919);
    for (const Triplet& q : rg.queries) {
      const kgtest::WalkTally tally = kgtest::tally_walks(g, q, 4);
      for (const RelationPath& rp : candidate_paths(g, q, rng)) {
        const kgtest::OracleMetrics want = kgtest::oracle_metrics(tally, q, rp);
        const std::string where = "graph " + std::to_string(seed) +
                                  (q.head == q.tail ? " (head == tail)" : "");
        t.check(m.support(q, rp).count == want.support, where + " support");
        const auto mode = MetricMode::kEquation;
        t.check(kgtest::same_ratio(m.coverage(q, rp, Side::kHead, mode),
                                   want.coverage_head),
                where + " coverage head");
        t.check(kgtest::same_ratio(m.coverage(q, rp, Side::kTail, mode),
                                   want.coverage_tail),
                where + " coverage tail");
        t.check(kgtest::same_ratio(m.confidence(q, rp, Side::kHead, mode),
                                   want.confidence_head),
                where + " confidence head");
        t.check(kgtest::same_ratio(m.confidence(q, rp, Side::kTail, mode),
                                   want.confidence_tail),
                where + " confidence tail");
        ++compared;
      }
    }
  }
  const double secs = seconds_since(t0);
  t.check(secs < 60.0, "runtime " + fmt("%.1fs", secs));
  return t.outcome(std::to_string(kSuiteGraphs) + " graphs, " +
                   std::to_string(compared) + " relation paths, " +
                   fmt("%.2fs", secs));
}

Outcome walk_counts() {
  Tally t;
  std::size_t tables = 0;
  for (std::uint64_t seed = 1; seed <= kSuiteGraphs; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 2 == 0);
    const KnowledgeGraph& g = rg.graph;
    for (const Triplet& q : rg.queries) {
      const auto ex = kgtest::query_edges(g, q);
      WalkCountTable w =
          count_walks_by_length(g, q.head, 5, query_exclusions(g, q));
      for (std::size_t d = 0; d <= 5; ++d) {
        std::vector<std::uint64_t> want(g.entity_count(), 0);
        for (const auto& walk : kgtest::walks(g, q.head, d, ex)) {
          ++want[walk.entities.back().value];
        }
        for (std::uint32_t e = 0; e < g.entity_count(); ++e) {
          t.check(w.at(EntityId{e}, d) == want[e],
                  "graph " + std::to_string(seed) + " entity " +
                      std::to_string(e) + " depth " + std::to_string(d));
        }
      }
      ++tables;
    }
  }
  return t.outcome(std::to_string(tables) + " tables up to depth 5");
}

// Every head-to-tail path of 1..max_len steps that never revisits an entity,
// query edges skipped. With head == tail these are simple cycles: only the
// two endpoints coincide.
std::set<ReasoningPath> simple_paths(const KnowledgeGraph& g, const Triplet& q,
                                     std::size_t max_len) {
  const auto ex = kgtest::query_edges(g, q);
  std::vector<std::vector<Triplet>> out(g.entity_count());
  for (const Triplet& e : g.edges()) {
    if (std::find(ex.begin(), ex.end(), e) == ex.end()) {
      out[e.head.value].push_back(e);
    }
  }
  std::set<ReasoningPath> found;
  ReasoningPath cur{{q.head}, {}};
  std::function<void()> dfs = [&] {
    if (cur.length() == max_len) return;
    for (const Triplet& e : out[cur.entities.back().value]) {
      if (e.tail == q.tail) {
        ReasoningPath p = cur;
        p.entities.push_back(e.tail);
        p.relations.push_back(e.relation);
        found.insert(p);
      }
      if (std::find(cur.entities.begin(), cur.entities.end(), e.tail) !=
          cur.entities.end()) {
        continue;
      }
      if (e.tail == q.tail) continue;
      cur.entities.push_back(e.tail);
      cur.relations.push_back(e.relation);
      dfs();
      cur.entities.pop_back();
      cur.relations.pop_back();
    }
  };
  dfs();
  return found;
}

Outcome extraction_validity() {
  Tally t;
  std::size_t n_paths = 0, runs = 0;
  for (std::uint64_t seed = 1; seed <= kSuiteGraphs; ++seed) {
    auto rg = kgtest::random_graph(seed, seed % 2 == 0);
    const KnowledgeGraph& g = rg.graph;
    Rng rng(seed + 17);
    for (const Triplet& q : rg.queries) {
      const auto ex = kgtest::query_edges(g, q);
      const std::set<ReasoningPath> simple = simple_paths(g, q, 4);
      for (int variant = 0; variant < 3; ++variant) {
        const int L = 1 + static_cast<int>(rng.below(4));
        const int M = 1 + static_cast<int>(rng.below(6));
        const auto kind = static_cast<FilterKind>(rng.below(3));
        const auto mode = static_cast<MetricMode>(rng.below(2));
        const auto side = static_cast<FilterSide>(rng.below(3));
        const double alpha =
            kind == FilterKind::kNone ? 0.0
            : variant == 0            ? default_threshold(kind)
                                      : rng.uniform() * 0.5;
        const PathFilter f = make_filter(kind, mode, side, alpha);
        const auto paths = extract_paths(g, q, f, {L, M, 5});
        FilterSession fresh(g, f, nullptr, 5, false);
        const std::string where = "graph " + std::to_string(seed);
        t.check(paths.size() <= static_cast<std::size_t>(M), where + " count");
        for (const auto& p : paths) {
          t.check(p.length() >= 1 && p.length() <= static_cast<std::size_t>(L),
                  where + " length");
          t.check(p.entities.size() == p.relations.size() + 1, where + " shape");
          t.check(p.entities.front() == q.head && p.entities.back() == q.tail,
                  where + " endpoints");
          for (std::size_t i = 0; i < p.relations.size(); ++i) {
            const Triplet step{p.entities[i], p.relations[i], p.entities[i + 1]};
            t.check(g.contains(step), where + " edge exists");
            t.check(std::find(ex.begin(), ex.end(), step) == ex.end(),
                    where + " query edge used");
          }
          t.check(fresh.score(q, p) >= alpha, where + " filter");
          t.check(simple.contains(p), where + " not a brute-force simple path");
          ++n_paths;
        }
        ++runs;
      }
    }
  }
  return t.outcome(std::to_string(runs) + " extractions, " +
                   std::to_string(n_paths) + " paths");
}

Outcome loss_and_gradient() {
  Tally t;
  const std::vector<double> e{0.7, -1.3, 0.2, 2.9};
  std::vector<double> neg(e);
  for (double& x : neg) x = -x;
  t.check(cosine_embedding_loss(e, e, 1, 0.0) == 0.0, "y=+1 identical");
  t.check(cosine_embedding_loss(std::vector<double>{1, 0, 0},
                                std::vector<double>{0, 2, 0}, -1, 0.0) == 0.0,
          "y=-1 orthogonal");
  t.check(cosine_embedding_loss(e, neg, 1, 0.0) == 2.0, "y=+1 opposite");

  Rng rng(2024);
  double worst = 0.0;
  int instances = 0;
  while (instances < 50) {
    std::vector<double> a(16), b(16);
    for (double& x : a) x = rng.normal();
    for (double& x : b) x = rng.normal();
    const int y = rng.below(2) ? 1 : -1;
    const double margin = rng.uniform() * 1.2 - 0.6;
    // Keep away from the hinge kink where the derivative is undefined.
    if (y == -1 && std::abs(cosine(a, b) - margin) < 1e-3) continue;
    const LossGradient g = loss_gradient(a, b, y, margin);
    auto rel_err = [](double an, double fd) {
      const double scale = std::max({std::abs(an), std::abs(fd), 1e-8});
      return std::abs(an - fd) / scale;
    };
    for (std::size_t i = 0; i < 16; ++i) {
      const double h = 1e-5;
      auto ap = a, am = a, bp = b, bm = b;
      ap[i] += h;
      am[i] -= h;
      bp[i] += h;
      bm[i] -= h;
      const double fd1 = (cosine_embedding_loss(ap, b, y, margin) -
                          cosine_embedding_loss(am, b, y, margin)) / (2 * h);
      const double fd2 = (cosine_embedding_loss(a, bp, y, margin) -
                          cosine_embedding_loss(a, bm, y, margin)) / (2 * h);
      // Components whose true value is below the difference noise floor
      // carry no signal; compare them absolutely.
      const double e1 = std::abs(fd1) < 1e-7 && std::abs(g.grad_e1[i]) < 1e-7
                            ? 0.0
                            : rel_err(g.grad_e1[i], fd1);
      const double e2 = std::abs(fd2) < 1e-7 && std::abs(g.grad_e2[i]) < 1e-7
                            ? 0.0
                            : rel_err(g.grad_e2[i], fd2);
      worst = std::max({worst, e1, e2});
    }
    ++instances;
  }
  t.check(worst < 1e-4, "max relative error " + fmt("%.3g", worst));
  return t.outcome("loss values 0, 0, 2; 50 dim-16 gradients, max relative "
                   "error " + fmt("%.2e", worst));
}

Outcome ranking() {
  Tally t;
  // Perfect scorer.
  std::vector<CandidateSet> data;
  for (std::uint32_t i = 0; i < 20; ++i) {
    CandidateSet c;
    c.positive = {EntityId{i}, RelationId{0}, EntityId{i + 1}};
    for (std::uint32_t j = 0; j < 49; ++j) {
      c.negatives.push_back({EntityId{i}, RelationId{0}, EntityId{100 + j}});
    }
    data.push_back(c);
  }
  auto perfect = [](const Triplet& tr) {
    ScoredTriplet s;
    s.triplet = tr;
    s.score = tr.tail.value < 100 ? 1.0 : 0.0;
    return s;
  };
  RankingResult r = evaluate(data, perfect, TiePolicy::kPessimistic);
  t.check(r.mrr == 1.0 && r.hit_at_1 == 1.0, "perfect scorer");

  // Sorting oracle.
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> negs(1 + rng.below(60));
    for (double& s : negs) s = static_cast<double>(rng.below(8)) / 7.0;
    const double pos = static_cast<double>(rng.below(8)) / 7.0;
    std::vector<double> all(negs);
    all.push_back(pos);
    std::sort(all.begin(), all.end(), std::greater<>());
    const auto first = std::find(all.begin(), all.end(), pos) - all.begin();
    const auto last = all.rend() - std::find(all.rbegin(), all.rend(), pos);
    const double opt = static_cast<double>(first + 1);
    const double pess = static_cast<double>(last);
    t.check(rank_query(pos, negs, TiePolicy::kOptimistic) == opt, "optimistic");
    t.check(rank_query(pos, negs, TiePolicy::kPessimistic) == pess,
            "pessimistic");
    t.check(rank_query(pos, negs, TiePolicy::kAverage) == (opt + pess) / 2,
            "average");
  }

  // Random scorer over 1000 queries of 50 candidates.
  double sum = 0;
  Rng scores(4242);
  for (int qi = 0; qi < 1000; ++qi) {
    std::vector<double> negs(49);
    for (double& s : negs) s = scores.uniform();
    sum += 1.0 / rank_query(scores.uniform(), negs, TiePolicy::kPessimistic);
  }
  const double mrr = sum / 1000;
  double expected = 0;
  for (int k = 1; k <= 50; ++k) expected += 1.0 / k;
  expected /= 50;
  t.check(std::abs(mrr - 0.090) <= 0.015, "random MRR " + fmt("%.4f", mrr));
  return t.outcome("random-scorer MRR " + fmt("%.4f", mrr) + " (expected " +
                   fmt("%.4f", expected) + ")");
}

Outcome dataset_statistics() {
  const char* root = std::getenv("KGPATH_GRAIL_DIR");
  struct Row {
    const char* dir;
    std::size_t relations, entities, triplets;
  };
  const Row rows[] = {{"WN18RR_v1", 9, 2746, 6670},
                      {"fb237_v1", 180, 1594, 5223},
                      {"nell_v1", 88, 2564, 10063}};
  if (!root) {
    return {Verdict::kSkip,
            "set KGPATH_GRAIL_DIR to a directory holding WN18RR_v1/, "
            "fb237_v1/, nell_v1/ train.txt files"};
  }
  Tally t;
  std::string seen;
  for (const Row& r : rows) {
    const fs::path file = fs::path(root) / r.dir / "train.txt";
    if (!fs::exists(file)) {
      return {Verdict::kSkip, "missing " + file.string()};
    }
    KnowledgeGraph g = load_graph(file.string());
    t.check(g.relation_count() == r.relations &&
                g.entity_count() == r.entities &&
                g.triplet_count() == r.triplets,
            std::string(r.dir) + " got (" + std::to_string(g.relation_count()) +
                ", " + std::to_string(g.entity_count()) + ", " +
                std::to_string(g.triplet_count()) + ")");
    t.check(add_inverse_edges(g).edge_count() == 2 * r.triplets,
            std::string(r.dir) + " inverse edge count");
    seen += std::string(seen.empty() ? "" : ", ") + r.dir;
  }
  return t.outcome(seen);
}

Outcome defaults() {
  Tally t;
  RunConfig c;
  t.check(c.seed == 42, "seed");
  t.check(c.search_depth == 5, "L");
  t.check(c.max_paths == 3, "M");
  t.check(c.epochs == 30, "epochs");
  t.check(c.filter == FilterKind::kConfidence, "filter kind");
  t.check(c.effective_threshold() == 5e-3, "confidence threshold");
  RunConfig cov;
  set_config_value(cov, "filter", "coverage");
  t.check(cov.effective_threshold() == 1e-5, "coverage threshold");
  t.check(default_threshold(FilterKind::kConfidence) == 5e-3,
          "confidence default");
  t.check(default_threshold(FilterKind::kCoverage) == 1e-5, "coverage default");
  // An empty config file changes nothing.
  const fs::path dir = kgtest::temp_dir("acc_defaults");
  kgtest::write_file(dir / "empty.conf", "");
  RunConfig from_file;
  load_config_file(from_file, (dir / "empty.conf").string());
  t.check(dump_config(from_file) == dump_config(RunConfig{}), "empty file");
  return t.outcome("seed 42, L 5, M 3, epochs 30, thresholds 5e-3 / 1e-5");
}

Outcome synthetic_training() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path out = kgtest::temp_dir("acc_synthetic");
  RunConfig c;
  load_config_file(c, KGPATH_SOURCE_DIR "/data/synthetic/synthetic.conf");
  c.output_dir = out.string();
  std::ostringstream log;
  auto hit_at_1 = [&](EmbedderKind kind) {
    RunConfig k = c;
    k.embedder = kind;
    run_command(k, "evaluate", log);
    auto j = nlohmann::json::parse(kgtest::read_file(out / "results.json"));
    return std::pair(j["hit_at_1"].get<double>(), j["mrr"].get<double>());
  };
  run_command(c, "extract", log);
  const auto [untrained, untrained_mrr] = hit_at_1(EmbedderKind::kHashing);
  run_command(c, "train", log);
  const auto [trained, trained_mrr] = hit_at_1(EmbedderKind::kProjection);
  const double secs = seconds_since(t0);
  Tally t;
  t.check(trained >= untrained, "trained below untrained");
  t.check(trained >= 0.8, "trained Hit@1 " + fmt("%.4f", trained));
  t.check(secs < 300.0, "runtime");
  // Regression baseline recorded at the time of writing.
  t.check(trained >= 0.9166, "below recorded baseline 0.9167");
  return t.outcome("held-out Hit@1 trained " + fmt("%.4f", trained) +
                   " (MRR " + fmt("%.4f", trained_mrr) + ") vs hashing " +
                   fmt("%.4f", untrained) + " (MRR " +
                   fmt("%.4f", untrained_mrr) + "), " + fmt("%.1fs", secs));
}

double partition_sse(const std::vector<Point>& pts,
                     const std::vector<std::size_t>& labels, std::size_t k) {
  const std::size_t dim = pts.front().size();
  std::vector<Point> sum(k, Point(dim, 0.0));
  std::vector<double> n(k, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t d = 0; d < dim; ++d) sum[labels[i]][d] += pts[i][d];
    n[labels[i]] += 1;
  }
  double sse = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = pts[i][d] - sum[labels[i]][d] / n[labels[i]];
      sse += diff * diff;
    }
  }
  return sse;
}

// Head "h" reaches tail "t" through `n` two-hop routes; the middles carry
// the relation words so path sentences resemble the triplet.
KnowledgeGraph fan_graph(int n) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) {
    const std::string m = "m" + std::to_string(i);
    b.add("h", "part_a", m);
    b.add(m, "part_b", "t");
    b.vocab().set_entity_description(m, "middle" + std::to_string(i));
  }
  b.add("h", "target", "t");
  b.vocab().set_relation_description("target", "part a part b");
  b.vocab().set_relation_description("part_a", "part a");
  b.vocab().set_relation_description("part_b", "part b");
  b.vocab().set_entity_description("h", "head entity");
  b.vocab().set_entity_description("t", "tail entity");
  return b.build();
}

Outcome explanation() {
  Tally t;
  Rng rng(77);
  std::size_t runs = 0, local = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const bool small = trial % 2 == 0;
    const std::size_t n = small ? 2 + rng.below(7) : 5 + rng.below(40);
    const std::size_t dim = 1 + rng.below(small ? 3 : 8);
    const std::size_t k =
        1 + rng.below(std::min<std::size_t>(small ? 3 : 6, n));
    std::vector<Point> pts(n, Point(dim));
    for (auto& p : pts) {
      for (double& x : p) x = rng.normal() * (1 + rng.below(3));
    }
    const KMeansResult a = kmeans(pts, k, 42);
    const KMeansResult b = kmeans(pts, k, 42);
    t.check(a.labels == b.labels && a.centroids == b.centroids,
            "seed 42 determinism");
    for (std::size_t i = 1; i < a.sse_trace.size(); ++i) {
      t.check(a.sse_trace[i] <= a.sse_trace[i - 1] * (1 + 1e-12) + 1e-12,
              "SSE increased");
    }
    ++runs;
    if (!small) continue;
    // No single-point move to another cluster lowers SSE.
    const double base = partition_sse(pts, a.labels, k);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t l : a.labels) ++sizes[l];
    for (std::size_t i = 0; i < n; ++i) {
      if (sizes[a.labels[i]] < 2) continue;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == a.labels[i]) continue;
        auto moved = a.labels;
        moved[i] = c;
        t.check(partition_sse(pts, moved, k) >= base - 1e-9 * (1 + base),
                "improving single-point move exists");
      }
    }
    ++local;
  }

  // Empty-path rule at exactly 20 vs 19 extracted paths.
  HashingEmbedder h;
  double empty_scaled = -1;
  for (int n : {20, 19}) {
    KnowledgeGraph g = fan_graph(n);
    const Triplet q = kgtest::trip(g, "h", "target", "t");
    auto paths = extract_paths(g, q, PathFilter{}, {5, 20});
    t.check(static_cast<int>(paths.size()) == n, "fan extraction count");
    ExplanationReport r = build_report(g, triplet_score(h, g, q, paths), h);
    std::size_t empties = 0;
    double raw_min = 1e9;
    for (const auto& e : r.entries) raw_min = std::min(raw_min, e.raw_score);
    for (const auto& e : r.entries) {
      if (e.path) continue;
      ++empties;
      t.check(e.sentence == "(no path)", "empty-path sentence");
      t.check(e.raw_score == raw_min, "empty path is the raw minimum");
      t.check(e.scaled_score == 0.0, "empty path scaled to 0");
      empty_scaled = e.scaled_score;
    }
    t.check(empties == (n == 20 ? 0u : 1u),
            std::to_string(n) + " paths: empty entry count " +
                std::to_string(empties));
    t.check(r.entries.size() == 20u,
            "entry count");
  }
  return t.outcome(std::to_string(runs) + " k-means runs, " +
                   std::to_string(local) +
                   " local-optimality checks; empty path omitted at 20 paths, "
                   "present at 19 with scaled score " +
                   fmt("%.3f", empty_scaled));
}

Outcome non_reproducibility() {
  return {Verdict::kPass,
          "published MRR/Hit@1 figures (e.g. WN18RR transductive MRR 0.899) "
          "need the pre-trained all-mpnet-base-v2 sentence transformer and "
          "GPU fine-tuning; they are NOT reproduced here and are excluded. "
          "Criteria 1-9 substitute"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "metrics oracle equivalence", metrics_oracle},
      {2, "walk-count equivalence", walk_counts},
      {3, "extraction validity", extraction_validity},
      {4, "loss and gradient", loss_and_gradient},
      {5, "ranking correctness", ranking},
      {6, "dataset statistics", dataset_statistics},
      {7, "defaults", defaults},
      {8, "surrogate training", synthetic_training},
      {9, "explanation invariants", explanation},
      {10, "non-reproducibility statement", non_reproducibility},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.contains(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::kPass   ? "PASS"
                      : o.verdict == Verdict::kSkip ? "SKIP"
                                                    : "FAIL";
    if (o.verdict == Verdict::kFail) ++failed;
    std::printf("[%2d] %s %s: %s\n", c.id, tag, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
