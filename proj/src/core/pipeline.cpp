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

#include "core/pipeline.hpp"

#include <array>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "core/common.hpp"
#include "core/embed.hpp"
#include "core/eval.hpp"
#include "core/explain.hpp"
#include "core/extract.hpp"
#include "core/graph.hpp"
#include "core/metrics.hpp"
#include "core/paths.hpp"
#include "core/text.hpp"
#include "core/verbalize.hpp"

namespace kgpath {
namespace {

namespace fs = std::filesystem;

constexpr std::array<std::string_view, 5> kCommands = {
    "extract", "train", "evaluate", "explain", "metrics"};

using KeyTriplet = std::array<std::string, 3>;

class RunLog {
 public:
  RunLog(const fs::path& file, std::ostream& echo)
      : file_(file, std::ios::app), echo_(echo) {
    if (!file_) throw Error(ErrorCode::kIo, "cannot open " + file.string());
  }

  void line(const std::string& s) {
    file_ << s << '\n';
    file_.flush();
    echo_ << s << '\n';
  }

 private:
  std::ofstream file_;
  std::ostream& echo_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Written to a temporary name first so readers never see partial files.
void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::uint64_t file_digest(const std::string& path) {
  return path.empty() ? 0 : hash64(read_file(path));
}

std::vector<KeyTriplet> read_key_triplets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<KeyTriplet> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3) {
      throw Error(ErrorCode::kParse, path + ":" + std::to_string(lineno) +
                                         ": expected head<TAB>relation<TAB>tail");
    }
    out.push_back({text::nfc(cols[0]), text::nfc(cols[1]), text::nfc(cols[2])});
  }
  return out;
}

// Keys mentioned by a negatives file; malformed lines are left for
// load_negatives to report.
std::vector<KeyTriplet> negatives_keys(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<KeyTriplet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cols = text::split(line, '\t');
    if (cols.size() == 4 && (cols[0] == "POS" || cols[0] == "NEG")) {
      out.push_back({text::nfc(cols[1]), text::nfc(cols[2]), text::nfc(cols[3])});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset

struct Dataset {
  std::shared_ptr<const KnowledgeGraph> train;
  std::shared_ptr<const KnowledgeGraph> eval;
  std::shared_ptr<const KnowledgeGraph> train_reversed;
  std::shared_ptr<const KnowledgeGraph> eval_reversed;
  std::vector<CandidateSet> train_sets;
  std::vector<CandidateSet> test_sets;
};

KnowledgeGraph build_graph(const RunConfig& c, const std::string& graph_file,
                           const std::vector<KeyTriplet>& extra) {
  GraphBuilder b;
  read_triplet_file(graph_file, b);
  for (const auto& t : extra) {
    b.add_entity(t[0]);
    b.add_entity(t[2]);
    b.vocab().intern_relation(t[1]);
  }
  if (!c.entity_descriptions.empty()) {
    read_description_file(c.entity_descriptions, b, false);
  }
  if (!c.relation_descriptions.empty()) {
    read_description_file(c.relation_descriptions, b, true);
  }
  return b.build();
}

std::uint64_t split_seed(const RunConfig& c, std::string_view split,
                         std::size_t i) {
  return Hasher(c.seed).add(split).add(static_cast<std::uint64_t>(i)).digest();
}

Triplet resolve_or_throw(const KnowledgeGraph& g, const KeyTriplet& t) {
  auto r = resolve_triplet(g, t[0], t[1], t[2]);
  if (!r) {
    throw Error(ErrorCode::kLookup, "cannot resolve " + t[0] + " " + t[1] +
                                        " " + t[2]);
  }
  return *r;
}

// Train candidates are always built: a stale path cache is re-extracted as a
// whole, whichever command noticed.
Dataset load_dataset(const RunConfig& c, RunLog& log) {
  if (c.train_graph.empty()) {
    throw Error(ErrorCode::kConfig, "train_graph is not set");
  }
  if (c.test_queries.empty() && c.test_negatives.empty()) {
    throw Error(ErrorCode::kConfig,
                "test_queries or test_negatives must be set");
  }
  std::vector<KeyTriplet> train_q, test_q;
  if (!c.train_queries.empty()) train_q = read_key_triplets(c.train_queries);
  if (!c.test_queries.empty()) test_q = read_key_triplets(c.test_queries);
  if (!c.test_negatives.empty()) {
    auto keys = negatives_keys(c.test_negatives);
    test_q.insert(test_q.end(), keys.begin(), keys.end());
  }

  Dataset d;
  KnowledgeGraph train_raw;
  KnowledgeGraph eval_raw;
  const bool inductive = c.mode == DatasetMode::kInductive;
  if (inductive) {
    train_raw = build_graph(c, c.train_graph, train_q);
    eval_raw = build_graph(c, c.eval_graph, test_q);
    check_inductive(train_raw, eval_raw);
  } else {
    std::vector<KeyTriplet> all = train_q;
    all.insert(all.end(), test_q.begin(), test_q.end());
    train_raw = build_graph(c, c.train_graph, all);
  }
  log.line("train graph: " + std::to_string(train_raw.entity_count()) +
           " entities, " + std::to_string(train_raw.relation_count()) +
           " relations, " + std::to_string(train_raw.triplet_count()) +
           " triplets (" + std::to_string(train_raw.duplicates_dropped()) +
           " duplicates dropped)");
  if (inductive) {
    log.line("eval graph: " + std::to_string(eval_raw.entity_count()) +
             " entities, " + std::to_string(eval_raw.triplet_count()) +
             " triplets");
  }

  std::vector<Triplet> train_positives;
  if (c.train_queries.empty()) {
    train_positives = train_raw.facts();
  } else {
    for (const auto& t : train_q) train_positives.push_back(resolve_or_throw(train_raw, t));
  }
  if (c.max_train_queries > 0 &&
      train_positives.size() > static_cast<std::size_t>(c.max_train_queries)) {
    train_positives.resize(static_cast<std::size_t>(c.max_train_queries));
  }

  auto augment = [&](const KnowledgeGraph& g) {
    return std::make_shared<const KnowledgeGraph>(
        c.inverse_edges ? add_inverse_edges(g) : g);
  };
  d.train = augment(train_raw);
  d.eval = inductive ? augment(eval_raw) : d.train;
  d.train_reversed = std::make_shared<const KnowledgeGraph>(reverse_graph(*d.train));
  d.eval_reversed = inductive ? std::make_shared<const KnowledgeGraph>(
                                    reverse_graph(*d.eval))
                              : d.train_reversed;

  for (std::size_t i = 0; i < train_positives.size(); ++i) {
    const Triplet& pos = train_positives[i];
    d.train_sets.push_back(
        {pos, generate_negatives(*d.train, pos,
                                 static_cast<std::size_t>(c.train_candidates - 1),
                                 split_seed(c, "train", i), c.negative_mode)});
  }
  if (!c.test_negatives.empty()) {
    NegativesFile nf = load_negatives(c.test_negatives, *d.eval);
    for (const auto& diag : nf.diagnostics) log.line("warning: " + diag);
    d.test_sets = std::move(nf.blocks);
  } else {
    for (std::size_t i = 0; i < test_q.size(); ++i) {
      const Triplet pos = resolve_or_throw(*d.eval, test_q[i]);
      d.test_sets.push_back(
          {pos, generate_negatives(*d.eval, pos,
                                   static_cast<std::size_t>(c.test_candidates - 1),
                                   split_seed(c, "test", i), c.negative_mode)});
    }
  }
  if (d.test_sets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no test queries");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Fingerprints

std::uint64_t extract_fingerprint(const RunConfig& c) {
  Hasher h(1);
  h.add("extract-v1");
  for (const std::string* f :
       {&c.train_graph, &c.eval_graph, &c.entity_descriptions,
        &c.relation_descriptions, &c.train_queries, &c.test_queries,
        &c.test_negatives}) {
    h.add(file_digest(*f));
  }
  for (std::string_view key :
       {"seed", "mode", "inverse_edges", "search_depth", "max_paths",
        "max_metric_length", "filter", "filter_mode", "filter_side",
        "filter_threshold", "train_candidates", "test_candidates",
        "negative_mode", "max_train_queries"}) {
    h.add(key).add(get_config_value(c, key));
  }
  return h.digest();
}

std::uint64_t train_fingerprint(const RunConfig& c) {
  Hasher h(extract_fingerprint(c));
  h.add("train-v1");
  for (std::string_view key :
       {"epochs", "learning_rate", "batch_size", "margin", "embed_dim",
        "embed_seed", "sentence_style"}) {
    h.add(key).add(get_config_value(c, key));
  }
  return h.digest();
}

// ---------------------------------------------------------------------------
// Path caches

struct Block {
  std::vector<Triplet> candidates;  // positive first
  std::vector<std::vector<ReasoningPath>> paths;
};

std::vector<Block> extract_blocks(const KnowledgeGraph& g,
                                  const KnowledgeGraph& reversed,
                                  const std::vector<CandidateSet>& sets,
                                  const PathFilter& filter,
                                  const ExtractOptions& options, int workers) {
  std::vector<Block> blocks(sets.size());
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t b = 0; b < sets.size(); ++b) {
    blocks[b].candidates.push_back(sets[b].positive);
    blocks[b].candidates.insert(blocks[b].candidates.end(),
                                sets[b].negatives.begin(),
                                sets[b].negatives.end());
    blocks[b].paths.resize(blocks[b].candidates.size());
    for (std::size_t i = 0; i < blocks[b].candidates.size(); ++i) {
      jobs.emplace_back(b, i);
    }
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const auto [b, i] = jobs[j];
      try {
        blocks[b].paths[i] = extract_paths(g, blocks[b].candidates[i], filter,
                                           options, &reversed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::max(1, workers));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return blocks;
}

std::string cache_text(const KnowledgeGraph& g, const std::vector<Block>& blocks,
                       std::uint64_t fingerprint) {
  std::string out = "# kgpath path cache\n# fingerprint " + hex64(fingerprint) + "\n";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].candidates.size(); ++i) {
      const Triplet& t = blocks[b].candidates[i];
      out += "Q\t" + std::to_string(b) + (i == 0 ? "\tPOS\t" : "\tNEG\t") +
             g.vocab().entity_key(t.head) + "\t" +
             g.vocab().relation_label(t.relation) + "\t" +
             g.vocab().entity_key(t.tail) + "\n";
      for (const auto& p : blocks[b].paths[i]) out += path_to_line(g, p) + "\n";
    }
  }
  return out;
}

std::optional<std::uint64_t> cache_fingerprint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# fingerprint ", 0) == 0) {
      return std::stoull(line.substr(14), nullptr, 16);
    }
    if (line.empty() || line[0] != '#') break;
  }
  return std::nullopt;
}

std::vector<Block> read_cache(const KnowledgeGraph& g, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Block> blocks;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.rfind("Q\t", 0) == 0) {
        auto cols = text::split(line, '\t');
        if (cols.size() != 6) throw Error(ErrorCode::kParse, "bad query line");
        const std::size_t b = std::stoul(cols[1]);
        if (b == blocks.size()) blocks.emplace_back();
        if (b + 1 != blocks.size()) throw Error(ErrorCode::kParse, "blocks out of order");
        blocks[b].candidates.push_back(resolve_or_throw(g, {cols[3], cols[4], cols[5]}));
        blocks[b].paths.emplace_back();
      } else {
        if (blocks.empty()) throw Error(ErrorCode::kParse, "path before query");
        blocks.back().paths.back().push_back(path_from_line(g, line));
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" +
                                         std::to_string(lineno) + ": " + e.what());
    }
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Commands

struct Context {
  const RunConfig& config;
  fs::path out;
  RunLog& log;

  PathFilter filter() const {
    return make_filter(config.filter, config.filter_mode, config.filter_side,
                       config.effective_threshold());
  }
  ExtractOptions extract_options(int max_paths) const {
    return {config.search_depth, max_paths,
            static_cast<std::size_t>(config.max_metric_length)};
  }
  ScoreOptions score_options() const {
    return {config.sentence_style, config.empty_path_text};
  }
};

std::size_t count_paths(const std::vector<Block>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    for (const auto& p : b.paths) n += p.size();
  }
  return n;
}

void sentences_jsonl(const KnowledgeGraph& g, const std::vector<Block>& blocks,
                     std::string_view split, SentenceStyle style,
                     std::string& out) {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].candidates.size(); ++i) {
      const std::string id =
          std::string(split) + ":" + std::to_string(b) + ":" + std::to_string(i);
      out += sentence_json_line(triplet_sentence(blocks[b].candidates[i], g, style), id) + "\n";
      for (std::size_t p = 0; p < blocks[b].paths[i].size(); ++p) {
        out += sentence_json_line(path_sentence(blocks[b].paths[i][p], g),
                                  id + ":" + std::to_string(p)) +
               "\n";
      }
    }
  }
}

void cmd_extract(Context& ctx, const Dataset& d) {
  const std::uint64_t fp = extract_fingerprint(ctx.config);
  const fs::path train_file = ctx.out / "paths_train.txt";
  const fs::path test_file = ctx.out / "paths_test.txt";
  if (cache_fingerprint(train_file) == fp && cache_fingerprint(test_file) == fp &&
      fs::exists(ctx.out / "sentences.jsonl")) {
    ctx.log.line("extract: cache hit (fingerprint " + hex64(fp) + "), skipped");
    return;
  }
  const PathFilter filter = ctx.filter();
  const ExtractOptions opts = ctx.extract_options(ctx.config.max_paths);
  auto train = extract_blocks(*d.train, *d.train_reversed, d.train_sets, filter,
                              opts, ctx.config.workers);
  auto test = extract_blocks(*d.eval, *d.eval_reversed, d.test_sets, filter,
                             opts, ctx.config.workers);
  write_file(train_file, cache_text(*d.train, train, fp));
  write_file(test_file, cache_text(*d.eval, test, fp));
  std::string sentences;
  sentences_jsonl(*d.train, train, "train", ctx.config.sentence_style, sentences);
  sentences_jsonl(*d.eval, test, "test", ctx.config.sentence_style, sentences);
  write_file(ctx.out / "sentences.jsonl", sentences);
  ctx.log.line("extract: " + std::to_string(train.size()) + " train queries (" +
               std::to_string(count_paths(train)) + " paths), " +
               std::to_string(test.size()) + " test queries (" +
               std::to_string(count_paths(test)) + " paths)");
}

// Reads a path cache, re-extracting when it is stale.
std::vector<Block> cached_blocks(Context& ctx, const Dataset& d,
                                 const KnowledgeGraph& g,
                                 const std::string& name) {
  const fs::path file = ctx.out / name;
  const auto fp = cache_fingerprint(file);
  if (!fp) {
    throw Error(ErrorCode::kState,
                "missing " + file.string() + "; run `extract` first");
  }
  if (*fp != extract_fingerprint(ctx.config)) {
    ctx.log.line("warning: " + name + " is stale; re-extracting");
    cmd_extract(ctx, d);
  }
  return read_cache(g, file);
}

void cmd_train(Context& ctx, const Dataset& d) {
  const std::uint64_t fp = train_fingerprint(ctx.config);
  const fs::path weights = ctx.out / "projection.bin";
  const fs::path meta = ctx.out / "projection.json";
  if (fs::exists(weights) && fs::exists(meta)) {
    try {
      if (nlohmann::json::parse(read_file(meta.string())).at("fingerprint") ==
          hex64(fp)) {
        ctx.log.line("train: cache hit (fingerprint " + hex64(fp) + "), skipped");
        return;
      }
    } catch (const nlohmann::json::exception&) {
    }
    ctx.log.line("warning: projection weights are stale; retraining");
  }
  const auto blocks = cached_blocks(ctx, d, *d.train, "paths_train.txt");
  std::vector<TrainingPair> pairs;
  for (const Block& b : blocks) {
    for (std::size_t i = 0; i < b.candidates.size(); ++i) {
      const std::string ts =
          triplet_sentence(b.candidates[i], *d.train, ctx.config.sentence_style).text;
      for (const auto& p : b.paths[i]) {
        pairs.push_back({ts, path_sentence(p, *d.train).text, i == 0 ? 1 : -1});
      }
    }
  }
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no training pairs: no paths were extracted for training queries");
  }
  TrainConfig tc;
  tc.epochs = ctx.config.epochs;
  tc.learning_rate = ctx.config.learning_rate;
  tc.batch_size = static_cast<std::size_t>(ctx.config.batch_size);
  tc.margin = ctx.config.margin;
  tc.seed = ctx.config.seed;
  HashingEmbedder base(static_cast<std::size_t>(ctx.config.embed_dim),
                       ctx.config.embed_seed);
  TrainResult result = train_projection(base, pairs, tc);
  save_projection(weights.string(), ProjectionEmbedder(base, result.weights));
  nlohmann::ordered_json j;
  j["fingerprint"] = hex64(fp);
  j["pairs"] = pairs.size();
  j["epoch_loss"] = result.epoch_loss;
  write_file(meta, j.dump(2) + "\n");
  std::string trace;
  if (!result.epoch_loss.empty()) {
    trace = ", loss " + std::to_string(result.epoch_loss.front()) + " -> " +
            std::to_string(result.epoch_loss.back());
  }
  ctx.log.line("train: " + std::to_string(pairs.size()) + " pairs, " +
               std::to_string(ctx.config.epochs) + " epochs" + trace);
}

std::shared_ptr<const Embedder> make_backend(Context& ctx) {
  const RunConfig& c = ctx.config;
  HashingEmbedder base(static_cast<std::size_t>(c.embed_dim), c.embed_seed);
  switch (c.embedder) {
    case EmbedderKind::kHashing:
      return std::make_shared<HashingEmbedder>(base);
    case EmbedderKind::kService: {
      auto caching = std::make_shared<CachingEmbedder>(
          std::make_shared<ServiceEmbedder>(c.service_url));
      const fs::path cache = ctx.out / "embeddings.jsonl";
      if (fs::exists(cache)) caching->load(cache.string());
      return caching;
    }
    case EmbedderKind::kProjection:
      break;
  }
  const fs::path weights = ctx.out / "projection.bin";
  const fs::path meta = ctx.out / "projection.json";
  if (!fs::exists(weights) || !fs::exists(meta)) {
    ctx.log.line("notice: no trained projection in " + ctx.out.string() +
                 "; falling back to the hashing embedder");
    return std::make_shared<HashingEmbedder>(base);
  }
  std::string stored;
  try {
    stored = nlohmann::json::parse(read_file(meta.string()))
                 .at("fingerprint")
                 .get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  if (stored != hex64(train_fingerprint(c))) {
    ctx.log.line("warning: projection weights do not match this config; "
                 "falling back to the hashing embedder (run `train`)");
    return std::make_shared<HashingEmbedder>(base);
  }
  return std::make_shared<ProjectionEmbedder>(load_projection(weights.string()));
}

void save_backend_cache(Context& ctx, const Embedder& backend) {
  if (auto* caching = dynamic_cast<const CachingEmbedder*>(&backend)) {
    caching->save((ctx.out / "embeddings.jsonl").string());
  }
}

void cmd_evaluate(Context& ctx, const Dataset& d) {
  const auto blocks = cached_blocks(ctx, d, *d.eval, "paths_test.txt");
  const auto backend = make_backend(ctx);
  std::map<Triplet, const std::vector<ReasoningPath>*> paths_of;
  std::vector<CandidateSet> sets;
  for (const Block& b : blocks) {
    if (b.candidates.size() < 2) continue;
    sets.push_back({b.candidates.front(),
                    {b.candidates.begin() + 1, b.candidates.end()}});
    for (std::size_t i = 0; i < b.candidates.size(); ++i) {
      paths_of.emplace(b.candidates[i], &b.paths[i]);
    }
  }
  const ScoreOptions so = ctx.score_options();
  const RankingResult r = evaluate(
      sets,
      [&](const Triplet& t) {
        return triplet_score(*backend, *d.eval, t, *paths_of.at(t), so);
      },
      ctx.config.tie_policy);
  save_backend_cache(ctx, *backend);
  write_file(ctx.out / "results.json", results_json(*d.eval, r) + "\n");
  write_file(ctx.out / "ranks.csv", ranks_csv(*d.eval, r));
  char buf[128];
  std::snprintf(buf, sizeof buf, "evaluate: %zu queries, MRR %.4f, Hit@1 %.4f (%s backend)",
                r.per_query.size(), r.mrr, r.hit_at_1, backend->kind().c_str());
  ctx.log.line(buf);
}

void cmd_explain(Context& ctx, const Dataset& d) {
  if (!fs::exists(ctx.out / "results.json")) {
    throw Error(ErrorCode::kState, "missing " + (ctx.out / "results.json").string() +
                                       "; run `evaluate` first");
  }
  const auto backend = make_backend(ctx);
  const PathFilter filter = ctx.filter();
  const ExtractOptions opts = ctx.extract_options(ctx.config.explain_max_paths);
  ExplainOptions eo;
  eo.k = static_cast<std::size_t>(ctx.config.clusters);
  eo.max_paths_for_empty_rule = static_cast<std::size_t>(ctx.config.explain_max_paths);
  eo.seed = ctx.config.seed;
  eo.score = ctx.score_options();
  std::size_t n = d.test_sets.size();
  if (ctx.config.explain_queries > 0) {
    n = std::min(n, static_cast<std::size_t>(ctx.config.explain_queries));
  }
  const fs::path dir = ctx.out / "explain";
  fs::create_directories(dir);
  for (std::size_t i = 0; i < n; ++i) {
    const Triplet& q = d.test_sets[i].positive;
    auto paths = extract_paths(*d.eval, q, filter, opts, d.eval_reversed.get());
    const ScoredTriplet scored = triplet_score(*backend, *d.eval, q, std::move(paths), eo.score);
    const ExplanationReport report = build_report(*d.eval, scored, *backend, eo);
    const std::string stem = "query_" + std::to_string(i);
    write_file(dir / (stem + ".json"), report_to_json(report) + "\n");
    write_file(dir / (stem + ".csv"), report_plot_csv(report));
    ctx.log.line("explain: " + triplet_label(*d.eval, q) + ": " +
                 std::to_string(report.entries.size()) + " entries, k=" +
                 std::to_string(report.k));
  }
  save_backend_cache(ctx, *backend);
}

Ratio pick_side(const MetricEngine& engine, const Triplet& q,
                const RelationPath& rp, FilterSide side, MetricMode mode,
                bool coverage) {
  auto one = [&](Side s) {
    return coverage ? engine.coverage(q, rp, s, mode)
                    : engine.confidence(q, rp, s, mode);
  };
  if (side == FilterSide::kHead) return one(Side::kHead);
  if (side == FilterSide::kTail) return one(Side::kTail);
  const Ratio h = one(Side::kHead), t = one(Side::kTail);
  return t.value() < h.value() ? t : h;
}

void cmd_metrics(Context& ctx, const Dataset& d) {
  const auto blocks = cached_blocks(ctx, d, *d.eval, "paths_test.txt");
  const MetricEngine engine(*d.eval, d.eval_reversed.get(),
                            static_cast<std::size_t>(ctx.config.max_metric_length));
  std::string csv = metrics_csv_header() + "\n";
  std::size_t rows = 0;
  for (const Block& b : blocks) {
    for (std::size_t i = 0; i < b.candidates.size(); ++i) {
      const Triplet& q = b.candidates[i];
      std::vector<RelationPath> seen;
      for (const auto& p : b.paths[i]) {
        RelationPath rp = relation_path_of(p);
        if (std::find(seen.begin(), seen.end(), rp) != seen.end()) continue;
        seen.push_back(rp);
        csv += metrics_csv_row(
                   *d.eval, q, rp, engine.support(q, rp),
                   pick_side(engine, q, rp, ctx.config.filter_side,
                             ctx.config.filter_mode, true),
                   pick_side(engine, q, rp, ctx.config.filter_side,
                             ctx.config.filter_mode, false)) +
               "\n";
        ++rows;
      }
    }
  }
  write_file(ctx.out / "metrics.csv", csv);
  ctx.log.line("metrics: " + std::to_string(rows) + " rows (" +
               to_string(ctx.config.filter_mode) + " mode, " +
               to_string(ctx.config.filter_side) + " side)");
}

}  // namespace

std::span<const std::string_view> command_names() { return kCommands; }

void run_command(const RunConfig& config, std::string_view command,
                 std::ostream& log_stream) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw Error(ErrorCode::kConfig,
                "unknown command '" + std::string(command) +
                    "' (expected extract, train, evaluate, explain, metrics)");
  }
  validate_config(config);
  const fs::path out(config.output_dir);
  fs::create_directories(out);
  RunLog log(out / "run.log", log_stream);
  log.line("== " + std::string(command) + " ==");
  std::istringstream dump(dump_config(config));
  for (std::string line; std::getline(dump, line);) log.line("  " + line);

  Context ctx{config, out, log};
  const Dataset d = load_dataset(config, log);
  if (command == "extract") {
    cmd_extract(ctx, d);
  } else if (command == "train") {
    cmd_train(ctx, d);
  } else if (command == "evaluate") {
    cmd_evaluate(ctx, d);
  } else if (command == "explain") {
    cmd_explain(ctx, d);
  } else {
    cmd_metrics(ctx, d);
  }
}

}  // namespace kgpath
