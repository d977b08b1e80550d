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

#include "kgpath/kgpath.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "core/common.hpp"
#include "core/config.hpp"
#include "core/embed.hpp"
#include "core/eval.hpp"
#include "core/extract.hpp"
#include "core/graph.hpp"
#include "core/metrics.hpp"
#include "core/paths.hpp"
#include "core/pipeline.hpp"
#include "core/text.hpp"

struct kgp_graph {
  kgpath::KnowledgeGraph graph;
};

struct kgp_config {
  kgpath::RunConfig config;
};

struct kgp_embedder {
  std::unique_ptr<kgpath::Embedder> impl;
};

namespace {

thread_local std::string g_last_error;

kgp_status status_of(kgpath::ErrorCode code) {
  using kgpath::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return KGP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return KGP_ERR_PARSE;
    case ErrorCode::kLookup: return KGP_ERR_LOOKUP;
    case ErrorCode::kConfig: return KGP_ERR_CONFIG;
    case ErrorCode::kIo: return KGP_ERR_IO;
    case ErrorCode::kBackend: return KGP_ERR_BACKEND;
    case ErrorCode::kState: return KGP_ERR_STATE;
    case ErrorCode::kInternal: return KGP_ERR_INTERNAL;
  }
  return KGP_ERR_INTERNAL;
}

kgp_status fail(kgp_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs f, translating exceptions into statuses.
template <typename F>
kgp_status guarded(F&& f) {
  try {
    return f();
  } catch (const kgpath::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KGP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KGP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KGP_ERR_INTERNAL, "unknown exception");
  }
}

kgp_status null_arg(const char* name) {
  return fail(KGP_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL");
}

kgp_status copy_out(const std::string& s, char* buf, size_t cap,
                    size_t* needed) {
  if (needed == nullptr) return null_arg("needed");
  *needed = s.size() + 1;
  if (buf == nullptr || cap < s.size() + 1) {
    return fail(KGP_ERR_BUFFER, "buffer too small: need " +
                                    std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return KGP_OK;
}

kgpath::Triplet resolve(const kgpath::KnowledgeGraph& g, const char* h,
                        const char* r, const char* t) {
  auto q = kgpath::resolve_triplet(g, kgpath::text::nfc(h), kgpath::text::nfc(r),
                                   kgpath::text::nfc(t));
  if (!q) {
    throw kgpath::Error(kgpath::ErrorCode::kLookup,
                        std::string("unknown key in triplet ") + h + " " + r +
                            " " + t);
  }
  return *q;
}

}  // namespace

extern "C" {

const char* kgp_version(void) { return "0.1.0"; }

const char* kgp_last_error(void) { return g_last_error.c_str(); }

const char* kgp_status_name(kgp_status status) {
  switch (status) {
    case KGP_OK: return "ok";
    case KGP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case KGP_ERR_PARSE: return "parse";
    case KGP_ERR_LOOKUP: return "lookup";
    case KGP_ERR_CONFIG: return "config";
    case KGP_ERR_IO: return "io";
    case KGP_ERR_BACKEND: return "backend";
    case KGP_ERR_STATE: return "state";
    case KGP_ERR_INTERNAL: return "internal";
    case KGP_ERR_BUFFER: return "buffer";
  }
  return "unknown";
}

kgp_status kgp_graph_load(const char* triplet_file, const char* entity_desc_file,
                          const char* relation_desc_file, kgp_graph** out) {
  if (triplet_file == nullptr) return null_arg("triplet_file");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto opt = [](const char* p) {
      return p ? std::optional<std::string>(p) : std::nullopt;
    };
    *out = new kgp_graph{kgpath::load_graph(triplet_file, opt(entity_desc_file),
                                            opt(relation_desc_file))};
    return KGP_OK;
  });
}

kgp_status kgp_graph_with_inverse(const kgp_graph* g, kgp_graph** out) {
  if (g == nullptr) return null_arg("g");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new kgp_graph{kgpath::add_inverse_edges(g->graph)};
    return KGP_OK;
  });
}

void kgp_graph_free(kgp_graph* g) { delete g; }

kgp_status kgp_graph_stats_get(const kgp_graph* g, kgp_graph_stats* out) {
  if (g == nullptr) return null_arg("g");
  if (out == nullptr) return null_arg("out");
  out->entities = g->graph.entity_count();
  out->relations = g->graph.relation_count();
  out->triplets = g->graph.triplet_count();
  out->edges = g->graph.edge_count();
  out->duplicates = g->graph.duplicates_dropped();
  out->has_inverse = g->graph.has_inverse() ? 1 : 0;
  return KGP_OK;
}

kgp_status kgp_extract_paths(const kgp_graph* g, const char* head,
                             const char* relation, const char* tail,
                             const char* filter, double threshold,
                             int max_depth, int max_paths, char* buf,
                             size_t cap, size_t* needed) {
  if (g == nullptr) return null_arg("g");
  if (!head || !relation || !tail) return null_arg("triplet key");
  return guarded([&] {
    const kgpath::Triplet q = resolve(g->graph, head, relation, tail);
    const kgpath::FilterKind kind =
        kgpath::parse_filter_kind(filter ? filter : "none");
    const double alpha = threshold < 0 ? kgpath::default_threshold(kind) : threshold;
    const kgpath::PathFilter f = kgpath::make_filter(
        kind, kgpath::MetricMode::kAlgorithm, kgpath::FilterSide::kHead, alpha);
    kgpath::ExtractOptions opts;
    opts.max_depth = max_depth;
    opts.max_paths = max_paths;
    opts.max_metric_length =
        std::max<std::size_t>(kgpath::kDefaultMaxMetricLength,
                              static_cast<std::size_t>(std::max(max_depth, 1)));
    std::string text;
    for (const auto& p : kgpath::extract_paths(g->graph, q, f, opts)) {
      text += kgpath::path_to_line(g->graph, p) + "\n";
    }
    return copy_out(text, buf, cap, needed);
  });
}

kgp_status kgp_path_metrics(const kgp_graph* g, const char* head,
                            const char* relation, const char* tail,
                            const char* relation_path, const char* mode,
                            kgp_metrics* out) {
  if (g == nullptr) return null_arg("g");
  if (!head || !relation || !tail) return null_arg("triplet key");
  if (relation_path == nullptr) return null_arg("relation_path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const kgpath::Triplet q = resolve(g->graph, head, relation, tail);
    kgpath::RelationPath rp;
    for (const auto& key : kgpath::text::split(relation_path, ';')) {
      auto r = g->graph.vocab().find_relation(kgpath::text::trim(key));
      if (!r) {
        throw kgpath::Error(kgpath::ErrorCode::kLookup,
                            "unknown relation in path: " + key);
      }
      rp.relations.push_back(*r);
    }
    const kgpath::MetricEngine engine(g->graph);
    const kgpath::PathMetrics m =
        engine.all(q, rp, kgpath::parse_metric_mode(mode ? mode : "equation"));
    out->support = m.support.count;
    out->coverage_head = m.coverage_head.value();
    out->coverage_tail = m.coverage_tail.value();
    out->confidence_head = m.confidence_head.value();
    out->confidence_tail = m.confidence_tail.value();
    return KGP_OK;
  });
}

kgp_status kgp_embedder_hashing(size_t dim, uint64_t seed, kgp_embedder** out) {
  if (out == nullptr) return null_arg("out");
  if (dim == 0) return fail(KGP_ERR_INVALID_ARGUMENT, "dim must be >= 1");
  return guarded([&] {
    *out = new kgp_embedder{std::make_unique<kgpath::HashingEmbedder>(dim, seed)};
    return KGP_OK;
  });
}

kgp_status kgp_embedder_projection(const char* weights_file, kgp_embedder** out) {
  if (weights_file == nullptr) return null_arg("weights_file");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new kgp_embedder{std::make_unique<kgpath::ProjectionEmbedder>(
        kgpath::load_projection(weights_file))};
    return KGP_OK;
  });
}

void kgp_embedder_free(kgp_embedder* e) { delete e; }

size_t kgp_embedder_dim(const kgp_embedder* e) {
  return e == nullptr ? 0 : e->impl->dim();
}

kgp_status kgp_embed(const kgp_embedder* e, const char* text, double* out,
                     size_t cap) {
  if (e == nullptr) return null_arg("e");
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  if (cap < e->impl->dim()) {
    return fail(KGP_ERR_BUFFER, "output holds fewer than dim values");
  }
  return guarded([&] {
    const kgpath::Embedding v = e->impl->embed(text);
    std::copy(v.values.begin(), v.values.end(), out);
    return KGP_OK;
  });
}

kgp_status kgp_cosine(const double* a, const double* b, size_t n, double* out) {
  if (!a || !b) return null_arg("vector");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = kgpath::cosine(std::span<const double>(a, n),
                          std::span<const double>(b, n));
    return KGP_OK;
  });
}

kgp_status kgp_rank(double positive, const double* negatives, size_t n,
                    const char* tie_policy, double* rank) {
  if (negatives == nullptr && n > 0) return null_arg("negatives");
  if (rank == nullptr) return null_arg("rank");
  return guarded([&] {
    *rank = kgpath::rank_query(
        positive, std::span<const double>(negatives, n),
        kgpath::parse_tie_policy(tie_policy ? tie_policy : "pessimistic"));
    return KGP_OK;
  });
}

kgp_status kgp_config_create(kgp_config** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new kgp_config{};
    return KGP_OK;
  });
}

void kgp_config_free(kgp_config* c) { delete c; }

kgp_status kgp_config_load_file(kgp_config* c, const char* path) {
  if (c == nullptr) return null_arg("c");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    kgpath::load_config_file(c->config, path);
    return KGP_OK;
  });
}

kgp_status kgp_config_set(kgp_config* c, const char* key, const char* value) {
  if (c == nullptr) return null_arg("c");
  if (!key || !value) return null_arg("key/value");
  return guarded([&] {
    kgpath::set_config_value(c->config, key, value);
    return KGP_OK;
  });
}

kgp_status kgp_config_get(const kgp_config* c, const char* key, char* buf,
                          size_t cap, size_t* needed) {
  if (c == nullptr) return null_arg("c");
  if (key == nullptr) return null_arg("key");
  return guarded([&] {
    return copy_out(kgpath::get_config_value(c->config, key), buf, cap, needed);
  });
}

kgp_status kgp_config_dump(const kgp_config* c, char* buf, size_t cap,
                           size_t* needed) {
  if (c == nullptr) return null_arg("c");
  return guarded([&] {
    return copy_out(kgpath::dump_config(c->config), buf, cap, needed);
  });
}

size_t kgp_config_key_count(void) { return kgpath::config_keys().size(); }

const char* kgp_config_key_name(size_t i) {
  const auto keys = kgpath::config_keys();
  return i < keys.size() ? keys[i].name.data() : nullptr;
}

const char* kgp_config_key_help(size_t i) {
  const auto keys = kgpath::config_keys();
  return i < keys.size() ? keys[i].help.data() : nullptr;
}

kgp_status kgp_run_command(const kgp_config* c, const char* command) {
  if (c == nullptr) return null_arg("c");
  if (command == nullptr) return null_arg("command");
  return guarded([&] {
    kgpath::run_command(c->config, command, std::cerr);
    return KGP_OK;
  });
}

}  // extern "C"
