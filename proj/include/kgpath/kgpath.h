/* Copyright 2026 The kgpath Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to kgpath: knowledge-graph path extraction, relation-path
 * metrics, sentence embedding, ranking and the command pipeline.
 *
 * Every fallible call returns a kgp_status. On failure a message is kept in
 * thread-local storage and returned by kgp_last_error() until the next call
 * on the same thread fails.
 *
 * Functions producing text write a NUL-terminated string into (buf, cap)
 * and always store the required size, terminator included, in *needed.
 * With cap too small (or buf NULL) they return KGP_ERR_BUFFER and write
 * nothing.
 */

#ifndef KGPATH_KGPATH_H_
#define KGPATH_KGPATH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KGP_API __declspec(dllexport)
#else
#define KGP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgp_status {
  KGP_OK = 0,
  KGP_ERR_INVALID_ARGUMENT = 1,
  KGP_ERR_PARSE = 2,
  KGP_ERR_LOOKUP = 3,
  KGP_ERR_CONFIG = 4,
  KGP_ERR_IO = 5,
  KGP_ERR_BACKEND = 6,
  KGP_ERR_STATE = 7,
  KGP_ERR_INTERNAL = 8,
  KGP_ERR_BUFFER = 9,
} kgp_status;

typedef struct kgp_graph kgp_graph;
typedef struct kgp_config kgp_config;
typedef struct kgp_embedder kgp_embedder;

typedef struct kgp_graph_stats {
  size_t entities;
  size_t relations;
  size_t triplets;
  size_t edges;
  size_t duplicates;
  int has_inverse;
} kgp_graph_stats;

typedef struct kgp_metrics {
  uint64_t support;
  double coverage_head;
  double coverage_tail;
  double confidence_head;
  double confidence_tail;
} kgp_metrics;

KGP_API const char* kgp_version(void);
KGP_API const char* kgp_last_error(void);
/* Short stable name ("config", "io", ...) for a status. */
KGP_API const char* kgp_status_name(kgp_status status);

/* ---- graphs ---- */

/* Description files may be NULL. */
KGP_API kgp_status kgp_graph_load(const char* triplet_file,
                                  const char* entity_desc_file,
                                  const char* relation_desc_file,
                                  kgp_graph** out);
KGP_API kgp_status kgp_graph_with_inverse(const kgp_graph* g, kgp_graph** out);
KGP_API void kgp_graph_free(kgp_graph* g);
KGP_API kgp_status kgp_graph_stats_get(const kgp_graph* g,
                                       kgp_graph_stats* out);

/* Paths for (head, relation, tail), one per line, tab-separated alternating
 * entity and relation keys. filter is "none", "coverage" or "confidence";
 * a negative threshold selects the filter's default. */
KGP_API kgp_status kgp_extract_paths(const kgp_graph* g, const char* head,
                                     const char* relation, const char* tail,
                                     const char* filter, double threshold,
                                     int max_depth, int max_paths, char* buf,
                                     size_t cap, size_t* needed);

/* relation_path is ';'-separated relation keys (inverse: key + "^-1").
 * mode is "equation" or "algorithm". */
KGP_API kgp_status kgp_path_metrics(const kgp_graph* g, const char* head,
                                    const char* relation, const char* tail,
                                    const char* relation_path,
                                    const char* mode, kgp_metrics* out);

/* ---- embeddings and ranking ---- */

KGP_API kgp_status kgp_embedder_hashing(size_t dim, uint64_t seed,
                                        kgp_embedder** out);
/* Projection weights written by the `train` command. */
KGP_API kgp_status kgp_embedder_projection(const char* weights_file,
                                           kgp_embedder** out);
KGP_API void kgp_embedder_free(kgp_embedder* e);
KGP_API size_t kgp_embedder_dim(const kgp_embedder* e);
/* Writes dim values into out (cap >= dim). */
KGP_API kgp_status kgp_embed(const kgp_embedder* e, const char* text,
                             double* out, size_t cap);
/* Zero-norm inputs give 0. */
KGP_API kgp_status kgp_cosine(const double* a, const double* b, size_t n,
                              double* out);
/* tie_policy: "pessimistic", "optimistic" or "average". */
KGP_API kgp_status kgp_rank(double positive, const double* negatives,
                            size_t n, const char* tie_policy, double* rank);

/* ---- configuration and commands ---- */

KGP_API kgp_status kgp_config_create(kgp_config** out);
KGP_API void kgp_config_free(kgp_config* c);
KGP_API kgp_status kgp_config_load_file(kgp_config* c, const char* path);
KGP_API kgp_status kgp_config_set(kgp_config* c, const char* key,
                                  const char* value);
KGP_API kgp_status kgp_config_get(const kgp_config* c, const char* key,
                                  char* buf, size_t cap, size_t* needed);
/* Every key as `key = value` lines. */
KGP_API kgp_status kgp_config_dump(const kgp_config* c, char* buf, size_t cap,
                                   size_t* needed);
KGP_API size_t kgp_config_key_count(void);
/* NULL past the end. */
KGP_API const char* kgp_config_key_name(size_t i);
KGP_API const char* kgp_config_key_help(size_t i);

/* command: "extract", "train", "evaluate", "explain" or "metrics".
 * Progress goes to stderr and <output_dir>/run.log. */
KGP_API kgp_status kgp_run_command(const kgp_config* c, const char* command);

#ifdef __cplusplus
}
#endif

#endif /* KGPATH_KGPATH_H_ */
