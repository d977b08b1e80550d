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

// Run configuration: defaults, `key = value` files and per-key overrides.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "core/eval.hpp"
#include "core/metrics.hpp"
#include "core/verbalize.hpp"

namespace kgpath {

enum class DatasetMode { kTransductive, kInductive };
enum class EmbedderKind { kHashing, kProjection, kService };

struct RunConfig {
  std::uint64_t seed = 42;
  DatasetMode mode = DatasetMode::kTransductive;

  std::string train_graph;
  std::string eval_graph;  // inductive mode only
  std::string entity_descriptions;
  std::string relation_descriptions;
  std::string train_queries;  // defaults to the train graph facts
  std::string test_queries;
  std::string test_negatives;  // generated when empty
  std::string output_dir = "kgpath_out";

  bool inverse_edges = true;
  int search_depth = 5;        // L
  int max_paths = 3;           // M
  int explain_max_paths = 20;  // M for explanations
  int max_metric_length = 5;

  FilterKind filter = FilterKind::kConfidence;
  MetricMode filter_mode = MetricMode::kAlgorithm;
  FilterSide filter_side = FilterSide::kHead;
  // Unset: the default of the filter kind.
  std::optional<double> filter_threshold;

  int train_candidates = 5;  // positive included
  int test_candidates = 50;
  CorruptionMode negative_mode = CorruptionMode::kTail;

  int epochs = 30;
  double learning_rate = 1e-2;
  int batch_size = 32;
  double margin = 0.0;

  EmbedderKind embedder = EmbedderKind::kProjection;
  int embed_dim = 256;
  std::uint64_t embed_seed = 42;
  std::string service_url;

  TiePolicy tie_policy = TiePolicy::kPessimistic;
  int clusters = 4;
  std::string empty_path_text = std::string(kDefaultEmptyPathText);
  SentenceStyle sentence_style = SentenceStyle::kSemicolon;

  int max_train_queries = 0;  // 0: all
  int explain_queries = 5;    // 0: all
  int workers = 1;

  double effective_threshold() const;
};

struct ConfigKey {
  std::string_view name;
  std::string_view help;
  bool is_path;
  void (*set)(RunConfig&, const std::string&);
  std::string (*get)(const RunConfig&);
};

std::span<const ConfigKey> config_keys();

// kConfig for unknown keys (the message lists the valid ones) and for
// values that are malformed or out of range.
void set_config_value(RunConfig& config, std::string_view key,
                      const std::string& value);
std::string get_config_value(const RunConfig& config, std::string_view key);

// `key = value` lines, `#` comments. Relative paths are resolved against
// the file's directory. kIo when unreadable, kConfig with the line number
// otherwise.
void load_config_file(RunConfig& config, const std::string& path);

// Cross-key checks; kConfig on violation.
void validate_config(const RunConfig& config);

// Every key with its effective value, one `key = value` line each.
std::string dump_config(const RunConfig& config);

std::string to_string(DatasetMode mode);
std::string to_string(EmbedderKind kind);
std::string to_string(SentenceStyle style);

}  // namespace kgpath
