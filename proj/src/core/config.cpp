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

#include "core/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "core/common.hpp"
#include "core/text.hpp"

namespace kgpath {
namespace {

[[noreturn]] void bad_value(std::string_view key, const std::string& value,
                            std::string_view expected) {
  throw Error(ErrorCode::kConfig, std::string(key) + ": invalid value '" +
                                      value + "' (expected " +
                                      std::string(expected) + ")");
}

int parse_int(std::string_view key, const std::string& v, int min,
              std::string_view rule) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, v, "an integer");
  if (out < min) {
    throw Error(ErrorCode::kConfig, std::string(key) + " must satisfy " +
                                        std::string(rule) + " (got " + v + ")");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view key, const std::string& v) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, v, "a non-negative integer");
  return out;
}

double parse_double(std::string_view key, const std::string& v) {
  double out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    bad_value(key, v, "a finite number");
  }
  return out;
}

bool parse_bool(std::string_view key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "true or false");
}

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt(bool v) { return v ? "true" : "false"; }

// Config errors from the enum parsers keep their messages but gain the key.
template <typename F>
auto with_key(std::string_view key, F&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, std::string(key) + ": " + e.what());
  }
}

#define KGP_STRING_KEY(field, is_path, help)                             \
  ConfigKey {                                                            \
    #field, help, is_path,                                               \
        [](RunConfig& c, const std::string& v) { c.field = v; },         \
        [](const RunConfig& c) { return c.field; }                       \
  }

#define KGP_INT_KEY(field, min, rule, help)                               \
  ConfigKey {                                                             \
    #field, help, false,                                                  \
        [](RunConfig& c, const std::string& v) {                          \
          c.field = parse_int(#field, v, min, rule);                      \
        },                                                                \
        [](const RunConfig& c) { return std::to_string(c.field); }        \
  }

constexpr int kNoMin = std::numeric_limits<int>::min();

const std::array kKeys = {
    ConfigKey{"seed", "random seed", false,
              [](RunConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); },
              [](const RunConfig& c) { return std::to_string(c.seed); }},
    ConfigKey{"mode", "transductive or inductive", false,
              [](RunConfig& c, const std::string& v) {
                if (v == "transductive") {
                  c.mode = DatasetMode::kTransductive;
                } else if (v == "inductive") {
                  c.mode = DatasetMode::kInductive;
                } else {
                  bad_value("mode", v, "transductive or inductive");
                }
              },
              [](const RunConfig& c) { return to_string(c.mode); }},
    KGP_STRING_KEY(train_graph, true, "training graph triplet file"),
    KGP_STRING_KEY(eval_graph, true, "inductive evaluation graph triplet file"),
    KGP_STRING_KEY(entity_descriptions, true, "entity key<TAB>text file"),
    KGP_STRING_KEY(relation_descriptions, true, "relation key<TAB>text file"),
    KGP_STRING_KEY(train_queries, true,
                   "training query triplets (default: train graph facts)"),
    KGP_STRING_KEY(test_queries, true, "test query triplets"),
    KGP_STRING_KEY(test_negatives, true,
                   "POS/NEG negatives file (default: generated)"),
    KGP_STRING_KEY(output_dir, true, "artifact directory"),
    ConfigKey{"inverse_edges", "augment graphs with inverse edges", false,
              [](RunConfig& c, const std::string& v) {
                c.inverse_edges = parse_bool("inverse_edges", v);
              },
              [](const RunConfig& c) { return fmt(c.inverse_edges); }},
    KGP_INT_KEY(search_depth, 1, "L >= 1", "path search depth L"),
    KGP_INT_KEY(max_paths, 1, "M >= 1", "paths per triplet M"),
    KGP_INT_KEY(explain_max_paths, 1, "M_explain >= 1",
                "paths per triplet for explanations"),
    KGP_INT_KEY(max_metric_length, 1, "max_metric_length >= 1",
                "longest relation path the metrics accept"),
    ConfigKey{"filter", "none, coverage or confidence", false,
              [](RunConfig& c, const std::string& v) {
                c.filter = with_key("filter", [&] { return parse_filter_kind(v); });
              },
              [](const RunConfig& c) { return to_string(c.filter); }},
    ConfigKey{"filter_mode", "algorithm or equation", false,
              [](RunConfig& c, const std::string& v) {
                c.filter_mode =
                    with_key("filter_mode", [&] { return parse_metric_mode(v); });
              },
              [](const RunConfig& c) { return to_string(c.filter_mode); }},
    ConfigKey{"filter_side", "head, tail or both", false,
              [](RunConfig& c, const std::string& v) {
                c.filter_side =
                    with_key("filter_side", [&] { return parse_filter_side(v); });
              },
              [](const RunConfig& c) { return to_string(c.filter_side); }},
    ConfigKey{"filter_threshold",
              "filter threshold alpha (default: 1e-5 coverage, 5e-3 confidence)",
              false,
              [](RunConfig& c, const std::string& v) {
                if (v.empty()) {
                  c.filter_threshold.reset();
                  return;
                }
                const double t = parse_double("filter_threshold", v);
                if (t < 0.0 || t > 1.0) {
                  throw Error(ErrorCode::kConfig,
                              "filter_threshold must satisfy 0 <= alpha <= 1 (got " +
                                  v + ")");
                }
                c.filter_threshold = t;
              },
              [](const RunConfig& c) { return fmt(c.effective_threshold()); }},
    KGP_INT_KEY(train_candidates, 2, "train_candidates >= 2",
                "candidates per training query, positive included"),
    KGP_INT_KEY(test_candidates, 2, "test_candidates >= 2",
                "candidates per test query, positive included"),
    ConfigKey{"negative_mode", "corrupted slot: head, tail or both", false,
              [](RunConfig& c, const std::string& v) {
                c.negative_mode =
                    with_key("negative_mode", [&] { return parse_corruption_mode(v); });
              },
              [](const RunConfig& c) { return to_string(c.negative_mode); }},
    KGP_INT_KEY(epochs, 0, "epochs >= 0", "training epochs"),
    ConfigKey{"learning_rate", "projection learning rate", false,
              [](RunConfig& c, const std::string& v) {
                const double lr = parse_double("learning_rate", v);
                if (lr < 0.0) {
                  throw Error(ErrorCode::kConfig,
                              "learning_rate must satisfy lr >= 0 (got " + v + ")");
                }
                c.learning_rate = lr;
              },
              [](const RunConfig& c) { return fmt(c.learning_rate); }},
    KGP_INT_KEY(batch_size, 1, "batch_size >= 1", "mini-batch size"),
    ConfigKey{"margin", "cosine embedding loss margin in (-1, 1)", false,
              [](RunConfig& c, const std::string& v) {
                const double m = parse_double("margin", v);
                if (!(m > -1.0 && m < 1.0)) {
                  throw Error(ErrorCode::kConfig,
                              "margin must satisfy -1 < margin < 1 (got " + v + ")");
                }
                c.margin = m;
              },
              [](const RunConfig& c) { return fmt(c.margin); }},
    ConfigKey{"embedder", "hashing, projection or service", false,
              [](RunConfig& c, const std::string& v) {
                if (v == "hashing") {
                  c.embedder = EmbedderKind::kHashing;
                } else if (v == "projection") {
                  c.embedder = EmbedderKind::kProjection;
                } else if (v == "service") {
                  c.embedder = EmbedderKind::kService;
                } else {
                  bad_value("embedder", v, "hashing, projection or service");
                }
              },
              [](const RunConfig& c) { return to_string(c.embedder); }},
    KGP_INT_KEY(embed_dim, 1, "embed_dim >= 1", "hashing dimension"),
    ConfigKey{"embed_seed", "hashing seed", false,
              [](RunConfig& c, const std::string& v) {
                c.embed_seed = parse_u64("embed_seed", v);
              },
              [](const RunConfig& c) { return std::to_string(c.embed_seed); }},
    KGP_STRING_KEY(service_url, false, "embedding service base URL"),
    ConfigKey{"tie_policy", "pessimistic, optimistic or average", false,
              [](RunConfig& c, const std::string& v) {
                c.tie_policy = with_key("tie_policy", [&] { return parse_tie_policy(v); });
              },
              [](const RunConfig& c) { return to_string(c.tie_policy); }},
    KGP_INT_KEY(clusters, 1, "k >= 1", "explanation clusters k"),
    KGP_STRING_KEY(empty_path_text, false, "sentence for the empty path"),
    ConfigKey{"sentence_style", "semicolon or question", false,
              [](RunConfig& c, const std::string& v) {
                if (v == "semicolon") {
                  c.sentence_style = SentenceStyle::kSemicolon;
                } else if (v == "question") {
                  c.sentence_style = SentenceStyle::kQuestion;
                } else {
                  bad_value("sentence_style", v, "semicolon or question");
                }
              },
              [](const RunConfig& c) { return to_string(c.sentence_style); }},
    KGP_INT_KEY(max_train_queries, 0, "max_train_queries >= 0",
                "cap on training queries (0: all)"),
    KGP_INT_KEY(explain_queries, 0, "explain_queries >= 0",
                "test positives to explain (0: all)"),
    KGP_INT_KEY(workers, 1, "workers >= 1", "per-query worker threads"),
};

#undef KGP_STRING_KEY
#undef KGP_INT_KEY

const ConfigKey* find_key(std::string_view name) {
  for (const ConfigKey& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

[[noreturn]] void unknown_key(std::string_view name) {
  std::string valid;
  for (const ConfigKey& k : kKeys) {
    if (!valid.empty()) valid += ", ";
    valid += k.name;
  }
  throw Error(ErrorCode::kConfig, "unknown config key '" + std::string(name) +
                                      "'; valid keys: " + valid);
}

}  // namespace

double RunConfig::effective_threshold() const {
  return filter_threshold ? *filter_threshold : default_threshold(filter);
}

std::span<const ConfigKey> config_keys() { return kKeys; }

void set_config_value(RunConfig& config, std::string_view key,
                      const std::string& value) {
  const ConfigKey* k = find_key(key);
  if (k == nullptr) unknown_key(key);
  k->set(config, value);
}

std::string get_config_value(const RunConfig& config, std::string_view key) {
  const ConfigKey* k = find_key(key);
  if (k == nullptr) unknown_key(key);
  return k->get(config);
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path);
  const std::filesystem::path base =
      std::filesystem::path(path).parent_path();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    // Inline comments need whitespace before the '#'.
    for (std::size_t i = 1; i < body.size(); ++i) {
      if (body[i] == '#' && (body[i - 1] == ' ' || body[i - 1] == '\t')) {
        body = text::trim(body.substr(0, i));
        break;
      }
    }
    const std::size_t eq = body.find('=');
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig, where + "expected key = value");
    }
    const std::string key(text::trim(body.substr(0, eq)));
    std::string value(text::trim(body.substr(eq + 1)));
    const ConfigKey* k = find_key(key);
    try {
      if (k == nullptr) unknown_key(key);
      if (k->is_path && !value.empty() &&
          std::filesystem::path(value).is_relative() && !base.empty()) {
        value = (base / value).lexically_normal().string();
      }
      k->set(config, value);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, where + e.what());
    }
  }
}

void validate_config(const RunConfig& c) {
  if (c.max_metric_length < c.search_depth) {
    throw Error(ErrorCode::kConfig,
                "max_metric_length must be >= search_depth (" +
                    std::to_string(c.max_metric_length) + " < " +
                    std::to_string(c.search_depth) + ")");
  }
  if (c.embedder == EmbedderKind::kService && c.service_url.empty()) {
    throw Error(ErrorCode::kConfig, "embedder = service requires service_url");
  }
  if (c.mode == DatasetMode::kInductive && c.eval_graph.empty()) {
    throw Error(ErrorCode::kConfig, "mode = inductive requires eval_graph");
  }
}

std::string dump_config(const RunConfig& config) {
  std::string out;
  for (const ConfigKey& k : kKeys) {
    out += std::string(k.name) + " = " + k.get(config) + "\n";
  }
  return out;
}

std::string to_string(DatasetMode mode) {
  return mode == DatasetMode::kInductive ? "inductive" : "transductive";
}

std::string to_string(EmbedderKind kind) {
  switch (kind) {
    case EmbedderKind::kHashing: return "hashing";
    case EmbedderKind::kProjection: return "projection";
    case EmbedderKind::kService: return "service";
  }
  return "projection";
}

std::string to_string(SentenceStyle style) {
  return style == SentenceStyle::kQuestion ? "question" : "semicolon";
}

}  // namespace kgpath
