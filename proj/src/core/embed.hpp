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

// Sentence embedders, cosine scoring over extracted paths, the cosine
// embedding loss and a trainable linear projection over hashed features.

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "core/graph.hpp"
#include "core/paths.hpp"
#include "core/verbalize.hpp"

namespace kgpath {

struct Embedding {
  std::vector<double> values;
  // Set when the backend produced an all-zero vector (e.g. empty text).
  bool zero = false;

  std::size_t dim() const { return values.size(); }
};

class Embedder {
 public:
  virtual ~Embedder() = default;

  virtual std::size_t dim() const = 0;
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::vector<Embedding> embed_batch(
      const std::vector<std::string>& texts) const;
  // Identifies the backend and all parameters that affect its output.
  virtual std::string fingerprint() const = 0;
  virtual std::string kind() const = 0;
};

inline constexpr std::size_t kDefaultHashDim = 256;
inline constexpr std::uint64_t kDefaultHashSeed = 42;

// Tokens: NFC, lowercased, split on whitespace and ';'.
std::vector<std::string> hashing_tokens(std::string_view text);

// Signed feature hashing: each token adds +-1 at hash % dim, sign from the
// parity of the hash bits; the sum is L2-normalized.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dim = kDefaultHashDim,
                           std::uint64_t seed = kDefaultHashSeed);

  std::size_t dim() const override { return dim_; }
  std::uint64_t seed() const { return seed_; }
  Embedding embed(std::string_view text) const override;
  std::string fingerprint() const override;
  std::string kind() const override { return "hashing"; }

  // Normalized features as (index, value) pairs sorted by index.
  std::vector<std::pair<std::size_t, double>> sparse_features(
      std::string_view text) const;

 private:
  std::size_t dim_;
  std::uint64_t seed_;
};

// Hashing features multiplied by a dim x dim matrix, then L2-normalized.
class ProjectionEmbedder final : public Embedder {
 public:
  ProjectionEmbedder(HashingEmbedder base, Eigen::MatrixXd weights);

  std::size_t dim() const override { return base_.dim(); }
  Embedding embed(std::string_view text) const override;
  std::string fingerprint() const override;
  std::string kind() const override { return "projection"; }

  const Eigen::MatrixXd& weights() const { return weights_; }
  const HashingEmbedder& base() const { return base_; }

 private:
  HashingEmbedder base_;
  Eigen::MatrixXd weights_;
};

// Remote encoder: POST <url>/embed {"sentences": [...]} ->
// {"dim": d, "embeddings": [[...], ...]}. Non-200 replies, malformed JSON,
// count mismatches and dimension drift raise kBackend.
class ServiceEmbedder final : public Embedder {
 public:
  // `expected_dim` 0 adopts the dimension of the first reply.
  explicit ServiceEmbedder(std::string url, std::size_t expected_dim = 0,
                           std::size_t max_batch = 256);

  std::size_t dim() const override;
  Embedding embed(std::string_view text) const override;
  std::vector<Embedding> embed_batch(
      const std::vector<std::string>& texts) const override;
  std::string fingerprint() const override;
  std::string kind() const override { return "service"; }

 private:
  std::string url_;
  std::size_t max_batch_;
  mutable std::mutex mu_;
  mutable std::size_t dim_;
};

// Memoizes another backend in memory and optionally persists to a
// JSON-lines file keyed by sentence hash and versioned by the wrapped
// backend's fingerprint.
class CachingEmbedder final : public Embedder {
 public:
  explicit CachingEmbedder(std::shared_ptr<const Embedder> inner);

  std::size_t dim() const override { return inner_->dim(); }
  Embedding embed(std::string_view text) const override;
  std::vector<Embedding> embed_batch(
      const std::vector<std::string>& texts) const override;
  std::string fingerprint() const override { return inner_->fingerprint(); }
  std::string kind() const override { return inner_->kind(); }

  // Entries written under another fingerprint are ignored. Returns the
  // number of entries loaded.
  std::size_t load(const std::string& path);
  void save(const std::string& path) const;
  std::size_t size() const;

 private:
  std::shared_ptr<const Embedder> inner_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Embedding> cache_;
};

// Zero-norm inputs give 0 and set *degenerate when provided. kInvalidArgument
// on dimension mismatch.
double cosine(std::span<const double> a, std::span<const double> b,
              bool* degenerate = nullptr);
double cosine(const Embedding& a, const Embedding& b,
              bool* degenerate = nullptr);

struct ScoredTriplet {
  Triplet triplet;
  std::vector<ReasoningPath> paths;
  std::vector<double> per_path_scores;
  double score = 0.0;
  std::optional<std::size_t> best_path_index;
};

struct ScoreOptions {
  SentenceStyle style = SentenceStyle::kSemicolon;
  std::string empty_path_text = std::string(kDefaultEmptyPathText);
};

// Max cosine between the triplet sentence and each path sentence; with no
// paths, the cosine against the empty-path sentence.
ScoredTriplet triplet_score(const Embedder& backend, const KnowledgeGraph& g,
                            const Triplet& query,
                            std::vector<ReasoningPath> paths,
                            const ScoreOptions& options = {});

// y = +1: 1 - cos; y = -1: max(0, cos - margin). kInvalidArgument for other y.
double cosine_embedding_loss(std::span<const double> e1,
                             std::span<const double> e2, int y, double margin);

struct LossGradient {
  std::vector<double> grad_e1;
  std::vector<double> grad_e2;
};

// Analytic gradient; zero in the inactive hinge region (cos <= margin).
// kInvalidArgument for zero-norm inputs.
LossGradient loss_gradient(std::span<const double> e1,
                           std::span<const double> e2, int y, double margin);

struct TrainingPair {
  std::string triplet_text;
  std::string path_text;
  int label = 1;
};

struct TrainConfig {
  int epochs = 30;
  double learning_rate = 1e-2;
  std::size_t batch_size = 32;
  double margin = 0.0;
  std::uint64_t seed = 42;
};

struct TrainResult {
  Eigen::MatrixXd weights;
  // Mean loss over each epoch's pairs, measured before each batch update.
  std::vector<double> epoch_loss;
};

// Mini-batch gradient descent on the cosine embedding loss through a shared
// projection initialized to identity. Deterministic for a given seed.
TrainResult train_projection(const HashingEmbedder& base,
                             const std::vector<TrainingPair>& pairs,
                             const TrainConfig& config);

void save_projection(const std::string& path, const ProjectionEmbedder& e);
// kIo / kParse on unreadable or corrupt files.
ProjectionEmbedder load_projection(const std::string& path);

}  // namespace kgpath
