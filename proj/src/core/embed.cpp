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

#include "core/embed.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>

#include <httplib.h>
#include <json.hpp>

#include "core/common.hpp"
#include "core/text.hpp"

namespace kgpath {
namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Embedding normalized(std::vector<double> values) {
  Embedding e;
  const double n = norm2(values);
  if (n == 0.0) {
    e.zero = true;
  } else {
    for (double& x : values) x /= n;
  }
  e.values = std::move(values);
  return e;
}

}  // namespace

std::vector<Embedding> Embedder::embed_batch(
    const std::vector<std::string>& texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed(t));
  return out;
}

// ---------------------------------------------------------------------------
// Hashing

std::vector<std::string> hashing_tokens(std::string_view text) {
  std::string s = text::lower(text::nfc(text));
  for (char& c : s) {
    if (c == ';') c = ' ';
  }
  return text::split_whitespace(s);
}

HashingEmbedder::HashingEmbedder(std::size_t dim, std::uint64_t seed)
    : dim_(dim), seed_(seed) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "embedding dim must be > 0");
}

std::vector<std::pair<std::size_t, double>> HashingEmbedder::sparse_features(
    std::string_view text) const {
  std::map<std::size_t, double> acc;
  for (const std::string& tok : hashing_tokens(text)) {
    const std::uint64_t h = hash64(tok, seed_);
    const double sign = (std::popcount(h) & 1) ? -1.0 : 1.0;
    acc[static_cast<std::size_t>(h % dim_)] += sign;
  }
  double n = 0.0;
  for (const auto& [i, v] : acc) n += v * v;
  n = std::sqrt(n);
  std::vector<std::pair<std::size_t, double>> out;
  if (n == 0.0) return out;
  for (const auto& [i, v] : acc) {
    if (v != 0.0) out.emplace_back(i, v / n);
  }
  return out;
}

Embedding HashingEmbedder::embed(std::string_view text) const {
  Embedding e;
  e.values.assign(dim_, 0.0);
  auto features = sparse_features(text);
  e.zero = features.empty();
  for (const auto& [i, v] : features) e.values[i] = v;
  return e;
}

std::string HashingEmbedder::fingerprint() const {
  return "hashing:dim=" + std::to_string(dim_) + ":seed=" + std::to_string(seed_);
}

// ---------------------------------------------------------------------------
// Projection

ProjectionEmbedder::ProjectionEmbedder(HashingEmbedder base,
                                       Eigen::MatrixXd weights)
    : base_(base), weights_(std::move(weights)) {
  const auto d = static_cast<Eigen::Index>(base_.dim());
  if (weights_.rows() != d || weights_.cols() != d) {
    throw Error(ErrorCode::kInvalidArgument,
                "projection weights must be dim x dim");
  }
}

Embedding ProjectionEmbedder::embed(std::string_view text) const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(weights_.rows());
  for (const auto& [i, v] : base_.sparse_features(text)) {
    z += weights_.col(static_cast<Eigen::Index>(i)) * v;
  }
  return normalized(std::vector<double>(z.data(), z.data() + z.size()));
}

std::string ProjectionEmbedder::fingerprint() const {
  Hasher h;
  h.add(std::string_view(reinterpret_cast<const char*>(weights_.data()),
                         sizeof(double) * static_cast<std::size_t>(weights_.size())));
  return "projection:" + base_.fingerprint() + ":w=" + hex64(h.digest());
}

// ---------------------------------------------------------------------------
// Service

ServiceEmbedder::ServiceEmbedder(std::string url, std::size_t expected_dim,
                                 std::size_t max_batch)
    : url_(std::move(url)), max_batch_(max_batch), dim_(expected_dim) {
  while (!url_.empty() && url_.back() == '/') url_.pop_back();
  if (url_.empty()) throw Error(ErrorCode::kConfig, "service URL is empty");
  if (max_batch_ == 0) max_batch_ = 1;
}

std::size_t ServiceEmbedder::dim() const {
  std::lock_guard<std::mutex> lock(mu_);
  return dim_;
}

Embedding ServiceEmbedder::embed(std::string_view text) const {
  return embed_batch({std::string(text)}).front();
}

std::vector<Embedding> ServiceEmbedder::embed_batch(
    const std::vector<std::string>& texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  httplib::Client client(url_);
  client.set_connection_timeout(5);
  client.set_read_timeout(120);
  for (std::size_t start = 0; start < texts.size(); start += max_batch_) {
    const std::size_t end = std::min(texts.size(), start + max_batch_);
    nlohmann::json request;
    request["sentences"] =
        std::vector<std::string>(texts.begin() + static_cast<long>(start),
                                 texts.begin() + static_cast<long>(end));
    auto res = client.Post("/embed", request.dump(), "application/json");
    if (!res) {
      throw Error(ErrorCode::kBackend, "embedding service unreachable at " +
                                           url_ + ": " +
                                           httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kBackend, "embedding service returned HTTP " +
                                           std::to_string(res->status));
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kBackend,
                  std::string("malformed service reply: ") + e.what());
    }
    if (!reply.contains("dim") || !reply.contains("embeddings") ||
        !reply["embeddings"].is_array()) {
      throw Error(ErrorCode::kBackend, "service reply lacks dim/embeddings");
    }
    const auto dim = reply["dim"].get<std::size_t>();
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (dim_ == 0) dim_ = dim;
      if (dim != dim_) {
        throw Error(ErrorCode::kBackend,
                    "service dimension drift: expected " + std::to_string(dim_) +
                        ", got " + std::to_string(dim));
      }
    }
    const auto& rows = reply["embeddings"];
    if (rows.size() != end - start) {
      throw Error(ErrorCode::kBackend, "service returned " +
                                           std::to_string(rows.size()) +
                                           " vectors for " +
                                           std::to_string(end - start) +
                                           " sentences");
    }
    for (const auto& row : rows) {
      std::vector<double> v = row.get<std::vector<double>>();
      if (v.size() != dim) {
        throw Error(ErrorCode::kBackend, "service vector length mismatch");
      }
      Embedding e;
      e.zero = norm2(v) == 0.0;
      e.values = std::move(v);
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::string ServiceEmbedder::fingerprint() const {
  return "service:" + url_ + ":dim=" + std::to_string(dim());
}

// ---------------------------------------------------------------------------
// Cache

CachingEmbedder::CachingEmbedder(std::shared_ptr<const Embedder> inner)
    : inner_(std::move(inner)) {}

Embedding CachingEmbedder::embed(std::string_view text) const {
  return embed_batch({std::string(text)}).front();
}

std::vector<Embedding> CachingEmbedder::embed_batch(
    const std::vector<std::string>& texts) const {
  std::vector<std::string> missing;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& t : texts) {
      if (!cache_.contains(t)) missing.push_back(t);
    }
  }
  if (!missing.empty()) {
    // Deduplicate while keeping first-seen order.
    std::vector<std::string> unique;
    std::unordered_map<std::string, bool> seen;
    for (auto& t : missing) {
      if (seen.emplace(t, true).second) unique.push_back(t);
    }
    std::vector<Embedding> fresh = inner_->embed_batch(unique);
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < unique.size(); ++i) {
      cache_.emplace(unique[i], std::move(fresh[i]));
    }
  }
  std::vector<Embedding> out;
  out.reserve(texts.size());
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& t : texts) out.push_back(cache_.at(t));
  return out;
}

std::size_t CachingEmbedder::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

std::size_t CachingEmbedder::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  const std::string fp = inner_->fingerprint();
  std::size_t loaded = 0;
  std::string line;
  std::lock_guard<std::mutex> lock(mu_);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      continue;
    }
    if (j.value("backend", "") != fp) continue;
    const std::string text = j.value("text", "");
    if (hex64(hash64(text)) != j.value("key", "")) continue;
    Embedding e;
    e.values = j["vector"].get<std::vector<double>>();
    e.zero = norm2(e.values) == 0.0;
    cache_[text] = std::move(e);
    ++loaded;
  }
  return loaded;
}

void CachingEmbedder::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  const std::string fp = inner_->fingerprint();
  std::lock_guard<std::mutex> lock(mu_);
  std::map<std::string, const Embedding*> ordered;
  for (const auto& [text, e] : cache_) ordered.emplace(text, &e);
  for (const auto& [text, e] : ordered) {
    nlohmann::ordered_json j;
    j["backend"] = fp;
    j["key"] = hex64(hash64(text));
    j["text"] = text;
    j["vector"] = e->values;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Scoring

double cosine(std::span<const double> a, std::span<const double> b,
              bool* degenerate) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine of vectors with different dimensions");
  }
  const double aa = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
  const double bb = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
  if (degenerate) *degenerate = (aa == 0.0 || bb == 0.0);
  if (aa == 0.0 || bb == 0.0) return 0.0;
  const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  // sqrt(x * x) == x in IEEE arithmetic, so cosine(v, v) is exactly 1.
  return std::clamp(dot / std::sqrt(aa * bb), -1.0, 1.0);
}

double cosine(const Embedding& a, const Embedding& b, bool* degenerate) {
  return cosine(std::span<const double>(a.values),
                std::span<const double>(b.values), degenerate);
}

ScoredTriplet triplet_score(const Embedder& backend, const KnowledgeGraph& g,
                            const Triplet& query,
                            std::vector<ReasoningPath> paths,
                            const ScoreOptions& options) {
  ScoredTriplet out;
  out.triplet = query;
  std::vector<std::string> texts;
  texts.push_back(triplet_sentence(query, g, options.style).text);
  for (const auto& p : paths) texts.push_back(path_sentence(p, g).text);
  if (paths.empty()) texts.push_back(options.empty_path_text);
  const std::vector<Embedding> embs = backend.embed_batch(texts);

  if (paths.empty()) {
    out.score = cosine(embs[0], embs[1]);
  } else {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const double s = cosine(embs[0], embs[i + 1]);
      out.per_path_scores.push_back(s);
      if (!out.best_path_index || s > out.score) {
        out.score = s;
        out.best_path_index = i;
      }
    }
  }
  out.paths = std::move(paths);
  return out;
}

// ---------------------------------------------------------------------------
// Loss

double cosine_embedding_loss(std::span<const double> e1,
                             std::span<const double> e2, int y, double margin) {
  const double c = cosine(e1, e2);
  if (y == 1) return 1.0 - c;
  if (y == -1) return std::max(0.0, c - margin);
  throw Error(ErrorCode::kInvalidArgument, "label must be +1 or -1");
}

LossGradient loss_gradient(std::span<const double> e1,
                           std::span<const double> e2, int y, double margin) {
  if (y != 1 && y != -1) {
    throw Error(ErrorCode::kInvalidArgument, "label must be +1 or -1");
  }
  const double n1 = norm2(e1);
  const double n2 = norm2(e2);
  if (n1 == 0.0 || n2 == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "loss gradient of a zero vector");
  }
  LossGradient g{std::vector<double>(e1.size(), 0.0),
                 std::vector<double>(e2.size(), 0.0)};
  const double c = cosine(e1, e2);
  double scale;
  if (y == 1) {
    scale = -1.0;
  } else if (c > margin) {
    scale = 1.0;
  } else {
    return g;
  }
  // d cos / d e1 = e2 / (|e1||e2|) - cos * e1 / |e1|^2, symmetric for e2.
  const double inv12 = 1.0 / (n1 * n2);
  const double inv11 = 1.0 / (n1 * n1);
  const double inv22 = 1.0 / (n2 * n2);
  for (std::size_t i = 0; i < e1.size(); ++i) {
    g.grad_e1[i] = scale * (e2[i] * inv12 - c * e1[i] * inv11);
    g.grad_e2[i] = scale * (e1[i] * inv12 - c * e2[i] * inv22);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Training

TrainResult train_projection(const HashingEmbedder& base,
                             const std::vector<TrainingPair>& pairs,
                             const TrainConfig& config) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty training set");
  }
  if (config.epochs < 0 || config.batch_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid training schedule");
  }
  using Sparse = std::vector<std::pair<std::size_t, double>>;
  const auto d = static_cast<Eigen::Index>(base.dim());

  // Features are fixed; hash every distinct sentence once.
  std::unordered_map<std::string, Sparse> features;
  for (const auto& p : pairs) {
    if (!features.contains(p.triplet_text)) {
      features.emplace(p.triplet_text, base.sparse_features(p.triplet_text));
    }
    if (!features.contains(p.path_text)) {
      features.emplace(p.path_text, base.sparse_features(p.path_text));
    }
  }
  auto project = [&](const Eigen::MatrixXd& w, const Sparse& x) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(d);
    for (const auto& [i, v] : x) z += w.col(static_cast<Eigen::Index>(i)) * v;
    return z;
  };

  TrainResult result;
  result.weights = Eigen::MatrixXd::Identity(d, d);
  Rng rng(config.seed);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(d, d);
      for (std::size_t k = start; k < end; ++k) {
        const TrainingPair& p = pairs[order[k]];
        const Sparse& x1 = features.at(p.triplet_text);
        const Sparse& x2 = features.at(p.path_text);
        const Eigen::VectorXd z1 = project(result.weights, x1);
        const Eigen::VectorXd z2 = project(result.weights, x2);
        std::span<const double> s1(z1.data(), static_cast<std::size_t>(d));
        std::span<const double> s2(z2.data(), static_cast<std::size_t>(d));
        loss_sum += cosine_embedding_loss(s1, s2, p.label, config.margin);
        if (z1.norm() == 0.0 || z2.norm() == 0.0) continue;
        const LossGradient g = loss_gradient(s1, s2, p.label, config.margin);
        const Eigen::Map<const Eigen::VectorXd> g1(g.grad_e1.data(), d);
        const Eigen::Map<const Eigen::VectorXd> g2(g.grad_e2.data(), d);
        // dL/dW = g1 x1^T + g2 x2^T, with x sparse.
        for (const auto& [i, v] : x1) grad.col(static_cast<Eigen::Index>(i)) += g1 * v;
        for (const auto& [i, v] : x2) grad.col(static_cast<Eigen::Index>(i)) += g2 * v;
      }
      const double scale =
          config.learning_rate / static_cast<double>(end - start);
      if (scale != 0.0) result.weights -= scale * grad;
    }
    result.epoch_loss.push_back(loss_sum / static_cast<double>(pairs.size()));
  }
  return result;
}

namespace {
constexpr char kWeightsMagic[8] = {'K', 'G', 'P', 'W', '0', '0', '0', '1'};
}

void save_projection(const std::string& path, const ProjectionEmbedder& e) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  const std::uint64_t dim = e.dim();
  const std::uint64_t seed = e.base().seed();
  out.write(kWeightsMagic, sizeof kWeightsMagic);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  out.write(reinterpret_cast<const char*>(&seed), sizeof seed);
  out.write(reinterpret_cast<const char*>(e.weights().data()),
            static_cast<std::streamsize>(sizeof(double) * dim * dim));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

ProjectionEmbedder load_projection(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  char magic[8];
  std::uint64_t dim = 0, seed = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  in.read(reinterpret_cast<char*>(&seed), sizeof seed);
  if (!in || std::memcmp(magic, kWeightsMagic, sizeof magic) != 0 || dim == 0 ||
      dim > (1u << 16)) {
    throw Error(ErrorCode::kParse, "not a projection weights file: " + path);
  }
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd w(d, d);
  in.read(reinterpret_cast<char*>(w.data()),
          static_cast<std::streamsize>(sizeof(double) * dim * dim));
  if (!in) throw Error(ErrorCode::kParse, "truncated weights file: " + path);
  return ProjectionEmbedder(HashingEmbedder(dim, seed), std::move(w));
}

}  // namespace kgpath
