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

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "core/embed.hpp"
#include "support.hpp"

// After Eigen: resolv.h defines a `_res` macro.
#include <httplib.h>
#include <json.hpp>

using namespace kgpath;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double l2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Stub /embed server: deterministic vectors derived from the sentence.
class StubService {
 public:
  explicit StubService(std::size_t dim) : dim_(dim) {
    server_.Post("/embed", [this](const httplib::Request& req,
                                  httplib::Response& res) {
      ++requests_;
      auto body = nlohmann::json::parse(req.body);
      nlohmann::json out;
      const std::size_t dim = drift_ && requests_ % 2 == 0 ? dim_ + 1 : dim_;
      out["dim"] = dim;
      out["embeddings"] = nlohmann::json::array();
      for (const auto& s : body["sentences"]) {
        HashingEmbedder h(dim, 7);
        out["embeddings"].push_back(h.embed(s.get<std::string>()).values);
      }
      if (fail_) {
        res.status = 503;
        return;
      }
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubService() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_; }
  bool fail_ = false;
  bool drift_ = false;

 private:
  std::size_t dim_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> requests_{0};
};

}  // namespace

TEST_CASE("hashing embedder is deterministic and unit length") {
  HashingEmbedder h;
  CHECK(h.dim() == 256);
  CHECK(h.seed() == 42);
  const Embedding a = h.embed("Sarah Michelle Gellar; person profession; Actor");
  const Embedding b = h.embed("Sarah Michelle Gellar; person profession; Actor");
  CHECK(a.values == b.values);
  CHECK(std::abs(l2(a.values) - 1.0) < 1e-9);
  // Case, separators and NFC do not change the token bag.
  CHECK(h.embed("ACTOR;female").values == h.embed("actor female").values);
  CHECK(h.embed("e\xCC\x81t\xC3\xA9").values == h.embed("\xC3\xA9t\xC3\xA9").values);
  const Embedding z = h.embed(" ;; ");
  CHECK(z.zero);
  CHECK(l2(z.values) == 0.0);
  CHECK(hashing_tokens("A;b  c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("disjoint token sets are nearly orthogonal at large dim") {
  int over = 0;
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    HashingEmbedder h(1 << 16, rng.next());
    std::string a, b;
    for (int i = 0; i < 6; ++i) {
      a += "a" + std::to_string(rng.below(1000000)) + " ";
      b += "b" + std::to_string(rng.below(1000000)) + " ";
    }
    if (std::abs(cosine(h.embed(a), h.embed(b))) >= 0.1) ++over;
  }
  CHECK(over <= 10);
}

TEST_CASE("cosine conventions") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    auto v = random_vec(rng, 12);
    auto w = random_vec(rng, 12);
    std::vector<double> neg(v), scaled(w);
    for (double& x : neg) x = -x;
    const double c = 0.1 + 10 * rng.uniform();
    for (double& x : scaled) x *= c;
    CHECK(cosine(v, v) == 1.0);
    CHECK(cosine(v, neg) == -1.0);
    CHECK(std::abs(cosine(v, scaled) - cosine(v, w)) < 1e-12);
  }
  bool degenerate = false;
  std::vector<double> zero(3, 0.0), one{1, 0, 0};
  CHECK(cosine(zero, one, &degenerate) == 0.0);
  CHECK(degenerate);
  CHECK_THROWS_AS(cosine(std::vector<double>{1, 2}, one), Error);
}

TEST_CASE("triplet score takes the best path") {
  KnowledgeGraph g = kgtest::make_graph(
      {{"A", "r1", "B"}, {"B", "r2", "C"}, {"A", "r3", "C"}, {"A", "x", "C"}});
  HashingEmbedder h;
  const Triplet q = kgtest::trip(g, "A", "r3", "C");
  ReasoningPath two{{q.head, kgtest::ent(g, "B"), q.tail},
                    {kgtest::rel(g, "r1"), kgtest::rel(g, "r2")}};
  ReasoningPath same{{q.head, q.tail}, {q.relation}};
  ReasoningPath other{{q.head, q.tail}, {kgtest::rel(g, "x")}};
  ScoredTriplet s = triplet_score(h, g, q, {two, same, other});
  REQUIRE(s.per_path_scores.size() == 3);
  CHECK(s.score == 1.0);
  CHECK(s.best_path_index == 1u);
  for (double p : s.per_path_scores) CHECK(p <= s.score);

  ScoredTriplet empty = triplet_score(h, g, q, {});
  CHECK_FALSE(empty.best_path_index.has_value());
  CHECK(empty.score == cosine(h.embed("A; r3; C"), h.embed("(no path)")));
  CHECK(std::isfinite(empty.score));
}

TEST_CASE("cosine embedding loss values") {
  const std::vector<double> e{0.3, -1.2, 2.5, 0.01};
  std::vector<double> neg(e);
  for (double& x : neg) x = -x;
  CHECK(cosine_embedding_loss(e, e, 1, 0.0) == 0.0);
  CHECK(cosine_embedding_loss(std::vector<double>{1, 0}, std::vector<double>{0, 3},
                              -1, 0.0) == 0.0);
  CHECK(cosine_embedding_loss(e, neg, 1, 0.0) == 2.0);
  CHECK_THROWS_AS(cosine_embedding_loss(e, e, 0, 0.0), Error);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_vec(rng, 5), b = random_vec(rng, 5);
    const double margin = 2 * rng.uniform() - 1;
    const double pos = cosine_embedding_loss(a, b, 1, margin);
    const double ng = cosine_embedding_loss(a, b, -1, margin);
    CHECK(pos >= 0.0);
    CHECK(pos <= 2.0);
    CHECK(ng >= 0.0);
    CHECK(ng <= 1.0 - margin + 1e-15);
  }
}

TEST_CASE("loss gradient zero cases and finite differences") {
  const std::vector<double> e{0.3, -1.2, 2.5};
  LossGradient g = loss_gradient(e, e, 1, 0.0);
  for (double x : g.grad_e1) CHECK(x == 0.0);
  for (double x : g.grad_e2) CHECK(x == 0.0);
  g = loss_gradient(std::vector<double>{1, 0}, std::vector<double>{-1, 1}, -1, 0.0);
  for (double x : g.grad_e1) CHECK(x == 0.0);
  CHECK_THROWS_AS(loss_gradient(std::vector<double>{0, 0}, e, 1, 0.0), Error);

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_vec(rng, 8), b = random_vec(rng, 8);
    const int y = trial % 2 ? 1 : -1;
    const double margin = -0.5;
    if (y == -1 && std::abs(cosine(a, b) - margin) < 1e-3) continue;
    LossGradient an = loss_gradient(a, b, y, margin);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto ap = a, am = a;
      ap[i] += 1e-5;
      am[i] -= 1e-5;
      const double fd = (cosine_embedding_loss(ap, b, y, margin) -
                         cosine_embedding_loss(am, b, y, margin)) / 2e-5;
      CHECK(std::abs(fd - an.grad_e1[i]) <= 1e-6 + 1e-4 * std::abs(fd));
    }
  }
}

TEST_CASE("projection training") {
  HashingEmbedder base(32, 42);
  std::vector<TrainingPair> pairs{
      {"a; r; b", "a; s; c; t; b", 1},
      {"a; r; x", "a; u; x", -1},
      {"c; r; d", "c; s; e; t; d", 1},
      {"c; r; y", "c; u; y", -1},
  };
  TrainConfig zero;
  zero.epochs = 0;
  CHECK(train_projection(base, pairs, zero).weights.isIdentity(0.0));
  TrainConfig flat;
  flat.learning_rate = 0.0;
  CHECK(train_projection(base, pairs, flat).weights.isIdentity(0.0));

  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.learning_rate = 0.5;
  TrainResult r1 = train_projection(base, pairs, cfg);
  TrainResult r2 = train_projection(base, pairs, cfg);
  CHECK(r1.weights == r2.weights);
  CHECK(r1.epoch_loss.size() == 20);
  CHECK(r1.epoch_loss.back() < r1.epoch_loss.front());
  CHECK_THROWS_AS(train_projection(base, {}, cfg), Error);

  ProjectionEmbedder identity(base, Eigen::MatrixXd::Identity(32, 32));
  CHECK(identity.embed("a; r; b").values == base.embed("a; r; b").values);

  auto dir = kgtest::temp_dir("projection");
  ProjectionEmbedder trained(base, r1.weights);
  save_projection((dir / "w.bin").string(), trained);
  ProjectionEmbedder back = load_projection((dir / "w.bin").string());
  CHECK(back.weights() == trained.weights());
  CHECK(back.fingerprint() == trained.fingerprint());
  CHECK(back.fingerprint() != identity.fingerprint());
  kgtest::write_file(dir / "junk.bin", "nope");
  CHECK_THROWS_AS(load_projection((dir / "junk.bin").string()), Error);
}

TEST_CASE("service backend round-trips batches") {
  StubService stub(16);
  ServiceEmbedder svc(stub.url(), 0, 2);
  std::vector<std::string> texts{"a; b; c", "d; e", "a; b; c", "f"};
  auto out = svc.embed_batch(texts);
  REQUIRE(out.size() == 4);
  CHECK(svc.dim() == 16);
  CHECK(stub.requests() == 2);
  CHECK(out[0].values == out[2].values);
  CHECK(out[0].values == HashingEmbedder(16, 7).embed("a; b; c").values);

  CachingEmbedder cache(std::make_shared<ServiceEmbedder>(stub.url(), 16));
  cache.embed_batch(texts);
  const int before = stub.requests();
  cache.embed_batch(texts);
  CHECK(stub.requests() == before);
  CHECK(cache.size() == 3);

  auto dir = kgtest::temp_dir("cache");
  cache.save((dir / "c.jsonl").string());
  CachingEmbedder again(std::make_shared<ServiceEmbedder>(stub.url(), 16));
  CHECK(again.load((dir / "c.jsonl").string()) == 3);
  CachingEmbedder other(std::make_shared<HashingEmbedder>(16, 7));
  CHECK(other.load((dir / "c.jsonl").string()) == 0);
}

TEST_CASE("service backend errors") {
  StubService stub(8);
  CHECK_THROWS_AS(ServiceEmbedder(stub.url(), 4).embed("x"), Error);
  stub.drift_ = true;
  ServiceEmbedder drift(stub.url(), 0, 1);
  try {
    drift.embed_batch({"a", "b"});
    FAIL("expected drift error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackend);
  }
  stub.drift_ = false;
  stub.fail_ = true;
  CHECK_THROWS_AS(ServiceEmbedder(stub.url()).embed("x"), Error);
  CHECK_THROWS_AS(ServiceEmbedder("http://127.0.0.1:1").embed("x"), Error);
  CHECK_THROWS_AS(ServiceEmbedder(""), Error);
}
