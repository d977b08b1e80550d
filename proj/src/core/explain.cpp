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

#include "core/explain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include <Eigen/Dense>
#include <json.hpp>

#include "core/common.hpp"
#include "core/paths.hpp"
#include "core/verbalize.hpp"

namespace kgpath {

ScaledScores minmax_scale(std::span<const double> scores) {
  if (scores.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "minmax_scale of empty input");
  }
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  ScaledScores out;
  const double range = *hi - *lo;
  if (range == 0.0) {
    out.values.assign(scores.size(), 0.5);
    out.degenerate = true;
    return out;
  }
  for (double s : scores) out.values.push_back((s - *lo) / range);
  return out;
}

// ---------------------------------------------------------------------------
// K-Means

namespace {

double sq_dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

class KMeansState {
 public:
  KMeansState(const std::vector<Point>& points, std::size_t k)
      : points_(points),
        k_(k),
        dim_(points.front().size()),
        labels_(points.size(), kUnassigned),
        counts_(k, 0) {}

  void seed_plus_plus(Rng& rng) {
    const std::size_t n = points_.size();
    centroids_.push_back(points_[rng.below(n)]);
    std::vector<double> d2(n);
    while (centroids_.size() < k_) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& c : centroids_) best = std::min(best, sq_dist(points_[i], c));
        d2[i] = best;
        total += best;
      }
      std::size_t pick = 0;
      if (total == 0.0) {
        pick = rng.below(n);
      } else {
        const double r = rng.uniform() * total;
        double acc = 0.0;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (d2[i] == 0.0) continue;
          acc += d2[i];
          pick = i;
          if (acc > r) break;
        }
      }
      centroids_.push_back(points_[pick]);
    }
  }

  // Nearest centroid; ties keep the current label, then the lowest index.
  bool assign() {
    bool changed = false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      std::size_t best = labels_[i] == kUnassigned ? 0 : labels_[i];
      double best_d = sq_dist(points_[i], centroids_[best]);
      for (std::size_t c = 0; c < k_; ++c) {
        const double d = sq_dist(points_[i], centroids_[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (best != labels_[i]) {
        labels_[i] = best;
        changed = true;
      }
    }
    return changed;
  }

  // Centroids become the means of their clusters; returns the largest shift.
  double update() {
    std::vector<Point> old = centroids_;
    recompute_means();
    // An emptied cluster takes the point farthest from its own centroid.
    for (std::size_t c = 0; c < k_; ++c) {
      if (counts_[c] != 0) continue;
      std::size_t far = kUnassigned;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (counts_[labels_[i]] < 2) continue;
        const double d = sq_dist(points_[i], centroids_[labels_[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == kUnassigned) continue;
      labels_[far] = c;
      recompute_means();
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < k_; ++c) {
      shift = std::max(shift, std::sqrt(sq_dist(old[c], centroids_[c])));
    }
    return shift;
  }

  // One sweep of single-point moves that lower the SSE. Returns true if any
  // point moved; `on_move` sees the SSE after each move.
  template <typename F>
  bool hartigan_sweep(F on_move) {
    bool moved = false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const std::size_t a = labels_[i];
      if (counts_[a] < 2) continue;
      const double na = static_cast<double>(counts_[a]);
      const double remove_gain =
          na / (na - 1.0) * sq_dist(points_[i], centroids_[a]);
      std::size_t best = a;
      double best_delta = 0.0;
      for (std::size_t b = 0; b < k_; ++b) {
        if (b == a) continue;
        const double nb = static_cast<double>(counts_[b]);
        const double delta =
            nb / (nb + 1.0) * sq_dist(points_[i], centroids_[b]) - remove_gain;
        if (delta < best_delta) {
          best_delta = delta;
          best = b;
        }
      }
      if (best != a && best_delta < -1e-12 * std::max(1.0, sse())) {
        labels_[i] = best;
        recompute_means();
        on_move(sse());
        moved = true;
      }
    }
    return moved;
  }

  double sse() const {
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      s += sq_dist(points_[i], centroids_[labels_[i]]);
    }
    return s;
  }

  const std::vector<std::size_t>& labels() const { return labels_; }
  const std::vector<Point>& centroids() const { return centroids_; }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  void recompute_means() {
    std::fill(counts_.begin(), counts_.end(), 0);
    std::vector<Point> sums(k_, Point(dim_, 0.0));
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const std::size_t c = labels_[i];
      ++counts_[c];
      for (std::size_t j = 0; j < dim_; ++j) sums[c][j] += points_[i][j];
    }
    for (std::size_t c = 0; c < k_; ++c) {
      if (counts_[c] == 0) continue;  // keeps its previous position
      for (std::size_t j = 0; j < dim_; ++j) {
        centroids_[c][j] = sums[c][j] / static_cast<double>(counts_[c]);
      }
    }
  }

  const std::vector<Point>& points_;
  std::size_t k_;
  std::size_t dim_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> counts_;
  std::vector<Point> centroids_;
};

}  // namespace

KMeansResult kmeans(const std::vector<Point>& points, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1 || k > points.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k-means needs 1 <= k <= n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(points.size()) + ")");
  }
  for (const Point& p : points) {
    if (p.size() != points.front().size()) {
      throw Error(ErrorCode::kInvalidArgument, "points differ in dimension");
    }
  }
  KMeansState state(points, k);
  Rng rng(seed);
  state.seed_plus_plus(rng);

  KMeansResult result;
  int iterations = 0;
  // Each Hartigan move strictly lowers the SSE, so the outer loop ends.
  while (true) {
    while (true) {
      const bool changed = state.assign();
      const double shift = state.update();
      result.sse_trace.push_back(state.sse());
      ++iterations;
      if (!changed || shift < options.tolerance ||
          iterations >= options.max_iterations) {
        break;
      }
    }
    const bool moved = state.hartigan_sweep(
        [&](double sse) { result.sse_trace.push_back(sse); });
    if (!moved || iterations >= options.max_iterations) break;
  }
  result.labels = state.labels();
  result.centroids = state.centroids();
  result.sse = state.sse();
  return result;
}

// ---------------------------------------------------------------------------
// LDA

namespace {

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0) v = -v;
}

Eigen::VectorXd dominant_residual_direction(const Eigen::MatrixXd& centered,
                                            const std::vector<Eigen::VectorXd>& axes) {
  Eigen::MatrixXd residual = centered;
  for (const auto& a : axes) residual -= (residual * a) * a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(residual.transpose() *
                                                    residual);
  Eigen::VectorXd v = es.eigenvectors().col(es.eigenvalues().size() - 1);
  if (es.eigenvalues().maxCoeff() <= 0.0) {
    // No residual variance: any unit direction orthogonal to the axes.
    for (Eigen::Index j = 0; j < centered.cols(); ++j) {
      v = Eigen::VectorXd::Unit(centered.cols(), j);
      for (const auto& a : axes) v -= v.dot(a) * a;
      if (v.norm() > 1e-8) break;
    }
  }
  v.normalize();
  return v;
}

}  // namespace

LdaProjection lda_project(const std::vector<Point>& points,
                          std::span<const std::size_t> labels, double epsilon) {
  if (points.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "LDA needs at least 3 points");
  }
  if (labels.size() != points.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one label per point required");
  }
  // Classes numbered by first appearance so relabeling cannot change the
  // accumulation order.
  std::map<std::size_t, std::size_t> class_of;
  std::vector<std::size_t> cls(points.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = class_of.try_emplace(labels[i], class_of.size()).first;
    cls[i] = it->second;
  }
  const std::size_t n_classes = class_of.size();
  if (n_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "LDA needs at least 2 classes");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto p = static_cast<Eigen::Index>(points.front().size());
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(
        points[static_cast<std::size_t>(i)].data(), p);
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd class_means = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(n_classes), p);
  std::vector<double> counts(n_classes, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)]);
    class_means.row(c) += x.row(i);
    counts[static_cast<std::size_t>(c)] += 1.0;
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    class_means.row(static_cast<Eigen::Index>(c)) /= counts[c];
  }
  Eigen::MatrixXd within_dev(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    within_dev.row(i) =
        x.row(i) - class_means.row(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)]));
  }
  Eigen::MatrixXd sw = within_dev.transpose() * within_dev;
  sw.diagonal().array() += epsilon;
  Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t c = 0; c < n_classes; ++c) {
    const Eigen::RowVectorXd d = class_means.row(static_cast<Eigen::Index>(c)) - mean;
    sb += counts[c] * d.transpose() * d;
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(sb, sw);
  const Eigen::VectorXd& evals = ges.eigenvalues();
  const double top = evals[evals.size() - 1];
  const std::size_t wanted = std::min<std::size_t>(2, n_classes - 1);

  std::vector<Eigen::VectorXd> axes;
  for (std::size_t j = 0; j < wanted; ++j) {
    const Eigen::Index col = evals.size() - 1 - static_cast<Eigen::Index>(j);
    if (!(top > 0.0) || evals[col] <= 1e-9 * top) break;
    Eigen::VectorXd v = ges.eigenvectors().col(col);
    v.normalize();
    fix_sign(v);
    axes.push_back(std::move(v));
  }
  LdaProjection out;
  out.discriminant_axes = axes.size();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  while (axes.size() < 2) {
    Eigen::VectorXd v = dominant_residual_direction(centered, axes);
    fix_sign(v);
    axes.push_back(std::move(v));
  }
  const Eigen::VectorXd c0 = centered * axes[0];
  const Eigen::VectorXd c1 = centered * axes[1];
  for (Eigen::Index i = 0; i < n; ++i) out.coords.push_back({c0[i], c1[i]});
  for (std::size_t a = 0; a < 2; ++a) {
    out.axes[a].assign(axes[a].data(), axes[a].data() + axes[a].size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

ExplanationReport build_report(const KnowledgeGraph& g,
                               const ScoredTriplet& scored,
                               const Embedder& backend,
                               const ExplainOptions& options) {
  const std::size_t n_paths = scored.paths.size();
  const bool with_empty = n_paths < options.max_paths_for_empty_rule;
  if (n_paths == 0 && !with_empty) {
    throw Error(ErrorCode::kInvalidArgument, "explanation has no entries");
  }

  ExplanationReport report;
  const Triplet& q = scored.triplet;
  report.query = {g.vocab().entity_key(q.head),
                  g.vocab().relation_label(q.relation),
                  g.vocab().entity_key(q.tail)};

  std::vector<std::string> texts;
  texts.push_back(triplet_sentence(q, g, options.score.style).text);
  for (const auto& p : scored.paths) {
    ExplanationEntry e;
    e.path = path_tokens(g, p);
    e.sentence = path_sentence(p, g).text;
    texts.push_back(e.sentence);
    report.entries.push_back(std::move(e));
  }
  if (with_empty) {
    ExplanationEntry e;
    e.sentence = options.score.empty_path_text;
    texts.push_back(e.sentence);
    report.entries.push_back(std::move(e));
  }
  const std::vector<Embedding> embs = backend.embed_batch(texts);

  std::vector<double> raw;
  std::vector<Point> points;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const Embedding& e = embs[i + 1];
    double s;
    if (i < n_paths && scored.per_path_scores.size() == n_paths) {
      s = scored.per_path_scores[i];
    } else {
      s = cosine(embs[0], e);
    }
    raw.push_back(s);
    points.push_back(e.values);
    report.entries[i].raw_score = s;
  }

  const ScaledScores scaled = minmax_scale(raw);
  report.k = std::min(options.k, report.entries.size());
  const KMeansResult km = kmeans(points, report.k, options.seed);
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    report.entries[i].scaled_score = scaled.values[i];
    report.entries[i].cluster = km.labels[i];
  }

  std::vector<std::size_t> distinct = km.labels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() >= 2 && points.size() >= 3) {
    report.coords = lda_project(points, km.labels).coords;
  }
  return report;
}

std::string report_to_json(const ExplanationReport& report) {
  nlohmann::ordered_json j;
  j["query"] = report.query;
  j["k"] = report.k;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json je;
    if (e.path) {
      je["path"] = *e.path;
    } else {
      je["path"] = nullptr;
    }
    je["sentence"] = e.sentence;
    je["raw_score"] = e.raw_score;
    je["scaled_score"] = e.scaled_score;
    je["cluster"] = e.cluster;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  nlohmann::ordered_json coords = nlohmann::ordered_json::array();
  for (const auto& c : report.coords) coords.push_back({c[0], c[1]});
  j["coords"] = std::move(coords);
  return j.dump(2);
}

ExplanationReport report_from_json(const std::string& json) {
  try {
    const nlohmann::json j = nlohmann::json::parse(json);
    ExplanationReport r;
    r.query = j.at("query").get<std::array<std::string, 3>>();
    r.k = j.at("k").get<std::size_t>();
    for (const auto& je : j.at("entries")) {
      ExplanationEntry e;
      if (!je.at("path").is_null()) {
        e.path = je.at("path").get<std::vector<std::string>>();
      }
      e.sentence = je.at("sentence").get<std::string>();
      e.raw_score = je.at("raw_score").get<double>();
      e.scaled_score = je.at("scaled_score").get<double>();
      e.cluster = je.at("cluster").get<std::size_t>();
      r.entries.push_back(std::move(e));
    }
    for (const auto& c : j.at("coords")) {
      r.coords.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad report JSON: ") + e.what());
  }
}

std::string report_plot_csv(const ExplanationReport& report) {
  std::string out = "x,y,cluster,scaled_score,label\n";
  char buf[96];
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    const double x = i < report.coords.size() ? report.coords[i][0] : 0.0;
    const double y = i < report.coords.size() ? report.coords[i][1] : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,", x, y, e.cluster,
                  e.scaled_score);
    std::string label = "\"";
    for (char c : e.sentence) {
      if (c == '"') label.push_back('"');
      label.push_back(c);
    }
    label.push_back('"');
    out += buf + label + "\n";
  }
  return out;
}

}  // namespace kgpath
